#include "lielab/prime_field.hpp"

#include <string>

namespace lielab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw DomainError("modulus " + std::to_string(p) + " is not prime");
  if (p >= (1u << 31)) throw DomainError("modulus too large for word arithmetic");
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(p_) + ")");
  // extended Euclid on (a, p)
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return from_int(t);
}

PrimeField::Elem PrimeField::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  Elem base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

PrimeField::Elem PrimeField::parse(const std::string& s) const {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw ParseError("trailing characters in field element '" + s + "'");
    return from_int(v);
  } catch (const std::logic_error&) {
    throw ParseError("not an integer: '" + s + "'");
  }
}

FieldElement::FieldElement(std::int64_t value, std::uint32_t modulus) : modulus_(modulus) {
  if (!is_prime(modulus)) throw DomainError("modulus " + std::to_string(modulus) + " is not prime");
  std::int64_t r = value % static_cast<std::int64_t>(modulus);
  value_ = static_cast<std::uint32_t>(r < 0 ? r + modulus : r);
}

void FieldElement::require_same(const FieldElement& o) const {
  if (modulus_ != o.modulus_) throw DomainError("mixed moduli in field arithmetic");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same(o);
  return {static_cast<std::int64_t>(value_) + o.value_, modulus_};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same(o);
  return {static_cast<std::int64_t>(value_) - o.value_, modulus_};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same(o);
  return {static_cast<std::int64_t>(static_cast<std::uint64_t>(value_) * o.value_ % modulus_), modulus_};
}
FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * inv(o); }
FieldElement FieldElement::operator-() const { return {-static_cast<std::int64_t>(value_), modulus_}; }

FieldElement inv(const FieldElement& a) {
  PrimeField f(a.modulus());
  return {f.inv(a.value()), a.modulus()};
}

}  // namespace lielab
