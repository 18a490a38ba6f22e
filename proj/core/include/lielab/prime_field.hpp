#pragma once

#include <cstdint>
#include <string>

#include "lielab/errors.hpp"

namespace lielab {

bool is_prime(std::uint64_t n);

/// GF(p) for a runtime prime p. Residues are plain machine words in [0, p).
class PrimeField {
 public:
  using Elem = std::uint32_t;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  std::uint64_t size() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }
  /// Enumeration of the field: element_at(i) for i in [0, size()).
  Elem element_at(std::uint64_t i) const { return static_cast<Elem>(i); }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  bool is_zero(Elem a) const { return a == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }
  /// Signed-looking representative used only for printing.
  std::string to_string(Elem a) const { return std::to_string(a); }
  Elem parse(const std::string& s) const;

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

/// A residue bundled with its modulus, for scalar-level code and tests.
class FieldElement {
 public:
  FieldElement(std::int64_t value, std::uint32_t modulus);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  bool operator==(const FieldElement& o) const = default;

 private:
  void require_same(const FieldElement& o) const;
  std::uint32_t value_;
  std::uint32_t modulus_;
};

/// Multiplicative inverse; throws DivisionByZero on 0.
FieldElement inv(const FieldElement& a);

}  // namespace lielab
