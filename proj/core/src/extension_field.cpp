#include "lielab/extension_field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace lielab {

namespace {

constexpr std::uint32_t kMaxDegree = 24;
constexpr std::uint64_t kTableLimit = 1ull << 23;

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  PrimeField f(p);
  const std::size_t dm = m.size() - 1;
  const auto lead_inv = f.inv(m.back());
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const auto factor = f.mul(a.back(), lead_inv);
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = f.sub(a[shift + i], f.mul(factor, m[i]));
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  return poly_mod(std::move(r), m, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic) {
  if (monic.size() < 2 || monic.back() != 1) return false;
  const std::size_t k = monic.size() - 1;
  if (k == 1) return true;
  // Rabin: x^(p^k) = x mod f, and gcd(x^(p^(k/r)) - x, f) = 1 for primes r | k.
  auto frobenius_power = [&](std::size_t times) {
    Poly x = {0, 1};
    for (std::size_t t = 0; t < times; ++t) {
      Poly result = {1};
      Poly base = x;
      std::uint64_t e = p;
      while (e > 0) {
        if (e & 1) result = poly_mulmod(result, base, monic, p);
        base = poly_mulmod(base, base, monic, p);
        e >>= 1;
      }
      x = result;
    }
    return x;
  };
  PrimeField f(p);
  auto minus_x = [&](Poly a) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = f.sub(a[1], 1);
    trim(a);
    return a;
  };
  if (!minus_x(frobenius_power(k)).empty()) return false;
  for (auto r : prime_factors(k)) {
    Poly g = poly_gcd(monic, minus_x(frobenius_power(k / r)), p);
    if (g.size() != 1) return false;
  }
  return true;
}

struct ExtensionField::Tables {
  std::vector<std::uint32_t> exp;   // log -> encoding
  std::vector<std::uint32_t> log;   // encoding -> log
  std::vector<std::uint32_t> zech;  // n -> log(1 + g^n), or kNone
  std::uint32_t order = 0;          // q - 1
  static constexpr std::uint32_t kNone = 0xffffffffu;
};

ExtensionField::ExtensionField(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  if (modulus_.size() < 2 || modulus_.back() != 1) throw DomainError("extension modulus must be monic of degree >= 1");
  for (auto c : modulus_) {
    if (c >= p) throw DomainError("extension modulus coefficient out of range");
  }
  k_ = static_cast<std::uint32_t>(modulus_.size() - 1);
  if (k_ > kMaxDegree) throw DomainError("extension degree too large");
  q_ = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (q_ > (std::uint64_t{1} << 62) / p) throw DomainError("extension field too large for 64-bit handles");
    q_ *= p;
  }
  if (!is_irreducible(p, modulus_)) throw DomainError("extension modulus is reducible");

  if (q_ > kTableLimit) return;

  static std::mutex cache_mutex;
  static std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::shared_ptr<const Tables>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_pair(p_, modulus_);
  if (auto it = cache.find(key); it != cache.end()) {
    tables_ = it->second;
    return;
  }

  auto t = std::make_shared<Tables>();
  t->order = static_cast<std::uint32_t>(q_ - 1);
  const auto factors = prime_factors(q_ - 1);
  std::uint64_t g = 0;
  for (std::uint64_t cand = (k_ == 1 ? 2 : p_); cand < q_; ++cand) {
    bool primitive = true;
    for (auto r : factors) {
      if (poly_pow(cand, (q_ - 1) / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  if (q_ == 2) g = 1;
  t->exp.resize(t->order);
  t->log.assign(q_, Tables::kNone);
  std::uint64_t cur = 1;
  for (std::uint32_t i = 0; i < t->order; ++i) {
    t->exp[i] = static_cast<std::uint32_t>(cur);
    t->log[cur] = i;
    cur = poly_mul(cur, g);
  }
  t->zech.resize(t->order);
  for (std::uint32_t n = 0; n < t->order; ++n) {
    const std::uint64_t enc = t->exp[n];
    const std::uint64_t d0 = enc % p_;
    const std::uint64_t plus_one = enc - d0 + (d0 + 1) % p_;
    t->zech[n] = plus_one == 0 ? Tables::kNone : t->log[plus_one];
  }
  tables_ = t;
  cache.emplace(std::move(key), tables_);
}

ExtensionField ExtensionField::prime(std::uint32_t p) { return ExtensionField(p, {0, 1}); }

ExtensionField ExtensionField::artin_schreier(std::uint32_t p, std::uint32_t c) {
  if (c % p == 0) throw DomainError("Artin-Schreier constant must be nonzero");
  std::vector<std::uint32_t> m(p + 1, 0);
  m[0] = (p - c % p) % p;  // -c
  m[1] = p - 1;            // -t
  m[p] = 1;                // t^p
  return ExtensionField(p, std::move(m));
}

std::uint64_t ExtensionField::poly_encode(std::span<const std::uint32_t> c) const {
  std::uint64_t enc = 0;
  for (std::size_t i = c.size(); i-- > 0;) enc = enc * p_ + c[i] % p_;
  return enc;
}

void ExtensionField::poly_decode(std::uint64_t enc, std::uint32_t* out) const {
  for (std::uint32_t i = 0; i < k_; ++i) {
    out[i] = static_cast<std::uint32_t>(enc % p_);
    enc /= p_;
  }
}

std::uint64_t ExtensionField::poly_add(std::uint64_t a, std::uint64_t b) const {
  std::uint32_t da[kMaxDegree], db[kMaxDegree];
  poly_decode(a, da);
  poly_decode(b, db);
  for (std::uint32_t i = 0; i < k_; ++i) {
    da[i] += db[i];
    if (da[i] >= p_) da[i] -= p_;
  }
  return poly_encode({da, k_});
}

std::uint64_t ExtensionField::poly_mul(std::uint64_t a, std::uint64_t b) const {
  std::uint32_t da[kMaxDegree], db[kMaxDegree];
  std::uint64_t prod[2 * kMaxDegree] = {};
  poly_decode(a, da);
  poly_decode(b, db);
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] += static_cast<std::uint64_t>(da[i]) * db[j];
  }
  for (std::uint32_t i = 0; i + 1 < 2 * k_; ++i) prod[i] %= p_;
  // reduce with the monic modulus: t^k = -sum m_i t^i
  for (std::uint32_t d = 2 * k_ - 2; d >= k_; --d) {
    const std::uint64_t c = prod[d] % p_;
    if (c != 0) {
      const std::uint32_t shift = d - k_;
      for (std::uint32_t i = 0; i < k_; ++i) {
        prod[shift + i] = (prod[shift + i] + c * (p_ - modulus_[i])) % p_;
      }
    }
    prod[d] = 0;
    if (d == k_) break;
  }
  std::uint32_t out[kMaxDegree];
  for (std::uint32_t i = 0; i < k_; ++i) out[i] = static_cast<std::uint32_t>(prod[i] % p_);
  return poly_encode({out, k_});
}

std::uint64_t ExtensionField::poly_pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t result = 1;
  while (e > 0) {
    if (e & 1) result = poly_mul(result, a);
    a = poly_mul(a, a);
    e >>= 1;
  }
  return result;
}

std::uint64_t ExtensionField::poly_inv(std::uint64_t a) const {
  if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")");
  return poly_pow(a, q_ - 2);
}

std::uint64_t ExtensionField::to_encoding(Elem a) const {
  if (!tables_ || a == 0) return a;
  return tables_->exp[a - 1];
}

ExtensionField::Elem ExtensionField::from_encoding(std::uint64_t enc) const {
  if (!tables_ || enc == 0) return enc;
  return static_cast<Elem>(tables_->log[enc]) + 1;
}

ExtensionField::Elem ExtensionField::one() const { return from_encoding(1); }

ExtensionField::Elem ExtensionField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return from_encoding(static_cast<std::uint64_t>(r));
}

ExtensionField::Elem ExtensionField::generator() const {
  if (k_ == 1) {
    // t is the root of t + m0 = 0
    return from_int(-static_cast<std::int64_t>(modulus_[0]));
  }
  return from_encoding(p_);
}

ExtensionField::Elem ExtensionField::from_poly(std::span<const std::uint32_t> coeffs) const {
  Poly c(coeffs.begin(), coeffs.end());
  for (auto& x : c) x %= p_;
  c = poly_mod(std::move(c), modulus_, p_);
  c.resize(k_, 0);
  return from_encoding(poly_encode(c));
}

std::vector<std::uint32_t> ExtensionField::to_poly(Elem a) const {
  std::vector<std::uint32_t> out(k_);
  poly_decode(to_encoding(a), out.data());
  return out;
}

ExtensionField::Elem ExtensionField::element_at(std::uint64_t i) const {
  if (i >= q_) throw DomainError("element index out of range");
  return from_encoding(i);
}

bool ExtensionField::in_prime_subfield(Elem a) const { return to_encoding(a) < p_; }

ExtensionField::Elem ExtensionField::add(Elem a, Elem b) const {
  if (!tables_) return poly_add(a, b);
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint32_t n = tables_->order;
  const std::uint32_t la = static_cast<std::uint32_t>(a - 1);
  const std::uint32_t lb = static_cast<std::uint32_t>(b - 1);
  const std::uint32_t diff = lb >= la ? lb - la : lb + n - la;
  const std::uint32_t z = tables_->zech[diff];
  if (z == Tables::kNone) return 0;
  std::uint64_t s = static_cast<std::uint64_t>(la) + z;
  if (s >= n) s -= n;
  return s + 1;
}

ExtensionField::Elem ExtensionField::neg(Elem a) const {
  if (a == 0) return 0;
  if (!tables_) {
    std::uint32_t d[kMaxDegree];
    poly_decode(a, d);
    for (std::uint32_t i = 0; i < k_; ++i) d[i] = d[i] == 0 ? 0 : p_ - d[i];
    return poly_encode({d, k_});
  }
  if (p_ == 2) return a;
  const std::uint64_t n = tables_->order;
  return ((a - 1) + n / 2) % n + 1;
}

ExtensionField::Elem ExtensionField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (!tables_) return poly_mul(a, b);
  const std::uint64_t n = tables_->order;
  std::uint64_t s = (a - 1) + (b - 1);
  if (s >= n) s -= n;
  return s + 1;
}

ExtensionField::Elem ExtensionField::inv(Elem a) const {
  if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")");
  if (!tables_) return poly_inv(a);
  const std::uint64_t n = tables_->order;
  return (n - (a - 1)) % n + 1;
}

ExtensionField::Elem ExtensionField::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a == 0) return 0;
  if (!tables_) return poly_pow(a, e);
  const std::uint64_t n = tables_->order;
  // both factors are below 2^23
  return (a - 1) * (e % n) % n + 1;
}

std::string ExtensionField::to_string(Elem a) const {
  const auto c = to_poly(a);
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
    } else {
      if (c[i] != 1) out += std::to_string(c[i]) + "*";
      out += i == 1 ? "t" : "t^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

ExtensionField::Elem ExtensionField::parse(const std::string& s) const {
  if (s.empty()) throw ParseError("empty field element");
  std::vector<std::uint32_t> coeffs(k_, 0);
  std::size_t pos = 0;
  auto read_int = [&](std::int64_t& out) {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) return false;
    out = std::stoll(s.substr(start, pos - start));
    return true;
  };
  bool first = true;
  while (pos < s.size()) {
    std::int64_t sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw ParseError("expected + between terms in '" + s + "'");
    }
    first = false;
    std::int64_t c = 1;
    const bool has_coeff = read_int(c);
    std::uint32_t power = 0;
    if (pos < s.size() && (s[pos] == '*' || s[pos] == 't')) {
      if (s[pos] == '*') {
        if (!has_coeff) throw ParseError("bad term in '" + s + "'");
        ++pos;
      }
      if (pos >= s.size() || s[pos] != 't') throw ParseError("expected t in '" + s + "'");
      ++pos;
      power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::int64_t e = 0;
        if (!read_int(e)) throw ParseError("bad exponent in '" + s + "'");
        power = static_cast<std::uint32_t>(e);
      }
    } else if (!has_coeff) {
      throw ParseError("bad term in '" + s + "'");
    }
    if (power >= k_) throw ParseError("power of t exceeds the field degree in '" + s + "'");
    const std::int64_t r = (sign * c) % static_cast<std::int64_t>(p_);
    coeffs[power] = static_cast<std::uint32_t>((coeffs[power] + (r < 0 ? r + p_ : r)) % p_);
  }
  return from_poly(coeffs);
}

}  // namespace lielab
