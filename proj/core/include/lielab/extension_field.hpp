#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lielab/prime_field.hpp"

namespace lielab {

/// GF(p^k) realised as GF(p)[t]/(f) for a monic irreducible f of degree k.
///
/// Elements are opaque 64-bit handles. Small fields (q <= 2^23) use discrete
/// log tables so that multiplication and addition are single lookups; larger
/// fields fall back to polynomial arithmetic on base-p encoded coefficients.
/// Handles are canonical in either mode, so `==` on Elem is field equality.
class ExtensionField {
 public:
  using Elem = std::uint64_t;

  /// `modulus` lists coefficients low to high and must be monic of degree >= 1.
  ExtensionField(std::uint32_t p, std::vector<std::uint32_t> modulus);

  /// The prime field itself, as a degree-1 extension.
  static ExtensionField prime(std::uint32_t p);
  /// GF(p)[t]/(t^p - t - c), irreducible for c != 0; t is a root of X^p - X = c.
  static ExtensionField artin_schreier(std::uint32_t p, std::uint32_t c);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }
  std::uint64_t size() const { return q_; }
  bool table_backed() const { return static_cast<bool>(tables_); }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const;
  Elem from_int(std::int64_t v) const;
  /// The class of t.
  Elem generator() const;
  Elem from_poly(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> to_poly(Elem a) const;
  /// i-th element in the base-p enumeration of coefficient vectors.
  Elem element_at(std::uint64_t i) const;
  /// Some c in GF(p) with a == c, if a lies in the prime subfield.
  bool in_prime_subfield(Elem a) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  bool is_zero(Elem a) const { return a == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }
  /// Polynomial form in t, e.g. "3*t^2+t+5"; "0" for zero.
  std::string to_string(Elem a) const;
  /// Inverse of to_string; also accepts a plain (possibly negative) integer.
  Elem parse(const std::string& s) const;

  bool operator==(const ExtensionField& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

 private:
  struct Tables;

  std::uint64_t poly_encode(std::span<const std::uint32_t> c) const;
  void poly_decode(std::uint64_t enc, std::uint32_t* out) const;
  std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t poly_add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t poly_inv(std::uint64_t a) const;
  std::uint64_t poly_pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t to_encoding(Elem a) const;
  Elem from_encoding(std::uint64_t enc) const;

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  std::shared_ptr<const Tables> tables_;
};

/// True if the monic polynomial (low to high) is irreducible over GF(p).
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic);

}  // namespace lielab
