#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "lielab/errors.hpp"

namespace lielab {

/// The integers with the coefficient-ring interface shared by PrimeField and ExtensionField.
class IntegerRing {
 public:
  using Elem = boost::multiprecision::cpp_int;

  std::uint32_t characteristic() const { return 0; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const { return Elem(v); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  std::string to_string(const Elem& a) const { return a.str(); }
  Elem parse(const std::string& s) const {
    try {
      return Elem(s);
    } catch (const std::exception&) {
      throw ParseError("not an integer: '" + s + "'");
    }
  }
  bool operator==(const IntegerRing&) const { return true; }
};

}  // namespace lielab
