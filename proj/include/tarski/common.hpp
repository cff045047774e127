#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tarski {

/// Arbitrary-precision integer. Gödel codes and Presburger coefficients both
/// outgrow 64 bits quickly.
using BigInt = boost::multiprecision::cpp_int;

/// Natural numbers share the representation; operations that produce a Nat
/// never return a negative value.
using Nat = BigInt;

using VarIndex = std::uint32_t;
using Element = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const BigInt& n) { return n.str(); }

inline BigInt parse_bigint(const std::string& digits) {
  if (digits.empty()) throw Error("empty integer literal");
  for (char c : digits) {
    if (c < '0' || c > '9') throw Error("invalid integer literal '" + digits + "'");
  }
  return BigInt(digits);
}

}  // namespace tarski
