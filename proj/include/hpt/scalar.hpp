#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace hpt {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator (GMP mpq semantics).
using Scalar = boost::multiprecision::mpq_rational;

/// Thrown whenever two objects are combined that do not fit together
/// (module mismatch, degree mismatch, weight overflow, ...).
class StructuralError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q" (decimal integers, q != 0).
Scalar parse_scalar(std::string_view text);

/// Inverse of parse_scalar: "p" when the denominator is one, "p/q" otherwise.
std::string format_scalar(const Scalar& value);

inline int koszul_sign(long a, long b) { return ((a * b) % 2 == 0) ? 1 : -1; }
inline int parity_sign(long a) { return (a % 2 == 0) ? 1 : -1; }

}  // namespace hpt
