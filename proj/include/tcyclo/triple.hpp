#pragma once

#include <string>

#include "tcyclo/modmath.hpp"

namespace tcyclo {

/// Parameters {p, q, r} of a ternary inclusion-exclusion polynomial.
///
/// All three are >= 3 and pairwise coprime. The order matters only as a
/// labelling: coefficient data is symmetric in the three parameters, but the
/// window formulas treat `p` as the window width.
struct Triple {
  Int p = 0;
  Int q = 0;
  Int r = 0;

  /// Validating constructor. Throws InvalidArgument on a parameter below 3,
  /// a shared factor, or p*q*r above kMaxTripleProduct.
  static Triple make(Int p, Int q, Int r);

  /// Non-throwing check; returns an empty string when valid, else the reason.
  static std::string validate(Int p, Int q, Int r);

  /// (p-1)(q-1)(r-1), the polynomial degree.
  Int degree() const { return (p - 1) * (q - 1) * (r - 1); }
  Int product() const { return p * q * r; }
  Int min() const;

  /// Same set, ascending order.
  Triple sorted() const;

  std::string to_string() const;

  friend bool operator==(const Triple &, const Triple &) = default;
};

} // namespace tcyclo
