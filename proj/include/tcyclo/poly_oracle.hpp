#pragma once

#include <span>
#include <vector>

#include "tcyclo/modmath.hpp"
#include "tcyclo/triple.hpp"

namespace tcyclo {

// Largest degree the dense oracle will expand by default.
inline constexpr Int kDefaultOracleCap = 10'000'000;

/// Dense coefficients a_0 .. a_degree of Q_{p,q,r}.
struct CoeffVector {
  std::vector<Int> coeffs;

  Int degree() const { return static_cast<Int>(coeffs.size()) - 1; }
  Int operator[](Int m) const { return coeffs[static_cast<std::size_t>(m)]; }

  friend bool operator==(const CoeffVector &, const CoeffVector &) = default;
};

/// Extremes and value set of one coefficient sequence.
struct HeightProfile {
  Int degree = 0;
  Int a_plus = 0;  // largest coefficient
  Int a_minus = 0; // smallest coefficient
  Int height = 0;  // max(a_plus, -a_minus)
  Int diameter = 0;
  std::vector<Int> coeff_set; // distinct values, ascending

  friend bool operator==(const HeightProfile &, const HeightProfile &) = default;
};

/// Exact coefficients of
///   (x^pqr - 1)(x^p - 1)(x^q - 1)(x^r - 1) / ((x^pq - 1)(x^qr - 1)(x^rp - 1)(x - 1))
/// by dense expansion of the numerator followed by four exact divisions.
/// Throws LimitExceeded when the degree is above `cap`, and
/// InvariantViolation if any division leaves a remainder.
CoeffVector q_poly_coeffs(const Triple &triple, Int cap = kDefaultOracleCap);

/// Profile of an arbitrary nonempty coefficient sequence. The value set must be
/// a contiguous integer interval; otherwise InvariantViolation is thrown.
HeightProfile profile_from_coeffs(std::span<const Int> coeffs);
inline HeightProfile profile_from_coeffs(const CoeffVector &v) { return profile_from_coeffs(v.coeffs); }

/// Build a profile from known extremes, assuming contiguity.
HeightProfile profile_from_extremes(Int degree, Int a_minus, Int a_plus);

} // namespace tcyclo
