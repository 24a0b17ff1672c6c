#pragma once

#include <string>
#include <vector>

#include "tcyclo/modmath.hpp"

namespace tcyclo {

/// Quantities attached to the pair (p, q):
///   q = theta p + t,  s t = eta p + 1,  ut = min(t, p - t),  us = min(s, p - s).
struct TernaryParams {
  Int p = 0;
  Int q = 0;
  Int t = 0;
  Int s = 0;
  Int theta = 0;
  Int eta = 0;
  Int ut = 0;
  Int us = 0;
};

/// Requires p >= 3, q > p, gcd(p, q) = 1; throws InvalidArgument otherwise.
TernaryParams derive_params(Int p, Int q);

enum class Strictness { strict, lenient };

enum class Conformance {
  via_plus,  // r t = 1 (mod pq)
  via_minus, // r t = -1 (mod pq)
  none,
};

struct ConformanceReport {
  Conformance kind = Conformance::none;
  std::vector<std::string> violations;
  std::vector<std::string> warnings; // q <= p^2 under lenient checking

  bool conforming() const { return kind != Conformance::none; }
};

/// Checks q = t (mod p), q > p^2, r > q, pairwise coprimality and
/// r t = +-1 (mod pq). Every failed clause is listed; never throws.
/// Under Strictness::lenient a failing q > p^2 becomes a warning.
ConformanceReport check_conforming(Int p, Int t, Int q, Int r, Strictness strictness = Strictness::strict);

enum class TheoremCase { i, ii, iii, iv };

std::string to_string(TheoremCase c);
std::string to_string(Conformance c);

struct CaseClassification {
  TheoremCase case_id = TheoremCase::i;
  Int p = 0;
  Int t = 0;
  Int s = 0;
  Int ut = 0;
  Int us = 0;
  Int predicted_a_minus = 0;
  Int predicted_a_plus = 0;
  Int predicted_height = 0;
  Int predicted_diameter = 0;
  bool mirrored = false;
};

/// Closed-form extremes for a triple with r t = 1 (mod pq).
/// Requires p >= 3, 1 <= t <= p - 1, gcd(t, p) = 1.
CaseClassification classify_case(Int p, Int t);

/// classify_case with the extremes negated and swapped when r t = -1 (mod pq).
/// Throws InvalidArgument, listing the violations, for a non-conforming input.
CaseClassification predict_profile(Int p, Int t, Int q, Int r, Strictness strictness = Strictness::strict);

} // namespace tcyclo
