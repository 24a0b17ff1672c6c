#include "tcyclo/poly_oracle.hpp"

#include <algorithm>
#include <string>

#include "tcyclo/errors.hpp"

namespace tcyclo {

namespace {

// In-place exact division of poly by (x^k - 1); shrinks poly by k terms.
// Writing poly = quot * (x^k - 1) gives a_i = quot_{i-k} - quot_i, so
// ascending i yields quot_i = quot_{i-k} - a_i, which overwrites a_i.
void divide_by_binomial(std::vector<Int> &poly, Int k, const char *name) {
  const auto n = static_cast<Int>(poly.size()) - 1;
  if (n < k)
    throw InvariantViolation(std::string("q_poly_coeffs: dividend degree below ") + name);
  const Int qdeg = n - k;
  for (Int i = 0; i <= qdeg; ++i) {
    const Int prev = i >= k ? poly[i - k] : 0;
    poly[i] = prev - poly[i];
  }
  // remainder is zero iff a_i == quot_{i-k} for the top k coefficients
  for (Int i = qdeg + 1; i <= n; ++i) {
    const Int expected = i - k >= 0 && i - k <= qdeg ? poly[i - k] : 0;
    if (poly[i] != expected)
      throw InvariantViolation(std::string("q_poly_coeffs: nonzero remainder dividing by ") + name);
  }
  poly.resize(static_cast<std::size_t>(qdeg + 1));
}

// Multiply in place by (x^k - 1).
void multiply_by_binomial(std::vector<Int> &poly, Int k) {
  const auto n = static_cast<Int>(poly.size()) - 1;
  poly.resize(static_cast<std::size_t>(n + k + 1), 0);
  for (Int i = n + k; i >= 0; --i) {
    const Int shifted = i - k >= 0 ? poly[i - k] : 0;
    poly[i] = shifted - poly[i];
  }
}

} // namespace

CoeffVector q_poly_coeffs(const Triple &t, Int cap) {
  const Int degree = t.degree();
  if (degree > cap)
    throw LimitExceeded("q_poly_coeffs: degree " + std::to_string(degree) + " exceeds oracle cap " +
                        std::to_string(cap));

  // (x^pqr - 1) first: a two-term sparse start, then the three small factors.
  std::vector<Int> poly(static_cast<std::size_t>(t.product() + 1), 0);
  poly.front() = -1;
  poly.back() = 1;
  multiply_by_binomial(poly, t.p);
  multiply_by_binomial(poly, t.q);
  multiply_by_binomial(poly, t.r);

  divide_by_binomial(poly, t.p * t.q, "x^pq - 1");
  divide_by_binomial(poly, t.q * t.r, "x^qr - 1");
  divide_by_binomial(poly, t.r * t.p, "x^rp - 1");
  divide_by_binomial(poly, 1, "x - 1");

  if (static_cast<Int>(poly.size()) - 1 != degree)
    throw InvariantViolation("q_poly_coeffs: quotient degree mismatch");
  return CoeffVector{std::move(poly)};
}

HeightProfile profile_from_extremes(Int degree, Int a_minus, Int a_plus) {
  HeightProfile prof;
  prof.degree = degree;
  prof.a_minus = a_minus;
  prof.a_plus = a_plus;
  prof.height = std::max(a_plus, -a_minus);
  prof.diameter = a_plus - a_minus;
  for (Int v = a_minus; v <= a_plus; ++v)
    prof.coeff_set.push_back(v);
  return prof;
}

HeightProfile profile_from_coeffs(std::span<const Int> coeffs) {
  if (coeffs.empty())
    throw InvalidArgument("profile_from_coeffs: empty coefficient vector");
  const auto [lo, hi] = std::minmax_element(coeffs.begin(), coeffs.end());
  if (static_cast<Wide>(*hi) - *lo >= static_cast<Wide>(coeffs.size()))
    throw InvariantViolation("profile_from_coeffs: coefficient set is not a contiguous interval");
  std::vector<char> seen(static_cast<std::size_t>(*hi - *lo + 1), 0);
  for (Int c : coeffs)
    seen[static_cast<std::size_t>(c - *lo)] = 1;
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw InvariantViolation("profile_from_coeffs: coefficient set is not a contiguous interval");
  return profile_from_extremes(static_cast<Int>(coeffs.size()) - 1, *lo, *hi);
}

} // namespace tcyclo
