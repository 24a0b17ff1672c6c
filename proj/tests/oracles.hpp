#pragma once

// Slow, obviously-correct reference computations used only by the tests.

#include <algorithm>
#include <vector>

#include "tcyclo/modmath.hpp"
#include "tcyclo/triple.hpp"

namespace oracle {

using tcyclo::Int;
using tcyclo::Triple;

inline bool prime_by_trial(Int n) {
  if (n < 2)
    return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

inline Int largest_prime_factor(Int n) {
  Int best = 1;
  for (Int d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      best = d;
      n /= d;
    }
  return n > 1 ? std::max(best, n) : best;
}

// 0 when a is not invertible.
inline Int inverse_by_scan(Int a, Int m) {
  for (Int x = 1; x < m; ++x)
    if (((a % m + m) % m) * x % m == 1)
      return x;
  return 0;
}

struct Decomposition {
  Int x, y, z, delta;
};

// Scans every (x, y, z) in the box.
inline Decomposition decompose_by_scan(Int n, const Triple &t) {
  const Int qr = t.q * t.r, pr = t.p * t.r, pq = t.p * t.q, pqr = t.p * t.q * t.r;
  for (Int x = 0; x < t.p; ++x)
    for (Int y = 0; y < t.q; ++y)
      for (Int z = 0; z < t.r; ++z) {
        const Int rest = n - x * qr - y * pr - z * pq;
        if (rest % pqr == 0)
          return {x, y, z, rest / pqr};
      }
  return {-1, -1, -1, 0};
}

// n is i*qr + j*pr + k*pq with i, j, k >= 0.
inline bool representable_by_scan(Int n, const Triple &t) {
  const Int qr = t.q * t.r, pr = t.p * t.r, pq = t.p * t.q;
  for (Int i = 0; i * qr <= n; ++i)
    for (Int j = 0; i * qr + j * pr <= n; ++j)
      if ((n - i * qr - j * pr) % pq == 0)
        return true;
  return false;
}

// Coefficients from the count R(n) of representations by qr, pr, pq:
//   Q = (1 - x^p)(1 - x^q)(1 - x^r) / (1 - x) * sum R(n) x^n
// below x^pqr, where the (1 - x^pqr) factor does not yet contribute.
inline std::vector<Int> coeffs_by_counting(const Triple &t) {
  const Int deg = t.degree();
  const Int qr = t.q * t.r, pr = t.p * t.r, pq = t.p * t.q;
  std::vector<Int> a(static_cast<std::size_t>(deg + 1), 0);
  for (Int i = 0; i * qr <= deg; ++i)
    for (Int j = 0; i * qr + j * pr <= deg; ++j)
      for (Int k = 0; i * qr + j * pr + k * pq <= deg; ++k)
        ++a[static_cast<std::size_t>(i * qr + j * pr + k * pq)];
  for (Int f : {t.p, t.q, t.r})
    for (Int i = deg; i >= f; --i)
      a[static_cast<std::size_t>(i)] -= a[static_cast<std::size_t>(i - f)];
  for (Int i = 1; i <= deg; ++i)
    a[static_cast<std::size_t>(i)] += a[static_cast<std::size_t>(i - 1)];
  return a;
}

// Distinct values, ascending.
inline std::vector<Int> value_set(std::vector<Int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

} // namespace oracle
