#include "tcyclo/modmath.hpp"

#include <array>
#include <string>

#include "tcyclo/errors.hpp"
#include "tcyclo/triple.hpp"

namespace tcyclo {

namespace {

__extension__ typedef unsigned __int128 UWide;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<UWide>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1)
      result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

Int lnr_wide(Wide n, Int m) {
  Wide r = n % m;
  if (r < 0)
    r += m;
  return static_cast<Int>(r);
}

} // namespace

Int lnr(Int n, Int m) {
  if (m < 1)
    throw InvalidArgument("lnr: modulus must be positive, got " + std::to_string(m));
  Int r = n % m;
  return r < 0 ? r + m : r;
}

Int gcd(Int a, Int b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int mod_inverse(Int a, Int m) {
  if (m < 2)
    throw InvalidArgument("mod_inverse: modulus must be >= 2, got " + std::to_string(m));
  Int old_r = lnr(a, m), r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int quot = old_r / r;
    Int tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1)
    throw InvalidArgument("mod_inverse: " + std::to_string(a) + " is not invertible modulo " +
                          std::to_string(m));
  return lnr(old_s, m);
}

CrtDecomposition crt_decompose(Int n, const Triple &t) {
  const Int qr = t.q * t.r, pr = t.p * t.r, pq = t.p * t.q;
  CrtDecomposition d;
  d.x = lnr_wide(static_cast<Wide>(lnr(n, t.p)) * mod_inverse(qr, t.p), t.p);
  d.y = lnr_wide(static_cast<Wide>(lnr(n, t.q)) * mod_inverse(pr, t.q), t.q);
  d.z = lnr_wide(static_cast<Wide>(lnr(n, t.r)) * mod_inverse(pq, t.r), t.r);
  const Wide rest = static_cast<Wide>(n) - static_cast<Wide>(d.x) * qr -
                    static_cast<Wide>(d.y) * pr - static_cast<Wide>(d.z) * pq;
  const Wide pqr = static_cast<Wide>(pq) * t.r;
  if (rest % pqr != 0)
    throw InvariantViolation("crt_decompose: residue not divisible by pqr");
  d.delta = static_cast<Int>(rest / pqr);
  return d;
}

bool is_prime(Int n) {
  if (n < 2)
    return false;
  static constexpr std::array<std::uint64_t, 12> witnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto w : witnesses) {
    if (static_cast<std::uint64_t>(n) == w)
      return true;
    if (static_cast<std::uint64_t>(n) % w == 0)
      return false;
  }
  const auto un = static_cast<std::uint64_t>(n);
  std::uint64_t d = un - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : witnesses) {
    std::uint64_t x = pow_mod(a, d, un);
    if (x == 1 || x == un - 1)
      continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, un);
      if (x == un - 1) {
        composite = false;
        break;
      }
    }
    if (composite)
      return false;
  }
  return true;
}

Int next_prime_in_progression(Int a, Int m, Int lower, Int cap) {
  if (m < 1)
    throw InvalidArgument("next_prime_in_progression: modulus must be positive");
  if (gcd(a, m) != 1)
    throw InvalidArgument("next_prime_in_progression: gcd(" + std::to_string(a) + ", " +
                          std::to_string(m) + ") != 1, progression holds at most one prime");
  // smallest n > lower with n = a (mod m)
  Int n = lower + 1 + lnr(a - (lower + 1), m);
  for (Int i = 0; i < cap; ++i, n += m) {
    if (is_prime(n))
      return n;
  }
  throw LimitExceeded("next_prime_in_progression: no prime among " + std::to_string(cap) +
                      " candidates = " + std::to_string(a) + " (mod " + std::to_string(m) +
                      ") above " + std::to_string(lower));
}

} // namespace tcyclo
