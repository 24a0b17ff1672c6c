#pragma once

#include <cstdint>

namespace tcyclo {

using Int = std::int64_t;
__extension__ typedef __int128 Wide;

// Largest product p*q*r accepted anywhere in the library. Keeps n + q + r,
// x*q*r and every window argument inside int64, and every product of two
// residues inside __int128.
inline constexpr Int kMaxTripleProduct = Int{1} << 62;

// Default number of candidates examined by next_prime_in_progression.
inline constexpr Int kDefaultProgressionCap = 10'000'000;

struct Triple;

// Least nonnegative residue of n modulo m. Throws InvalidArgument for m < 1.
Int lnr(Int n, Int m);

Int gcd(Int a, Int b);

// Inverse of a modulo m, in [1, m). Requires m >= 2 and gcd(a, m) = 1.
Int mod_inverse(Int a, Int m);

// Unique n = x*q*r + y*p*r + z*p*q + delta*p*q*r with 0 <= x < p, 0 <= y < q,
// 0 <= z < r.
struct CrtDecomposition {
  Int x = 0;
  Int y = 0;
  Int z = 0;
  Int delta = 0;

  friend bool operator==(const CrtDecomposition &, const CrtDecomposition &) = default;
};

CrtDecomposition crt_decompose(Int n, const Triple &triple);

// Deterministic for every 64-bit input (Miller-Rabin with a fixed witness set
// proven sufficient below 3.3e24).
bool is_prime(Int n);

// Smallest prime > lower that is congruent to a modulo m. Examines at most
// `cap` members of the progression before throwing LimitExceeded.
Int next_prime_in_progression(Int a, Int m, Int lower, Int cap = kDefaultProgressionCap);

} // namespace tcyclo
