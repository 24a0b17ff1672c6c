#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcyclo/modmath.hpp"
#include "tcyclo/poly_oracle.hpp"
#include "tcyclo/theorem3.hpp"

namespace tcyclo {

struct SolveOptions {
  bool prime_q = true;
  bool prime_r = false;
  bool verify = false;
  Int min_q = 0;                            // q is also forced above p^2
  Int search_cap = kDefaultProgressionCap;  // candidates per progression search
  Int oracle_cap = 2'000'000;               // dense cross-check only up to this degree
};

enum class TargetKind { height, diameter };

std::string to_string(TargetKind k);

struct VerifyReport {
  bool verified = false;
  ConformanceReport conformance;
  std::optional<HeightProfile> engine;
  std::optional<HeightProfile> oracle; // present when the degree is within the oracle cap
  std::vector<std::string> failures;
};

struct Witness {
  Int p = 0;
  Int t = 0;
  Int q = 0;
  Int r = 0;
  TargetKind kind = TargetKind::height;
  Int target = 0;
  CaseClassification classification;
  std::optional<bool> verified;
  std::vector<std::string> notes;
};

/// Heights reachable by the construction: 1, 2, and h >= 3 with gcd(h-1, p) = 1
/// and 2(h-1) < p.
bool height_admissible(Int p, Int h);

/// Builds q = t (mod p) above max(p^2, min_q), then the least r > q with
/// r t = 1 (mod pq). Primality of q and r follows the options.
Witness build_witness(Int p, Int t, TargetKind kind, Int target, const SolveOptions &opts = {});

/// Witness with predicted height h. Throws InvalidArgument when h is not admissible.
Witness solve_height(Int p, Int h, const SolveOptions &opts = {});

struct DiameterChoice {
  Int d = 0;
  Int t = 0;

  friend bool operator==(const DiameterChoice &, const DiameterChoice &) = default;
};

/// Every diameter the closed form reaches for the odd prime p, each with its
/// smallest t, ascending in d.
std::vector<DiameterChoice> achievable_diameters(Int p);

/// Witness with predicted diameter d for the odd prime p, or nullopt when no
/// choice of t reaches d. Throws InvalidArgument unless 2 <= d <= p.
std::optional<Witness> solve_diameter_for_p(Int p, Int d, const SolveOptions &opts = {});

struct PrimeChoice {
  Int p = 0;
  Int t = 0;

  friend bool operator==(const PrimeChoice &, const PrimeChoice &) = default;
};

/// Writes d = 2b + 1 and returns the first prime p >= d with some a in [2, b]
/// and a b = +-1 (mod p), as (p, t = a); d = 3 gives (3, 2). Requires odd
/// d >= 3. Throws LimitExceeded after scan_cap primes.
PrimeChoice find_p_for_odd_diameter(Int d, Int scan_cap = 1'000'000);

/// Witness for find_p_for_odd_diameter(d).
Witness solve_diameter_any_p(Int d, const SolveOptions &opts = {});

/// Conformance, engine profile, optional oracle profile, and comparison with
/// the classification's prediction and the target.
VerifyReport verify_witness(const Witness &w, const SolveOptions &opts = {});

} // namespace tcyclo
