#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "tcyclo/chi_engine.hpp"
#include "tcyclo/errors.hpp"
#include "tcyclo/solvers.hpp"

using namespace tcyclo;

namespace {

// Smallest t per diameter over every t, straight from the classification.
std::vector<DiameterChoice> diameters_by_classification(Int p) {
  std::map<Int, Int> best;
  for (Int t = p - 1; t >= 1; --t)
    best[classify_case(p, t).predicted_diameter] = t;
  std::vector<DiameterChoice> out;
  for (auto [d, t] : best)
    out.push_back({d, t});
  return out;
}

} // namespace

TEST_CASE("solve_height examples") {
  SolveOptions opts;
  opts.verify = true;
  const auto w = solve_height(7, 4, opts);
  CHECK(w.t == 5);
  CHECK(w.q == 61);
  CHECK(w.r == 171);
  CHECK(w.classification.predicted_height == 4);
  REQUIRE(w.verified.has_value());
  CHECK(*w.verified);

  const auto w2 = solve_height(5, 2, opts);
  CHECK(w2.t == 4);
  CHECK(w2.q == 29);
  CHECK(w2.r == 109);
  CHECK(*w2.verified);

  const auto w1 = solve_height(11, 1, opts);
  CHECK(w1.t == 1);
  CHECK(*w1.verified);

  CHECK_THROWS_AS(solve_height(7, 5), InvalidArgument);
  CHECK_THROWS_AS(solve_height(7, 0), InvalidArgument);
}

TEST_CASE("height_admissible") {
  CHECK(height_admissible(7, 1));
  CHECK(height_admissible(7, 2));
  CHECK(height_admissible(7, 4));
  CHECK_FALSE(height_admissible(7, 5));
  CHECK_FALSE(height_admissible(9, 4)); // gcd(3, 9) = 3
  CHECK(height_admissible(9, 5));
}

TEST_CASE("solve_height witnesses reach their height") {
  for (Int p : {3, 5, 7, 11, 13})
    for (Int h = 1; h <= (p + 1) / 2; ++h) {
      const auto w = solve_height(p, h);
      INFO("p=" << p << " h=" << h);
      REQUIRE(oracle::prime_by_trial(w.q));
      REQUIRE(w.q > p * p);
      REQUIRE(lnr(w.r * w.t, p * w.q) == 1);
      REQUIRE(profile_stream(Triple::make(p, w.q, w.r)).height == h);
    }
}

TEST_CASE("solve options") {
  SolveOptions opts;
  opts.prime_r = true;
  opts.min_q = 1000;
  const auto w = solve_height(7, 4, opts);
  CHECK(w.q > 1000);
  CHECK(oracle::prime_by_trial(w.r));
  CHECK(profile_stream(Triple::make(7, w.q, w.r)).height == 4);

  SolveOptions composite;
  composite.prime_q = false;
  const auto c = solve_height(7, 4, composite);
  CHECK(c.q == 54); // least q = 5 (mod 7) above 49
  CHECK(profile_stream(Triple::make(7, c.q, c.r)).height == 4);
}

TEST_CASE("achievable_diameters") {
  CHECK(achievable_diameters(7) == std::vector<DiameterChoice>{{2, 1}, {3, 6}, {6, 3}, {7, 2}});
  CHECK(achievable_diameters(5) == std::vector<DiameterChoice>{{2, 1}, {3, 4}, {5, 2}});
  CHECK(achievable_diameters(3) == std::vector<DiameterChoice>{{2, 1}, {3, 2}});
  CHECK_THROWS_AS(achievable_diameters(9), InvalidArgument);

  for (Int p = 3; p <= 101; p += 2) {
    if (!oracle::prime_by_trial(p))
      continue;
    INFO("p=" << p);
    const auto got = achievable_diameters(p);
    REQUIRE(got == diameters_by_classification(p));
    REQUIRE(static_cast<Int>(got.size()) >= (p + 1) / 2);
  }
}

TEST_CASE("solve_diameter_for_p") {
  const auto w = solve_diameter_for_p(7, 7);
  REQUIRE(w.has_value());
  CHECK(w->t == 2);

  const auto w6 = solve_diameter_for_p(13, 6);
  REQUIRE(w6.has_value());
  CHECK(w6->t == 6);
  CHECK(profile_stream(Triple::make(13, w6->q, w6->r)).diameter == 6);

  for (Int p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43})
    CHECK_FALSE(solve_diameter_for_p(p, 4).has_value());
  CHECK_THROWS_AS(solve_diameter_for_p(7, 8), InvalidArgument);
  CHECK_THROWS_AS(solve_diameter_for_p(7, 1), InvalidArgument);
}

TEST_CASE("find_p_for_odd_diameter") {
  CHECK(find_p_for_odd_diameter(9) == PrimeChoice{11, 3});
  CHECK(find_p_for_odd_diameter(15) == PrimeChoice{17, 5});
  CHECK(find_p_for_odd_diameter(25) == PrimeChoice{29, 12});
  CHECK(find_p_for_odd_diameter(3) == PrimeChoice{3, 2});
  CHECK_THROWS_AS(find_p_for_odd_diameter(8), InvalidArgument);

  for (Int d = 5; d <= 61; d += 2) {
    const auto c = find_p_for_odd_diameter(d);
    INFO("d=" << d);
    REQUIRE(oracle::prime_by_trial(c.p));
    REQUIRE(classify_case(c.p, c.t).predicted_diameter == d);
  }
}

TEST_CASE("verify_witness") {
  Witness w;
  w.p = 7;
  w.t = 5;
  w.q = 61;
  w.r = 171;
  w.kind = TargetKind::height;
  w.target = 4;
  w.classification = classify_case(7, 5);
  const auto ok = verify_witness(w);
  CHECK(ok.verified);
  REQUIRE(ok.oracle.has_value());
  CHECK(*ok.oracle == *ok.engine);

  w.r = 172;
  const auto bad = verify_witness(w);
  CHECK_FALSE(bad.verified);
  CHECK_FALSE(bad.conformance.conforming());
  CHECK_FALSE(bad.engine.has_value());

  Witness h2 = solve_height(5, 2);
  CHECK(verify_witness(h2).verified);
  h2.target = 3;
  CHECK_FALSE(verify_witness(h2).verified);
}
