#include "tcyclo/solvers.hpp"

#include <algorithm>
#include <map>

#include "tcyclo/chi_engine.hpp"
#include "tcyclo/errors.hpp"
#include "tcyclo/triple.hpp"

namespace tcyclo {

namespace {

std::string num(Int v) { return std::to_string(v); }

Int predicted_value(const CaseClassification &c, TargetKind kind) {
  return kind == TargetKind::height ? c.predicted_height : c.predicted_diameter;
}

void require_odd_prime(Int p, const char *who) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw InvalidArgument(std::string(who) + ": p must be an odd prime, got " + num(p));
}

} // namespace

std::string to_string(TargetKind k) { return k == TargetKind::height ? "height" : "diameter"; }

bool height_admissible(Int p, Int h) {
  if (p < 3 || h < 1)
    return false;
  if (h <= 2)
    return true;
  return gcd(h - 1, p) == 1 && 2 * (h - 1) < p;
}

Witness build_witness(Int p, Int t, TargetKind kind, Int target, const SolveOptions &opts) {
  Witness w;
  w.p = p;
  w.t = t;
  w.kind = kind;
  w.target = target;
  w.classification = classify_case(p, t);
  if (predicted_value(w.classification, kind) != target)
    throw InvariantViolation("build_witness: t=" + num(t) + " predicts " + to_string(kind) + " " +
                             num(predicted_value(w.classification, kind)) + ", not " + num(target));

  const Int lower = std::max(p * p, opts.min_q);
  if (opts.prime_q) {
    w.q = next_prime_in_progression(t, p, lower, opts.search_cap);
  } else {
    w.q = lower + 1 + lnr(t - (lower + 1), p);
  }
  if (static_cast<Wide>(p) * w.q > kMaxTripleProduct)
    throw LimitExceeded("build_witness: p*q too large");
  const Int pq = p * w.q;
  const Int r0 = mod_inverse(t, pq);
  if (opts.prime_r) {
    w.r = next_prime_in_progression(r0, pq, w.q, opts.search_cap);
  } else {
    w.r = r0 > w.q ? r0 : r0 + ((w.q - r0) / pq + 1) * pq;
  }
  if (auto why = Triple::validate(p, w.q, w.r); !why.empty())
    throw LimitExceeded("build_witness: constructed triple invalid: " + why);

  if (opts.verify)
    w.verified = verify_witness(w, opts).verified;
  return w;
}

Witness solve_height(Int p, Int h, const SolveOptions &opts) {
  if (p < 3)
    throw InvalidArgument("solve_height: p must be >= 3, got " + num(p));
  if (!height_admissible(p, h))
    throw InvalidArgument("solve_height: height " + num(h) + " is not reachable for p=" + num(p) +
                          " (need h <= 2, or gcd(h-1, p) = 1 and 2(h-1) < p)");
  Int t = 1;
  std::string note;
  if (h == 2) {
    t = p - 1;
    note = "h=2 uses t=p-1 (s=p-1, us=1, case iii); t = (h-1)^-1 mod p would be 1, which yields height 1";
  } else if (h >= 3) {
    t = mod_inverse(h - 1, p);
  }
  auto w = build_witness(p, t, TargetKind::height, h, opts);
  if (!note.empty())
    w.notes.push_back(note);
  return w;
}

std::vector<DiameterChoice> achievable_diameters(Int p) {
  require_odd_prime(p, "achievable_diameters");
  std::map<Int, Int> best; // d -> smallest t
  auto offer = [&](Int d, Int t) {
    auto [it, inserted] = best.emplace(d, t);
    if (!inserted)
      it->second = std::min(it->second, t);
  };
  offer(2, 1);
  offer(3, p - 1);
  const Int half = (p - 1) / 2;
  for (Int a = 2; a <= half; ++a) {
    const Int inv = mod_inverse(a, p);
    const Int b = std::min(inv, p - inv);
    if (b == a) {
      offer(2 * a + 1, a); // a^2 = -1 (mod p)
    } else if (a < b) {
      offer(2 * a + 2, b);
      offer(2 * b + 1, a);
    }
  }
  std::vector<DiameterChoice> out;
  for (auto [d, t] : best)
    out.push_back({d, t});
  return out;
}

std::optional<Witness> solve_diameter_for_p(Int p, Int d, const SolveOptions &opts) {
  require_odd_prime(p, "solve_diameter_for_p");
  if (d < 2 || d > p)
    throw InvalidArgument("solve_diameter_for_p: d must lie in [2, p], got " + num(d));
  for (const auto &choice : achievable_diameters(p)) {
    if (choice.d == d)
      return build_witness(p, choice.t, TargetKind::diameter, d, opts);
  }
  return std::nullopt;
}

PrimeChoice find_p_for_odd_diameter(Int d, Int scan_cap) {
  if (d < 3 || d % 2 == 0)
    throw InvalidArgument("find_p_for_odd_diameter: d must be odd and >= 3, got " + num(d));
  const Int b = (d - 1) / 2;
  if (b == 1)
    return {3, 2};
  Int examined = 0;
  for (Int p = 2 * b + 1; examined < scan_cap; ++p) {
    if (!is_prime(p))
      continue;
    ++examined;
    for (Int a = 2; a <= b; ++a) {
      const Int ab = a * b % p;
      if (ab == 1 || ab == p - 1)
        return {p, a};
    }
  }
  throw LimitExceeded("find_p_for_odd_diameter: no prime found for d=" + num(d) + " within " + num(scan_cap) +
                      " primes");
}

Witness solve_diameter_any_p(Int d, const SolveOptions &opts) {
  const auto choice = find_p_for_odd_diameter(d);
  return build_witness(choice.p, choice.t, TargetKind::diameter, d, opts);
}

VerifyReport verify_witness(const Witness &w, const SolveOptions &opts) {
  VerifyReport rep;
  rep.conformance = check_conforming(w.p, w.t, w.q, w.r, Strictness::strict);
  if (!rep.conformance.conforming()) {
    for (const auto &v : rep.conformance.violations)
      rep.failures.push_back("conformance: " + v);
    return rep;
  }

  const auto predicted = predict_profile(w.p, w.t, w.q, w.r, Strictness::strict);
  const Triple triple = Triple::make(w.p, w.q, w.r);
  rep.engine = profile_stream(triple);
  if (triple.degree() <= opts.oracle_cap) {
    rep.oracle = profile_from_coeffs(q_poly_coeffs(triple, opts.oracle_cap));
    if (*rep.oracle != *rep.engine)
      rep.failures.push_back("engine and oracle profiles differ");
  }

  const auto &e = *rep.engine;
  if (e.a_minus != predicted.predicted_a_minus || e.a_plus != predicted.predicted_a_plus)
    rep.failures.push_back("computed extremes (" + num(e.a_minus) + ", " + num(e.a_plus) + ") differ from predicted (" +
                           num(predicted.predicted_a_minus) + ", " + num(predicted.predicted_a_plus) + ")");
  const Int got = w.kind == TargetKind::height ? e.height : e.diameter;
  if (got != w.target)
    rep.failures.push_back("computed " + to_string(w.kind) + " " + num(got) + " differs from target " + num(w.target));

  rep.verified = rep.failures.empty();
  return rep;
}

} // namespace tcyclo
