#include "tcyclo/theorem3.hpp"

#include <algorithm>

#include "tcyclo/errors.hpp"

namespace tcyclo {

namespace {

std::string num(Int v) { return std::to_string(v); }

void set_extremes(CaseClassification &c, Int a_minus, Int a_plus) {
  c.predicted_a_minus = a_minus;
  c.predicted_a_plus = a_plus;
  c.predicted_height = std::max(a_plus, -a_minus);
  c.predicted_diameter = a_plus - a_minus;
}

} // namespace

TernaryParams derive_params(Int p, Int q) {
  if (p < 3)
    throw InvalidArgument("derive_params: p must be >= 3, got " + num(p));
  if (q <= p)
    throw InvalidArgument("derive_params: q must exceed p, got p=" + num(p) + " q=" + num(q));
  if (gcd(p, q) != 1)
    throw InvalidArgument("derive_params: gcd(p, q) != 1 for p=" + num(p) + " q=" + num(q));
  TernaryParams tp;
  tp.p = p;
  tp.q = q;
  tp.t = lnr(q, p);
  tp.s = mod_inverse(tp.t, p);
  tp.theta = (q - tp.t) / p;
  tp.eta = (tp.s * tp.t - 1) / p;
  tp.ut = std::min(tp.t, p - tp.t);
  tp.us = std::min(tp.s, p - tp.s);
  return tp;
}

ConformanceReport check_conforming(Int p, Int t, Int q, Int r, Strictness strictness) {
  ConformanceReport rep;
  auto &v = rep.violations;
  if (p < 3)
    v.push_back("p must be >= 3");
  if (t < 1 || t >= p)
    v.push_back("t must lie in [1, p-1]");
  else if (p >= 2 && gcd(t, p) != 1)
    v.push_back("gcd(t, p) != 1");
  if (q < 1 || r < 1)
    v.push_back("q and r must be positive");
  if (!v.empty())
    return rep;

  if (lnr(q - t, p) != 0)
    v.push_back("q is not congruent to t modulo p (q mod p = " + num(lnr(q, p)) + ")");
  if (static_cast<Wide>(q) <= static_cast<Wide>(p) * p) {
    const std::string msg = "q <= p^2 (" + num(q) + " <= " + num(p * p) + ")";
    if (strictness == Strictness::strict)
      v.push_back(msg);
    else
      rep.warnings.push_back(msg);
  }
  if (r <= q)
    v.push_back("r must exceed q");
  if (gcd(p, q) != 1 || gcd(q, r) != 1 || gcd(p, r) != 1)
    v.push_back("p, q, r are not pairwise coprime");
  if (const Wide pq = static_cast<Wide>(p) * q; pq > kMaxTripleProduct || pq * r > kMaxTripleProduct)
    v.push_back("p*q*r exceeds 2^62");
  if (!v.empty())
    return rep;

  const Int pq = p * q;
  const Int rt = static_cast<Int>(static_cast<Wide>(lnr(r, pq)) * t % pq);
  if (rt == 1)
    rep.kind = Conformance::via_plus;
  else if (rt == pq - 1)
    rep.kind = Conformance::via_minus;
  else
    v.push_back("r*t is not congruent to +-1 modulo pq (r*t mod pq = " + num(rt) + ")");
  return rep;
}

std::string to_string(TheoremCase c) {
  switch (c) {
  case TheoremCase::i:
    return "i";
  case TheoremCase::ii:
    return "ii";
  case TheoremCase::iii:
    return "iii";
  case TheoremCase::iv:
    return "iv";
  }
  return "?";
}

std::string to_string(Conformance c) {
  switch (c) {
  case Conformance::via_plus:
    return "rt=+1";
  case Conformance::via_minus:
    return "rt=-1";
  case Conformance::none:
    return "none";
  }
  return "?";
}

CaseClassification classify_case(Int p, Int t) {
  if (p < 3)
    throw InvalidArgument("classify_case: p must be >= 3, got " + num(p));
  if (t < 1 || t >= p)
    throw InvalidArgument("classify_case: t must lie in [1, p-1], got " + num(t));
  if (gcd(t, p) != 1)
    throw InvalidArgument("classify_case: gcd(t, p) != 1 for p=" + num(p) + " t=" + num(t));

  CaseClassification c;
  c.p = p;
  c.t = t;
  c.s = mod_inverse(t, p);
  c.ut = std::min(t, p - t);
  c.us = std::min(c.s, p - c.s);
  const Int s = c.s, ut = c.ut, us = c.us;

  if ((t == 1) != (s == 1))
    throw InvariantViolation("classify_case: t = 1 and s = 1 disagree");
  if (t == 1) {
    c.case_id = TheoremCase::i;
    set_extremes(c, -1, 1);
    return c;
  }
  if (us < ut) {
    c.case_id = TheoremCase::ii;
    set_extremes(c, -us - 1, us + 1);
    return c;
  }
  const bool same = (ut == t && us == s) || (ut == p - t && us == p - s);
  const bool crossed = (ut == t && us == p - s) || (ut == p - t && us == s);
  if (same == crossed)
    throw InvariantViolation("classify_case: (ut, us) pairings are not exclusive for p=" + num(p) + " t=" + num(t));
  if (same) {
    c.case_id = TheoremCase::iii;
    set_extremes(c, -us, us + 1);
  } else {
    c.case_id = TheoremCase::iv;
    set_extremes(c, -us - 1, us);
  }
  return c;
}

CaseClassification predict_profile(Int p, Int t, Int q, Int r, Strictness strictness) {
  const auto rep = check_conforming(p, t, q, r, strictness);
  if (!rep.conforming()) {
    std::string msg = "predict_profile: not conforming:";
    for (const auto &why : rep.violations)
      msg += " " + why + ";";
    throw InvalidArgument(msg);
  }
  auto c = classify_case(p, t);
  if (rep.kind == Conformance::via_minus) {
    c.mirrored = true;
    set_extremes(c, -c.predicted_a_plus, -c.predicted_a_minus);
  }
  return c;
}

} // namespace tcyclo
