#include "tcyclo/lemma_audit.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <span>
#include <tuple>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

#include "tcyclo/errors.hpp"

namespace tcyclo {

namespace {

constexpr std::array<std::pair<int, int>, 4> kSignPairs{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

std::string num(Int v) { return std::to_string(v); }

Int floor_div(Int n, Int d) {
  Int q = n / d;
  return (n % d != 0 && n < 0) ? q - 1 : q;
}

// Multiples of k in (hi - p, hi].
template <class Fn> void for_multiples_in_window(Int hi, Int p, Int k, Fn &&fn) {
  for (Int j = floor_div(hi - p, k) + 1; j * k <= hi; ++j)
    fn(j * k);
}

std::string sign_label(int eps_q, int eps_r) {
  return std::string("(") + (eps_q > 0 ? "+q" : "-q") + "," + (eps_r > 0 ? "+r" : "-r") + ")";
}

std::string member_label(const MInstance &mi) {
  return sign_label(mi.eps_q, mi.eps_r) + " M=" + num(mi.M) + " l=" + num(mi.l) + " l'=" + num(mi.l_prime);
}

class Recorder {
public:
  Recorder(AuditReport &rep) : rep_(rep) {}

  // `where` is a string or a callable producing one on failure.
  template <class Where> void check(bool ok, Where &&where, Int expected, Int got) {
    ++rep_.instances_checked;
    if (!ok && rep_.passed) {
      rep_.passed = false;
      std::string text;
      if constexpr (std::is_invocable_v<Where>)
        text = where();
      else
        text = where;
      rep_.first_counterexample = Counterexample{rep_.triple, std::move(text), expected, got};
    }
  }

private:
  AuditReport &rep_;
};

std::optional<Int> max_s(const std::vector<MInstance> &v, int case_id = 0) {
  std::optional<Int> best;
  for (const auto &mi : v) {
    if (case_id != 0 && mi.case_id != case_id)
      continue;
    best = best ? std::max(*best, mi.S) : mi.S;
  }
  return best;
}

std::vector<MInstance> only_case(const std::vector<MInstance> &v, int case_id) {
  std::vector<MInstance> out;
  std::copy_if(v.begin(), v.end(), std::back_inserter(out), [&](const MInstance &mi) { return mi.case_id == case_id; });
  return out;
}

// Distinct multiples of k in the windows (x - p, x] for x = m - offsets[i],
// advanced one m at a time. When k > p each window holds at most one
// multiple and the residues m - offset mod k step without division.
class WindowScan {
public:
  WindowScan(Int p, Int k, std::array<Int, 2> offsets)
      : p_(p), k_(k), offsets_(offsets), found_(static_cast<std::size_t>(2 * (p / k + 1))) {
    for (std::size_t i = 0; i < offsets_.size(); ++i)
      rem_[i] = lnr(-offsets_[i], k_);
  }

  // Multiples for the current m; valid until the next call to advance().
  std::span<const Int> at(Int m) {
    count_ = 0;
    for (std::size_t i = 0; i < offsets_.size(); ++i) {
      const Int x = m - offsets_[i];
      if (k_ > p_) {
        if (rem_[i] < p_)
          add(x - rem_[i]);
      } else {
        for_multiples_in_window(x, p_, k_, [&](Int v) { add(v); });
      }
    }
    return {found_.data(), count_};
  }

  void advance() {
    for (auto &r : rem_)
      r = r + 1 == k_ ? 0 : r + 1;
  }

private:
  void add(Int v) {
    const auto end = found_.begin() + static_cast<std::ptrdiff_t>(count_);
    if (std::find(found_.begin(), end, v) == end)
      found_[count_++] = v;
  }

  Int p_, k_;
  std::array<Int, 2> offsets_;
  std::array<Int, 2> rem_{};
  std::vector<Int> found_;
  std::size_t count_ = 0;
};

void audit_window_identities(const AuditContext &ctx, bool two_multiples, AuditReport &rep) {
  Recorder rec(rep);
  const auto &T = ctx.triple();
  const Int p = T.p, q = T.q, r = T.r;
  Int skipped = 0;
  auto check_window = [&](Int m, Int k, Int shift, std::span<const Int> plus, std::span<const Int> minus) {
    const Int diff = ctx.a(m) - ctx.a(m - shift);
    auto where = [&] { return "m=" + num(m) + " multiples of " + num(k); };
    if (!two_multiples) {
      if (plus.empty() && minus.empty())
        rec.check(diff == 0, where, 0, diff);
      return;
    }
    if (plus.size() == 1 && minus.size() == 1 && std::abs(plus[0] - minus[0]) == k) {
      const Int expected = ctx.chi(plus[0]) - ctx.chi(minus[0]);
      rec.check(diff == expected, where, expected, diff);
    } else if (!plus.empty() || !minus.empty()) {
      ++skipped;
    }
  };
  for (const auto &[k, shift] : {std::pair{r, p * q}, std::pair{q, p * r}}) {
    if (k <= p) {
      WindowScan plus_scan(p, k, {0, q + r}), minus_scan(p, k, {q, r});
      for (Int m = 0; m <= ctx.degree(); ++m, plus_scan.advance(), minus_scan.advance())
        check_window(m, k, shift, plus_scan.at(m), minus_scan.at(m));
      continue;
    }
    // k > p: each window holds at most one multiple, at m - offset - rem when
    // rem = (m - offset) mod k is below p.
    const Int offsets[4] = {0, q + r, q, r};
    Int rem[4];
    for (int i = 0; i < 4; ++i)
      rem[i] = lnr(-offsets[i], k);
    Int plus[2], minus[2];
    for (Int m = 0; m <= ctx.degree(); ++m) {
      std::size_t np = 0, nm = 0;
      for (int i = 0; i < 2; ++i)
        if (rem[i] < p)
          plus[np++] = m - offsets[i] - rem[i];
      for (int i = 2; i < 4; ++i)
        if (rem[i] < p && (nm == 0 || minus[0] != m - offsets[i] - rem[i]))
          minus[nm++] = m - offsets[i] - rem[i];
      check_window(m, k, shift, std::span<const Int>(plus, np), std::span<const Int>(minus, nm));
      for (auto &x : rem)
        x = x + 1 == k ? 0 : x + 1;
    }
  }
  if (two_multiples && skipped > 0)
    rep.notes.push_back(num(skipped) + " windows hold multiples in another pattern and were not tested");
}

void audit_extremes(const AuditContext &ctx, AuditReport &rep) {
  Recorder rec(rep);
  std::optional<Int> same, opposite;
  for (auto [eq, er] : kSignPairs) {
    const auto best = max_s(enumerate_m_set(ctx, eq, er));
    auto &slot = eq == er ? same : opposite;
    if (best)
      slot = slot ? std::max(*slot, *best) : *best;
  }
  const auto [lo, hi] = std::minmax_element(ctx.coeffs().begin(), ctx.coeffs().end());
  rec.check(same.has_value() && *same == *hi, "max S over equal signs vs largest coefficient", *hi, same.value_or(0));
  rec.check(opposite.has_value() && *opposite == -*lo, "max S over opposite signs vs minus smallest coefficient", -*lo,
            opposite.value_or(0));
}

void audit_residue_identities(const AuditContext &ctx, AuditReport &rep) {
  Recorder rec(rep);
  const auto &P = *ctx.params();
  const Int p = P.p, q = P.q;
  for (auto [eq, er] : kSignPairs) {
    const auto sp = signed_params(ctx, eq, er);
    const std::string tag = sign_label(eq, er);
    rec.check(sp.x_q == (eq > 0 ? P.t : p - P.t), tag + " x_Q", eq > 0 ? P.t : p - P.t, sp.x_q);
    rec.check(sp.x_r == (er > 0 ? P.s : p - P.s), tag + " x_R", er > 0 ? P.s : p - P.s, sp.x_r);
    rec.check(sp.x_r * q + sp.y_r * p == er + p * q, tag + " x_R q + y_R p", er + p * q, sp.x_r * q + sp.y_r * p);
    rec.check(sp.x_r * P.theta + sp.y_r + sp.eta_r == q, tag + " x_R theta + y_R + eta_R", q,
              sp.x_r * P.theta + sp.y_r + sp.eta_r);
    rec.check(sp.y_r_prime == sp.x_r * P.theta + sp.eta_r, tag + " y'_R", sp.x_r * P.theta + sp.eta_r, sp.y_r_prime);
    rec.check(sp.y_r == sp.x_r_prime * P.theta + P.t - sp.eta_r, tag + " y_R", sp.x_r_prime * P.theta + P.t - sp.eta_r,
              sp.y_r);
    rec.check(sp.eta_r > 0 && sp.eta_r < P.t, tag + " 0 < eta_R < t", 1, sp.eta_r);
  }
}

void audit_no_chi_after_multiples(const AuditContext &ctx, AuditReport &rep) {
  Recorder rec(rep);
  const auto &T = ctx.triple();
  for (Int l = 0; l <= ctx.degree(); l += T.r) {
    for (Int i = 1; i < T.p; ++i) {
      const int v = ctx.chi(l + i);
      rec.check(v == 0, "l=" + num(l) + " i=" + num(i), 0, v);
    }
  }
}

void audit_case1(const AuditContext &ctx, AuditReport &rep) {
  Recorder rec(rep);
  const auto &T = ctx.triple();
  for (auto [eq, er] : kSignPairs) {
    const auto sp = signed_params(ctx, eq, er);
    const auto members = only_case(enumerate_m_set(ctx, eq, er), 1);
    for (const auto &mi : members) {
      const Int a = mi.l / (T.q * T.r);
      rec.check(mi.l % (T.q * T.r) == 0, member_label(mi) + " l is a multiple of qr", 0, mi.l % (T.q * T.r));
      const Int bound = std::min(a, sp.x_r) + 1;
      rec.check(mi.S <= bound, member_label(mi) + " S <= min(a, x_R) + 1", bound, mi.S);
    }
    const Int expected = std::min({sp.x_r + 1, sp.x_r_prime, sp.x_q_prime});
    const auto best = max_s(members);
    rec.check(best.has_value() && *best == expected, sign_label(eq, er) + " case-1 maximum", expected,
              best.value_or(0));
  }
}

void audit_case2(const AuditContext &ctx, AuditReport &rep) {
  Recorder rec(rep);
  for (auto [eq, er] : kSignPairs) {
    const auto members = only_case(enumerate_m_set(ctx, eq, er), 2);
    for (const auto &mi : members)
      rec.check(mi.S <= 0, member_label(mi) + " S <= 0", 0, mi.S);
    if (const auto best = max_s(members))
      rec.check(*best == 0, sign_label(eq, er) + " case-2 maximum", 0, *best);
    else
      rep.notes.push_back(sign_label(eq, er) + ": no case-2 members");
  }
}

void audit_case3_parametrization(const AuditContext &ctx, AuditReport &rep) {
  Recorder rec(rep);
  int unprimed_agree = 0, primed_agree = 0;
  for (auto [eq, er] : kSignPairs) {
    const auto sp = signed_params(ctx, eq, er);
    using Key = std::tuple<Int, Int, Int>;
    std::set<Key> direct, generated;
    for (const auto &mi : only_case(enumerate_m_set(ctx, eq, er), 3))
      direct.emplace(mi.M, mi.l, mi.l_prime);
    for (const auto &mi : parametrized_case3(ctx, eq, er))
      generated.emplace(mi.M, mi.l, mi.l_prime);
    rec.check(direct == generated, sign_label(eq, er) + " case-3 members: direct count vs generated count",
              static_cast<Int>(generated.size()), static_cast<Int>(direct.size()));
    const bool nonempty = !direct.empty();
    unprimed_agree += ((sp.x_q > 1 && sp.x_r > 1) == nonempty);
    primed_agree += ((sp.x_q_prime > 1 && sp.x_r_prime > 1) == nonempty);
  }
  rep.notes.push_back("existence test x_Q, x_R > 1 agrees with the direct scan for " + num(unprimed_agree) +
                      "/4 sign pairs");
  rep.notes.push_back("existence test x'_Q, x'_R > 1 agrees with the direct scan for " + num(primed_agree) +
                      "/4 sign pairs");
}

void audit_case3(const AuditContext &ctx, AuditReport &rep) {
  Recorder rec(rep);
  for (auto [eq, er] : kSignPairs) {
    const auto sp = signed_params(ctx, eq, er);
    const auto members = only_case(enumerate_m_set(ctx, eq, er), 3);
    const Int expected = std::min({sp.x_r_prime + 1, sp.x_r, sp.x_q});
    if (const auto best = max_s(members)) {
      rec.check(*best == expected, sign_label(eq, er) + " case-3 maximum", expected, *best);
    } else {
      const bool should_exist = sp.x_q > 1 && sp.x_r > 1;
      rec.check(!should_exist, sign_label(eq, er) + " case-3 members exist when x_Q, x_R > 1", 1, 0);
      rep.notes.push_back(sign_label(eq, er) + ": no case-3 members (x_Q or x_R is 1)");
    }
  }
}

void audit_completion(const AuditContext &ctx, AuditReport &rep) {
  Recorder rec(rep);
  for (auto [eq, er] : kSignPairs) {
    const auto sp = signed_params(ctx, eq, er);
    const Int expected =
        std::max(std::min({sp.x_r + 1, sp.x_r_prime, sp.x_q_prime}), std::min({sp.x_r_prime + 1, sp.x_r, sp.x_q}));
    const auto best = max_s(enumerate_m_set(ctx, eq, er));
    rec.check(best.has_value() && *best == expected, sign_label(eq, er) + " maximum over all members", expected,
              best.value_or(0));
  }
}

bool is_case_lemma(LemmaId id) {
  switch (id) {
  case LemmaId::L11:
  case LemmaId::L12:
  case LemmaId::L13:
  case LemmaId::L14:
  case LemmaId::completion:
    return true;
  default:
    return false;
  }
}

} // namespace

std::string to_string(LemmaId id) {
  switch (id) {
  case LemmaId::L5:
    return "L5";
  case LemmaId::L6:
    return "L6";
  case LemmaId::L8:
    return "L8";
  case LemmaId::L9:
    return "L9";
  case LemmaId::L10:
    return "L10";
  case LemmaId::L11:
    return "L11";
  case LemmaId::L12:
    return "L12";
  case LemmaId::L13:
    return "L13";
  case LemmaId::L14:
    return "L14";
  case LemmaId::completion:
    return "completion";
  }
  return "?";
}

std::vector<LemmaId> all_lemma_ids() {
  return {LemmaId::L5,  LemmaId::L6,  LemmaId::L8,  LemmaId::L9,  LemmaId::L10,
          LemmaId::L11, LemmaId::L12, LemmaId::L13, LemmaId::L14, LemmaId::completion};
}

std::optional<LemmaId> parse_lemma_id(std::string_view text) {
  for (auto id : all_lemma_ids()) {
    if (to_string(id) == text)
      return id;
  }
  return std::nullopt;
}

bool needs_conforming(LemmaId id) { return id != LemmaId::L5 && id != LemmaId::L6; }

AuditContext::AuditContext(const Triple &triple)
    : triple_(Triple::make(triple.p, triple.q, triple.r)), chi_(triple_), degree_(triple_.degree()),
      coeffs_(stream_coeffs(triple_).coeffs) {
  const Int p = triple_.p, q = triple_.q, r = triple_.r;
  if (q <= p)
    return;
  const Int t = lnr(q, p);
  if (t == 0 || gcd(t, p) != 1)
    return;
  const auto rep = check_conforming(p, t, q, r, Strictness::strict);
  if (rep.kind == Conformance::via_plus && r > p * q)
    params_ = derive_params(p, q);
}

SignedParams signed_params(const AuditContext &ctx, int eps_q, int eps_r) {
  if (!ctx.params())
    throw InvalidArgument("signed_params: triple " + ctx.triple().to_string() + " is not in the conforming family");
  const auto &T = ctx.triple();
  const auto &P = *ctx.params();
  SignedParams sp;
  sp.eps_q = eps_q > 0 ? 1 : -1;
  sp.eps_r = eps_r > 0 ? 1 : -1;
  sp.Q = sp.eps_q * T.q;
  sp.R = sp.eps_r * T.r;
  sp.x_q = crt_decompose(sp.Q, T).x;
  const auto dr = crt_decompose(sp.R, T);
  sp.x_r = dr.x;
  sp.y_r = dr.y;
  sp.x_q_prime = T.p - sp.x_q;
  sp.x_r_prime = T.p - sp.x_r;
  sp.y_r_prime = T.q - sp.y_r;
  sp.eta_r = sp.eps_r > 0 ? P.eta : P.t - P.eta;
  return sp;
}

Int s_sum(const AuditContext &ctx, const SumSpec &args) {
  if (args.M > ctx.degree())
    throw InvalidArgument("s_sum: M=" + num(args.M) + " exceeds the degree " + num(ctx.degree()));
  const auto &T = ctx.triple();
  const Int Q = args.q_sign > 0 ? T.q : -T.q;
  const Int R = args.r_sign > 0 ? T.r : -T.r;
  Int sum = 0;
  for (Int n = args.M - T.p + 1; n <= args.M; ++n)
    sum += ctx.chi(n) - ctx.chi(n + Q) - ctx.chi(n + R) + ctx.chi(n + Q + R);
  return sum;
}

WindowMultiples count_window_multiples(const Triple &triple, Int m) {
  const Int p = triple.p, q = triple.q, r = triple.r;
  std::set<Int> mq, mr;
  for (Int hi : {m, m - q, m - r, m - q - r}) {
    for_multiples_in_window(hi, p, q, [&](Int x) { mq.insert(x); });
    for_multiples_in_window(hi, p, r, [&](Int x) { mr.insert(x); });
  }
  return {static_cast<Int>(mq.size()), static_cast<Int>(mr.size())};
}

std::vector<MInstance> enumerate_m_set(const AuditContext &ctx, int eps_q, int eps_r) {
  const auto &T = ctx.triple();
  const Int p = T.p, q = T.q, r = T.r;
  const Int Q = eps_q > 0 ? q : -q;
  const Int R = eps_r > 0 ? r : -r;
  std::vector<MInstance> out;
  for (Int l = 0; l <= ctx.degree(); l += r) {
    if (ctx.chi(l) != 1 || ctx.chi(l + R) != 0)
      continue;
    const Int last = std::min(l + p - 1, ctx.degree());
    for (Int M = l; M <= last; ++M) {
      std::vector<std::pair<Int, int>> found;
      for_multiples_in_window(M, p, q, [&](Int lp) {
        if (ctx.chi(lp) == 1 && ctx.chi(lp + Q) == 0)
          found.emplace_back(lp, lp == l ? 1 : 2);
      });
      for_multiples_in_window(M + Q + R, p, q, [&](Int lp) {
        if (ctx.chi(lp) == 1 && ctx.chi(lp - Q) == 0)
          found.emplace_back(lp, 3);
      });
      if (found.empty())
        continue;
      const Int S = s_sum(ctx, {eps_q, eps_r, M});
      for (auto [lp, c] : found)
        out.push_back(MInstance{eps_q, eps_r, M, l, lp, c, S});
    }
  }
  return out;
}

std::vector<MInstance> parametrized_case3(const AuditContext &ctx, int eps_q, int eps_r) {
  const auto sp = signed_params(ctx, eps_q, eps_r);
  const auto &T = ctx.triple();
  const auto &P = *ctx.params();
  const Int p = T.p, q = T.q, r = T.r;
  std::vector<MInstance> out;
  for (Int a = 0; a < sp.x_r_prime; ++a) {
    for (Int b = std::max<Int>(1, sp.x_q_prime - a); b < sp.x_r; ++b) {
      const Int l = a * q * r + (P.theta * b + sp.eta_r - P.t) * p * r;
      const Int lp = l + sp.Q + sp.R + p + b - sp.x_r;
      for (Int M = std::max<Int>(0, l + p + b - sp.x_r); M < l + p && M <= ctx.degree(); ++M)
        out.push_back(MInstance{sp.eps_q, sp.eps_r, M, l, lp, 3, s_sum(ctx, {eps_q, eps_r, M})});
    }
  }
  return out;
}

AuditReport audit_lemma(const AuditContext &ctx, LemmaId id) {
  AuditReport rep;
  rep.lemma_id = to_string(id);
  rep.triple = ctx.triple();
  if (needs_conforming(id) && !ctx.params())
    throw InvalidArgument("audit " + rep.lemma_id + ": " + ctx.triple().to_string() +
                          " needs r t = 1 (mod pq) with q > p^2 and r > pq");
  if (is_case_lemma(id) && ctx.params()->t == 1) {
    rep.applicable = false;
    rep.notes.push_back("not applicable: requires t >= 2");
    return rep;
  }
  switch (id) {
  case LemmaId::L5:
    audit_window_identities(ctx, false, rep);
    break;
  case LemmaId::L6:
    audit_window_identities(ctx, true, rep);
    break;
  case LemmaId::L8:
    audit_extremes(ctx, rep);
    break;
  case LemmaId::L9:
    if (ctx.params()->t == 1) {
      rep.applicable = false;
      rep.notes.push_back("not applicable: requires t >= 2");
      break;
    }
    audit_residue_identities(ctx, rep);
    break;
  case LemmaId::L10:
    audit_no_chi_after_multiples(ctx, rep);
    break;
  case LemmaId::L11:
    audit_case1(ctx, rep);
    break;
  case LemmaId::L12:
    audit_case2(ctx, rep);
    break;
  case LemmaId::L13:
    audit_case3_parametrization(ctx, rep);
    break;
  case LemmaId::L14:
    audit_case3(ctx, rep);
    break;
  case LemmaId::completion:
    audit_completion(ctx, rep);
    break;
  }
  return rep;
}

AuditReport audit_lemma(const Triple &triple, LemmaId id) { return audit_lemma(AuditContext(triple), id); }

Triple shift_above_pq(const Triple &triple) {
  const Int pq = triple.p * triple.q;
  if (triple.r > pq)
    return triple;
  return Triple::make(triple.p, triple.q, triple.r + ((pq - triple.r) / pq + 1) * pq);
}

Triple conforming_audit_triple(Int p, Int t) {
  const Int q = next_prime_in_progression(t, p, p * p);
  const Int pq = p * q;
  Int r = mod_inverse(t, pq);
  r += ((pq - r) / pq + 1) * pq;
  return Triple::make(p, q, r);
}

std::vector<Triple> conforming_audit_corpus(Int p) {
  std::vector<Triple> out;
  for (Int t = 1; t < p; ++t) {
    if (gcd(t, p) == 1)
      out.push_back(conforming_audit_triple(p, t));
  }
  return out;
}

bool product_has_large_prime(Int n) {
  if (n < 4)
    throw InvalidArgument("product_has_large_prime: n must be >= 4, got " + num(n));
  if (n > 30)
    throw LimitExceeded("product_has_large_prime: n must be <= 30, got " + num(n));
  using boost::multiprecision::cpp_int;
  cpp_int product = 1;
  for (Int i = 1; i <= n; ++i)
    product *= 1 + i * n;
  for (Int d = 2; d <= 2 * n + 1; ++d) {
    if (!is_prime(d))
      continue;
    while (product % d == 0)
      product /= d;
  }
  return product > 1;
}

} // namespace tcyclo
