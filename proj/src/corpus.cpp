#include "tcyclo/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <mutex>
#include <optional>
#include <thread>

#include "tcyclo/chi_engine.hpp"
#include "tcyclo/errors.hpp"
#include "tcyclo/theorem3.hpp"

namespace tcyclo {

namespace {

std::string num(Int v) { return std::to_string(v); }

std::vector<Int> negated(const std::vector<Int> &set) {
  std::vector<Int> out;
  for (auto it = set.rbegin(); it != set.rend(); ++it)
    out.push_back(-*it);
  return out;
}

std::string set_text(const std::vector<Int> &set) {
  std::string s = "{";
  for (std::size_t i = 0; i < set.size(); ++i)
    s += (i ? "," : "") + num(set[i]);
  return s + "}";
}

void add(TripleReport &rep, std::string name, bool ok, std::string detail = {}) {
  rep.checks.push_back(CheckResult{std::move(name), ok, ok ? std::string{} : std::move(detail)});
}

void structural_checks(TripleReport &rep, const std::vector<Int> &a) {
  const auto n = a.size();
  add(rep, "end_coefficients", a.front() == 1 && a.back() == 1,
      "a_0=" + num(a.front()) + " a_deg=" + num(a.back()));
  std::optional<std::size_t> asym;
  for (std::size_t m = 0; m < n / 2 && !asym; ++m)
    if (a[m] != a[n - 1 - m])
      asym = m;
  add(rep, "self_reciprocal", !asym, asym ? "a_" + num(static_cast<Int>(*asym)) + " differs from its mirror" : "");
  Int sum = 0;
  for (Int v : a)
    sum += v;
  add(rep, "coefficient_sum", sum == 1, "sum=" + num(sum));
}

} // namespace

bool TripleReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
}

std::vector<Triple> enumerate_corpus(Int pmax, Int qmax, Int rmax) {
  std::vector<Triple> out;
  for (Int p = 3; p <= pmax; ++p)
    for (Int q = p + 1; q <= qmax; ++q) {
      if (gcd(p, q) != 1)
        continue;
      for (Int r = q + 1; r <= rmax; ++r)
        if (gcd(p, r) == 1 && gcd(q, r) == 1)
          out.push_back(Triple{p, q, r});
    }
  return out;
}

std::vector<Triple> enumerate_by_degree(Int max_degree) {
  std::vector<Triple> out;
  for (Int p = 3; (p - 1) * p * (p + 1) <= max_degree; ++p)
    for (Int q = p + 1; (p - 1) * (q - 1) * q <= max_degree; ++q) {
      if (gcd(p, q) != 1)
        continue;
      for (Int r = q + 1; (p - 1) * (q - 1) * (r - 1) <= max_degree; ++r)
        if (gcd(p, r) == 1 && gcd(q, r) == 1)
          out.push_back(Triple{p, q, r});
    }
  return out;
}

Int negated_partner(const Triple &triple) {
  const Int pq = triple.p * triple.q;
  Int r = lnr(-triple.r, pq);
  const Int floor_value = std::max(triple.p, triple.q);
  if (r <= floor_value)
    r += ((floor_value - r) / pq + 1) * pq;
  return r;
}

TripleReport verify_triple(const Triple &input, const CorpusOptions &opts) {
  const Triple triple = Triple::make(input.p, input.q, input.r);
  TripleReport rep;
  rep.triple = triple;

  if (triple.degree() <= opts.oracle_cap) {
    const auto engine = stream_coeffs(triple);
    const auto oracle = q_poly_coeffs(triple, opts.oracle_cap);
    std::optional<Int> first_diff;
    for (Int m = 0; m <= engine.degree() && !first_diff; ++m)
      if (engine[m] != oracle[m])
        first_diff = m;
    add(rep, "engine_matches_oracle", engine.coeffs.size() == oracle.coeffs.size() && !first_diff,
        first_diff ? "first difference at m=" + num(*first_diff) : "length mismatch");
    structural_checks(rep, engine.coeffs);
    try {
      rep.profile = profile_from_coeffs(engine);
      add(rep, "contiguous", true);
    } catch (const InvariantViolation &e) {
      add(rep, "contiguous", false, e.what());
      const auto [lo, hi] = std::minmax_element(engine.coeffs.begin(), engine.coeffs.end());
      rep.profile = profile_from_extremes(engine.degree(), *lo, *hi);
    }
  } else {
    try {
      rep.profile = profile_stream(triple);
      add(rep, "contiguous", true);
    } catch (const InvariantViolation &e) {
      add(rep, "contiguous", false, e.what());
      return rep;
    }
  }

  const auto &prof = rep.profile;
  add(rep, "diameter_bounds", prof.diameter >= 2 && prof.diameter <= triple.min(),
      "diameter " + num(prof.diameter) + " outside [2, " + num(triple.min()) + "]");

  if (opts.identities && triple.r > std::max(triple.p, triple.q)) {
    const Int pq = triple.p * triple.q;
    if (Triple::validate(triple.p, triple.q, triple.r + pq).empty()) {
      const auto shifted = profile_stream(Triple{triple.p, triple.q, triple.r + pq});
      add(rep, "shift_identity", shifted.coeff_set == prof.coeff_set,
          set_text(shifted.coeff_set) + " vs " + set_text(prof.coeff_set));
    }
    const Int rn = negated_partner(triple);
    if (Triple::validate(triple.p, triple.q, rn).empty()) {
      const auto mirror = profile_stream(Triple{triple.p, triple.q, rn});
      add(rep, "negation_identity", mirror.coeff_set == negated(prof.coeff_set),
          "r'=" + num(rn) + " gives " + set_text(mirror.coeff_set));
    }
  }

  if (triple.q > triple.p) {
    const Int t = lnr(triple.q, triple.p);
    if (t != 0 && gcd(t, triple.p) == 1 &&
        check_conforming(triple.p, t, triple.q, triple.r, Strictness::strict).conforming()) {
      const auto c = predict_profile(triple.p, t, triple.q, triple.r, Strictness::strict);
      add(rep, "closed_form_prediction", c.predicted_a_minus == prof.a_minus && c.predicted_a_plus == prof.a_plus,
          "predicted (" + num(c.predicted_a_minus) + "," + num(c.predicted_a_plus) + ") computed (" +
              num(prof.a_minus) + "," + num(prof.a_plus) + ")");
    }
  }

  const Int x = triple.p, y = triple.q, z = triple.r;
  for (auto [a, b, c] : {std::tuple{x, y, z}, std::tuple{y, z, x}, std::tuple{z, x, y}}) {
    const Int rc = lnr(c, a * b);
    if (rc == 1 || rc == a * b - 1) {
      add(rep, "flatness", prof.height == 1, "height " + num(prof.height) + " with r = +-1 (mod pq)");
      break;
    }
  }

  if (triple.sorted() == Triple{3, 5, 7})
    add(rep, "pinned_3_5_7", prof.coeff_set == std::vector<Int>{-2, -1, 0, 1} && prof.height == 2 && prof.diameter == 3,
        "coefficient set " + set_text(prof.coeff_set));
  return rep;
}

CorpusSummary verify_corpus(const std::vector<Triple> &corpus, const CorpusOptions &opts,
                            const std::function<void(const TripleReport &)> &sink) {
  CorpusSummary summary;
  std::vector<std::optional<TripleReport>> slots(corpus.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::condition_variable ready;
  std::exception_ptr failure;

  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      try {
        auto rep = verify_triple(corpus[i], opts);
        std::lock_guard lock(mu);
        slots[i] = std::move(rep);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure)
          failure = std::current_exception();
        next = corpus.size();
      }
      ready.notify_all();
    }
  };

  const unsigned jobs = std::max(1u, opts.jobs);
  std::vector<std::jthread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back(worker);

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    TripleReport rep;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return slots[i].has_value() || failure; });
      if (!slots[i])
        break;
      rep = std::move(*slots[i]);
      slots[i].reset();
    }
    ++summary.triples;
    if (rep.passed()) {
      ++summary.passed;
    } else {
      ++summary.failed;
      for (const auto &c : rep.checks)
        if (!c.passed)
          ++summary.failures_by_check[c.name];
    }
    if (sink)
      sink(rep);
  }
  pool.clear();
  if (failure)
    std::rethrow_exception(failure);
  return summary;
}

} // namespace tcyclo
