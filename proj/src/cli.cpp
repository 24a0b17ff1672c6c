#include "tcyclo/cli.hpp"

#include <sys/resource.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tcyclo/chi_engine.hpp"
#include "tcyclo/corpus.hpp"
#include "tcyclo/errors.hpp"
#include "tcyclo/lemma_audit.hpp"
#include "tcyclo/poly_oracle.hpp"
#include "tcyclo/solvers.hpp"
#include "tcyclo/theorem3.hpp"

namespace tcyclo::cli {

namespace {

using json = nlohmann::json;

// Raised for malformed flag values discovered after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool no_timestamp = false;
  std::string config_path;
  std::optional<Int> cap_degree;
  std::optional<Int> search_cap;
  std::optional<unsigned> jobs;

  Int oracle_cap() const { return cap_degree.value_or(kDefaultOracleCap); }
  unsigned job_count() const { return jobs.value_or(1); }
};

void load_config(Globals &g) {
  if (g.config_path.empty())
    return;
  std::ifstream in(g.config_path);
  if (!in)
    throw UsageError("cannot open config file " + g.config_path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception &e) {
    throw UsageError("config file " + g.config_path + ": " + e.what());
  }
  if (!cfg.is_object())
    throw UsageError("config file must hold a JSON object");
  for (const auto &[key, value] : cfg.items()) {
    if (!value.is_number_integer() || value.get<Int>() < 1)
      throw UsageError("config key " + key + " must be a positive integer");
    if (key == "cap_degree") {
      if (!g.cap_degree)
        g.cap_degree = value.get<Int>();
    } else if (key == "search_cap") {
      if (!g.search_cap)
        g.search_cap = value.get<Int>();
    } else if (key == "jobs") {
      if (!g.jobs)
        g.jobs = value.get<unsigned>();
    } else {
      throw UsageError("unknown config key " + key);
    }
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Emitter {
public:
  Emitter(std::ostream &out, bool timestamp) : out_(out), timestamp_(timestamp) {}

  void emit(const std::string &command, json inputs, json results, std::optional<bool> verified = {}) {
    json rec;
    rec["schema_version"] = kSchemaVersion;
    rec["command"] = command;
    rec["inputs"] = std::move(inputs);
    rec["results"] = std::move(results);
    if (verified)
      rec["verified"] = *verified;
    if (timestamp_)
      rec["timestamp"] = utc_timestamp();
    out_ << rec.dump() << '\n';
    out_.flush();
  }

private:
  std::ostream &out_;
  bool timestamp_;
};

json to_json(const Triple &t) { return json::array({t.p, t.q, t.r}); }

json to_json(const HeightProfile &h) {
  return json{{"degree", h.degree},     {"a_plus", h.a_plus},     {"a_minus", h.a_minus},
              {"height", h.height},     {"diameter", h.diameter}, {"coeff_set", h.coeff_set}};
}

json to_json(const CaseClassification &c) {
  return json{{"case", to_string(c.case_id)},
              {"p", c.p},
              {"t", c.t},
              {"s", c.s},
              {"ut", c.ut},
              {"us", c.us},
              {"a_minus", c.predicted_a_minus},
              {"a_plus", c.predicted_a_plus},
              {"height", c.predicted_height},
              {"diameter", c.predicted_diameter},
              {"mirrored", c.mirrored}};
}

json to_json(const ConformanceReport &r) {
  return json{{"kind", to_string(r.kind)}, {"violations", r.violations}, {"warnings", r.warnings}};
}

json to_json(const Witness &w) {
  const Int pq = w.p * w.q;
  const Int rt = static_cast<Int>(static_cast<Wide>(w.r % pq) * w.t % pq);
  json j{{"p", w.p},
         {"t", w.t},
         {"q", w.q},
         {"r", w.r},
         {"kind", to_string(w.kind)},
         {"target", w.target},
         {"classification", to_json(w.classification)},
         {"notes", w.notes},
         {"certificates",
          {{"q_mod_p", lnr(w.q, w.p)},
           {"r_times_t_mod_pq", rt},
           {"q_exceeds_p_squared", w.q > w.p * w.p},
           {"r_exceeds_q", w.r > w.q},
           {"q_prime", is_prime(w.q)},
           {"r_prime", is_prime(w.r)}}}};
  return j;
}

json to_json(const VerifyReport &v) {
  json j{{"verified", v.verified}, {"conformance", to_json(v.conformance)}, {"failures", v.failures}};
  j["engine"] = v.engine ? to_json(*v.engine) : json(nullptr);
  j["oracle"] = v.oracle ? to_json(*v.oracle) : json(nullptr);
  return j;
}

json to_json(const Counterexample &c) {
  return json{{"triple", to_json(c.triple)}, {"where", c.where}, {"expected", c.expected}, {"got", c.got}};
}

Int parse_count(const std::string &text, const char *what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || v < 1 || v > 4e18 || v != std::floor(v))
      throw UsageError("");
    return static_cast<Int>(v);
  } catch (const std::exception &) {
    throw UsageError(std::string(what) + " must be a positive integer, got '" + text + "'");
  }
}

// Runs fn(i) for i in [0, n) on `jobs` threads; results keep their index.
template <class T> std::vector<T> parallel_map(std::size_t n, unsigned jobs, const std::function<T(std::size_t)> &fn) {
  std::vector<T> out(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure)
          failure = std::current_exception();
        next = n;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < std::max(1u, jobs); ++j)
      pool.emplace_back(worker);
  }
  if (failure)
    std::rethrow_exception(failure);
  return out;
}

void write_coeff_csv(const std::string &path, const std::function<void(std::ostream &)> &rows) {
  std::ofstream f(path);
  if (!f)
    throw UsageError("cannot write " + path);
  f << "m,a_m\n";
  rows(f);
  if (!f)
    throw UsageError("error writing " + path);
}

// ---- profile ---------------------------------------------------------------

struct ProfileArgs {
  Int p = 0, q = 0, r = 0;
  bool engine = false, oracle = false, both = false;
  std::string emit_path;
};

int cmd_profile(const ProfileArgs &a, const Globals &g, Emitter &em) {
  const Triple t = Triple::make(a.p, a.q, a.r);
  const std::string method = a.both ? "both" : a.oracle ? "oracle" : "engine";
  json inputs{{"p", a.p}, {"q", a.q}, {"r", a.r}, {"method", method}};
  if (!a.emit_path.empty())
    inputs["emit_coeffs"] = a.emit_path;

  std::optional<HeightProfile> eng, orc;
  std::optional<CoeffVector> dense;
  if (a.oracle || a.both) {
    dense = q_poly_coeffs(t, g.oracle_cap());
    orc = profile_from_coeffs(*dense);
  }
  if (!a.oracle)
    eng = profile_stream(t);

  if (!a.emit_path.empty()) {
    write_coeff_csv(a.emit_path, [&](std::ostream &f) {
      if (dense) {
        for (Int m = 0; m <= dense->degree(); ++m)
          f << m << ',' << (*dense)[m] << '\n';
      } else {
        for_each_coefficient(t, [&](Int m, Int v) { f << m << ',' << v << '\n'; });
      }
    });
  }

  json results = to_json(eng ? *eng : *orc);
  results["method"] = method;
  if (a.both) {
    const bool agree = *eng == *orc;
    if (!agree)
      results["oracle"] = to_json(*orc);
    em.emit("profile", inputs, results, agree);
    return agree ? kExitOk : kExitVerificationFailed;
  }
  em.emit("profile", inputs, results);
  return kExitOk;
}

// ---- predict ---------------------------------------------------------------

struct PredictArgs {
  Int p = 0, t = 0, q = 0, r = 0;
  bool no_strict = false;
  bool verify = false;
};

int cmd_predict(const PredictArgs &a, Emitter &em, std::ostream &err) {
  const auto strictness = a.no_strict ? Strictness::lenient : Strictness::strict;
  const auto rep = check_conforming(a.p, a.t, a.q, a.r, strictness);
  if (!rep.conforming()) {
    err << "error: (" << a.p << ", " << a.t << ", " << a.q << ", " << a.r << ") is not conforming:";
    for (const auto &v : rep.violations)
      err << "\n  - " << v;
    err << '\n';
    return kExitUsage;
  }
  const auto c = predict_profile(a.p, a.t, a.q, a.r, strictness);
  json inputs{{"p", a.p}, {"t", a.t}, {"q", a.q}, {"r", a.r}, {"strict", !a.no_strict}};
  json results{{"classification", to_json(c)}, {"conformance", to_json(rep)}};
  if (!a.no_strict && !a.verify) {
    em.emit("predict", inputs, results);
    return kExitOk;
  }
  const auto computed = profile_stream(Triple::make(a.p, a.q, a.r));
  results["computed"] = to_json(computed);
  const bool ok = computed.a_minus == c.predicted_a_minus && computed.a_plus == c.predicted_a_plus;
  em.emit("predict", inputs, results, ok);
  return ok ? kExitOk : kExitVerificationFailed;
}

// ---- solve -----------------------------------------------------------------

struct SolveArgs {
  Int p = 0;
  Int target = 0;
  bool prime_r = false;
  bool composite_q = false;
  bool verify = false;
  Int min_q = 0;
};

SolveOptions solve_options(const SolveArgs &a, const Globals &g) {
  SolveOptions o;
  o.prime_q = !a.composite_q;
  o.prime_r = a.prime_r;
  o.verify = false; // verification runs below so its report can be emitted
  o.min_q = a.min_q;
  o.search_cap = g.search_cap.value_or(kDefaultProgressionCap);
  if (g.cap_degree)
    o.oracle_cap = *g.cap_degree;
  return o;
}

int emit_witness(const std::string &kind, json inputs, const std::optional<Witness> &w, const SolveArgs &a,
                 const SolveOptions &opts, Emitter &em) {
  json results;
  results["found"] = w.has_value();
  results["witness"] = w ? to_json(*w) : json(nullptr);
  if (!w)
    results["reason"] = "no choice of t reaches diameter " + std::to_string(a.target) + " for p=" + std::to_string(a.p);
  if (a.verify && w) {
    const auto rep = verify_witness(*w, opts);
    results["verification"] = to_json(rep);
    em.emit("solve " + kind, inputs, results, rep.verified);
    return rep.verified ? kExitOk : kExitVerificationFailed;
  }
  em.emit("solve " + kind, inputs, results);
  return kExitOk;
}

json solve_inputs(const SolveArgs &a, const SolveOptions &o) {
  return json{{"prime_q", o.prime_q}, {"prime_r", o.prime_r}, {"verify", a.verify}, {"min_q", a.min_q}};
}

int cmd_solve_height(const SolveArgs &a, const Globals &g, Emitter &em) {
  const auto opts = solve_options(a, g);
  json inputs = solve_inputs(a, opts);
  inputs["p"] = a.p;
  inputs["h"] = a.target;
  return emit_witness("height", inputs, solve_height(a.p, a.target, opts), a, opts, em);
}

int cmd_solve_diameter(const SolveArgs &a, const Globals &g, Emitter &em) {
  const auto opts = solve_options(a, g);
  json inputs = solve_inputs(a, opts);
  inputs["p"] = a.p;
  inputs["d"] = a.target;
  return emit_witness("diameter", inputs, solve_diameter_for_p(a.p, a.target, opts), a, opts, em);
}

int cmd_solve_any_p(const SolveArgs &a, const Globals &g, Emitter &em) {
  const auto opts = solve_options(a, g);
  json inputs = solve_inputs(a, opts);
  inputs["d"] = a.target;
  return emit_witness("diameter-any-p", inputs, solve_diameter_any_p(a.target, opts), a, opts, em);
}

// ---- verify-corpus ---------------------------------------------------------

struct CorpusArgs {
  Int pmax = 0, qmax = 0, rmax = 0;
  std::vector<Int> triple;
  bool no_identities = false;
};

int cmd_verify_corpus(const CorpusArgs &a, const Globals &g, Emitter &em) {
  auto corpus = enumerate_corpus(a.pmax, a.qmax, a.rmax);
  if (!a.triple.empty())
    corpus.push_back(Triple::make(a.triple[0], a.triple[1], a.triple[2]));
  CorpusOptions opts;
  opts.oracle_cap = g.oracle_cap();
  opts.identities = !a.no_identities;
  opts.jobs = g.job_count();

  const auto summary = verify_corpus(corpus, opts, [&](const TripleReport &rep) {
    json checks = json::array();
    for (const auto &c : rep.checks) {
      json cj{{"name", c.name}, {"passed", c.passed}};
      if (!c.passed)
        cj["detail"] = c.detail;
      checks.push_back(cj);
    }
    em.emit("verify-corpus", json{{"triple", to_json(rep.triple)}},
            json{{"profile", to_json(rep.profile)}, {"checks", checks}}, rep.passed());
  });

  json inputs{{"pmax", a.pmax}, {"qmax", a.qmax}, {"rmax", a.rmax}, {"identities", opts.identities}};
  if (!a.triple.empty())
    inputs["triple"] = a.triple;
  json results{{"summary",
                {{"triples", summary.triples},
                 {"passed", summary.passed},
                 {"failed", summary.failed},
                 {"failures_by_check", summary.failures_by_check}}}};
  em.emit("verify-corpus", inputs, results, summary.failed == 0);
  return summary.failed == 0 ? kExitOk : kExitVerificationFailed;
}

// ---- audit -----------------------------------------------------------------

struct AuditArgs {
  std::vector<std::string> ids;
  bool all_small = false;
  std::vector<std::string> conforming;
  std::vector<Int> triple;
  Int small_max = 40;
};

Int parse_conforming_p(const std::string &text) {
  const std::string body = text.rfind("p=", 0) == 0 ? text.substr(2) : text;
  const Int p = parse_count(body, "--conforming");
  if (p < 3)
    throw UsageError("--conforming needs p >= 3");
  return p;
}

struct LemmaTotals {
  Int triples = 0;
  Int applicable = 0;
  Int instances = 0;
  bool passed = true;
  std::optional<Counterexample> first;
  std::set<std::string> notes;
};

int cmd_audit(const AuditArgs &a, const Globals &g, Emitter &em) {
  std::vector<LemmaId> ids;
  bool want_l1 = false;
  for (const auto &s : a.ids) {
    if (s == "L1") {
      want_l1 = true;
    } else if (auto id = parse_lemma_id(s)) {
      ids.push_back(*id);
    } else if (s == "all") {
      want_l1 = true;
      ids = all_lemma_ids();
    } else {
      throw UsageError("unknown lemma id '" + s + "'");
    }
  }

  std::vector<Int> ps;
  for (const auto &s : a.conforming)
    ps.push_back(parse_conforming_p(s));

  std::vector<Triple> small, conforming;
  std::string selection;
  if (!a.triple.empty()) {
    const auto t = Triple::make(a.triple[0], a.triple[1], a.triple[2]);
    small = {t};
    conforming = {shift_above_pq(t)};
    selection = "triple";
  } else if (!ps.empty()) {
    for (Int p : ps) {
      auto c = conforming_audit_corpus(p);
      conforming.insert(conforming.end(), c.begin(), c.end());
    }
    small = conforming;
    selection = "conforming";
  } else {
    small = enumerate_corpus(a.small_max, a.small_max, a.small_max);
    for (Int p : {3, 5, 7}) {
      auto c = conforming_audit_corpus(p);
      conforming.insert(conforming.end(), c.begin(), c.end());
    }
    selection = "all-small";
  }

  int status = kExitOk;
  json base_inputs{{"selection", selection}};
  if (!ps.empty())
    base_inputs["conforming_p"] = ps;
  if (!a.triple.empty())
    base_inputs["triple"] = a.triple;
  if (selection == "all-small")
    base_inputs["small_max"] = a.small_max;

  if (want_l1) {
    json failures = json::array();
    for (Int n = 4; n <= 30; ++n)
      if (!product_has_large_prime(n))
        failures.push_back(n);
    const bool ok = failures.empty();
    json inputs = base_inputs;
    inputs["lemma"] = "L1";
    inputs["n_range"] = json::array({4, 30});
    em.emit("audit", inputs, json{{"instances_checked", 27}, {"passed", ok}, {"failures", failures}}, ok);
    if (!ok)
      status = kExitVerificationFailed;
  }
  if (ids.empty())
    return status;

  auto run_set = [&](const std::vector<Triple> &triples, const std::vector<LemmaId> &which) {
    std::vector<LemmaTotals> totals(which.size());
    if (which.empty())
      return totals;
    const auto reports = parallel_map<std::vector<AuditReport>>(
        triples.size(), g.job_count(), [&](std::size_t i) {
          const AuditContext ctx(triples[i]);
          std::vector<AuditReport> out;
          for (auto id : which)
            out.push_back(audit_lemma(ctx, id));
          return out;
        });
    for (const auto &per_triple : reports)
      for (std::size_t k = 0; k < which.size(); ++k) {
        const auto &rep = per_triple[k];
        auto &tot = totals[k];
        ++tot.triples;
        tot.applicable += rep.applicable;
        tot.instances += rep.instances_checked;
        if (!rep.passed && tot.passed) {
          tot.passed = false;
          tot.first = rep.first_counterexample;
        }
        for (const auto &n : rep.notes)
          if (tot.notes.size() < 24)
            tot.notes.insert(rep.triple.to_string() + ": " + n);
      }
    return totals;
  };

  std::vector<LemmaId> window_ids, family_ids;
  for (auto id : ids)
    (needs_conforming(id) ? family_ids : window_ids).push_back(id);
  if (!family_ids.empty()) {
    for (const auto &t : conforming)
      if (!AuditContext(t).params())
        throw UsageError(t.to_string() + " is not in the conforming family (r t = 1 mod pq, q > p^2, r > pq)");
  }
  const auto window_totals = run_set(small, window_ids);
  const auto family_totals = run_set(conforming, family_ids);

  auto emit_totals = [&](const std::vector<LemmaId> &which, const std::vector<LemmaTotals> &totals) {
    for (std::size_t k = 0; k < which.size(); ++k) {
      const auto &tot = totals[k];
      json inputs = base_inputs;
      inputs["lemma"] = to_string(which[k]);
      json results{{"triples", tot.triples},
                   {"applicable_triples", tot.applicable},
                   {"instances_checked", tot.instances},
                   {"passed", tot.passed},
                   {"notes", std::vector<std::string>(tot.notes.begin(), tot.notes.end())}};
      results["first_counterexample"] = tot.first ? to_json(*tot.first) : json(nullptr);
      em.emit("audit", inputs, results, tot.passed);
      if (!tot.passed)
        status = kExitVerificationFailed;
    }
  };
  emit_totals(window_ids, window_totals);
  emit_totals(family_ids, family_totals);
  return status;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string degree = "5e7";
  Int p = 11;
  Int q = 127;
};

int cmd_bench(const BenchArgs &a, Emitter &em) {
  const Int target = parse_count(a.degree, "--degree");
  if (a.p < 3 || a.q <= a.p || gcd(a.p, a.q) != 1)
    throw UsageError("bench needs 3 <= p < q with gcd(p, q) = 1");
  const Int base = (a.p - 1) * (a.q - 1);
  Int r = std::max(a.q + 1, (target + base - 1) / base + 1);
  while (gcd(r, a.p * a.q) != 1)
    ++r;
  const Triple t = Triple::make(a.p, a.q, r);

  const auto start = std::chrono::steady_clock::now();
  const auto prof = profile_stream(t);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  json results{{"triple", to_json(t)},
               {"degree", t.degree()},
               {"seconds", secs},
               {"steps_per_second", secs > 0 ? static_cast<double>(t.degree() + 1) / secs : 0.0},
               {"max_rss_kb", static_cast<Int>(ru.ru_maxrss)},
               {"height", prof.height},
               {"diameter", prof.diameter}};
  em.emit("bench", json{{"target_degree", target}, {"p", a.p}, {"q", a.q}}, results);
  return kExitOk;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Coefficients, heights and diameters of ternary inclusion-exclusion polynomials", "tcyclo"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit the timestamp field from records");
  app.add_option("--config", g.config_path, "JSON file presetting cap_degree, search_cap, jobs");
  app.add_option("--cap-degree", g.cap_degree, "Largest degree expanded by the dense oracle")->check(CLI::PositiveNumber);
  app.add_option("--search-cap", g.search_cap, "Candidates examined per prime search")->check(CLI::PositiveNumber);
  app.add_option("--jobs", g.jobs, "Worker threads for corpus and audit commands")->check(CLI::PositiveNumber);

  std::function<int(Emitter &)> action;

  ProfileArgs pa;
  auto *profile = app.add_subcommand("profile", "Heights, diameter and coefficient set of Q_{p,q,r}")->fallthrough();
  profile->add_option("P", pa.p)->required();
  profile->add_option("Q", pa.q)->required();
  profile->add_option("R", pa.r)->required();
  auto *f_engine = profile->add_flag("--engine", pa.engine, "Streaming engine (default)");
  auto *f_oracle = profile->add_flag("--oracle", pa.oracle, "Dense polynomial division");
  auto *f_both = profile->add_flag("--both", pa.both, "Run both and compare");
  f_engine->excludes(f_oracle)->excludes(f_both);
  f_oracle->excludes(f_both);
  profile->add_option("--emit-coeffs", pa.emit_path, "Write m,a_m rows to PATH");
  profile->callback([&] { action = [&](Emitter &em) { return cmd_profile(pa, g, em); }; });

  PredictArgs pr;
  auto *predict = app.add_subcommand("predict", "Closed-form extremes for a conforming (p, t, q, r)")->fallthrough();
  predict->add_option("P", pr.p)->required();
  predict->add_option("T", pr.t)->required();
  predict->add_option("Q", pr.q)->required();
  predict->add_option("R", pr.r)->required();
  auto *f_strict = predict->add_flag("--strict", "Require q > p^2 (default)");
  auto *f_lenient = predict->add_flag("--no-strict", pr.no_strict, "Warn on q <= p^2 and verify by computation");
  f_strict->excludes(f_lenient);
  predict->add_flag("--verify", pr.verify, "Compare with the streaming engine");
  predict->callback([&] { action = [&](Emitter &em) { return cmd_predict(pr, em, err); }; });

  SolveArgs sa;
  auto *solve = app.add_subcommand("solve", "Construct a witness triple for a target")->fallthrough();
  solve->require_subcommand(1);
  solve->add_flag("--prime-r", sa.prime_r, "Require r prime");
  solve->add_flag("--composite-q", sa.composite_q, "Allow composite q");
  solve->add_flag("--verify", sa.verify, "Recompute the profile of the witness");
  solve->add_option("--min-q", sa.min_q, "Lower bound for q");
  auto *s_height = solve->add_subcommand("height", "Witness with height H for P")->fallthrough();
  s_height->add_option("P", sa.p)->required();
  s_height->add_option("H", sa.target)->required();
  s_height->callback([&] { action = [&](Emitter &em) { return cmd_solve_height(sa, g, em); }; });
  auto *s_diam = solve->add_subcommand("diameter", "Witness with diameter D for the odd prime P")->fallthrough();
  s_diam->add_option("P", sa.p)->required();
  s_diam->add_option("D", sa.target)->required();
  s_diam->callback([&] { action = [&](Emitter &em) { return cmd_solve_diameter(sa, g, em); }; });
  auto *s_any = solve->add_subcommand("diameter-any-p", "Witness with odd diameter D for some prime p")->fallthrough();
  s_any->add_option("D", sa.target)->required();
  s_any->callback([&] { action = [&](Emitter &em) { return cmd_solve_any_p(sa, g, em); }; });

  CorpusArgs ca;
  auto *corpus = app.add_subcommand("verify-corpus", "Invariant suite over all coprime p < q < r within bounds")
                     ->fallthrough();
  corpus->add_option("PMAX", ca.pmax);
  corpus->add_option("QMAX", ca.qmax);
  corpus->add_option("RMAX", ca.rmax);
  corpus->add_option("--triple", ca.triple, "Also check this triple")->expected(3);
  corpus->add_flag("--no-identities", ca.no_identities, "Skip shift and negation comparisons");
  corpus->callback([&] { action = [&](Emitter &em) { return cmd_verify_corpus(ca, g, em); }; });

  AuditArgs aa;
  auto *audit = app.add_subcommand("audit", "Exhaustive checks of the window and case lemmas")->fallthrough();
  audit->add_option("IDS", aa.ids, "L1 L5 L6 L8 L9 L10 L11 L12 L13 L14 completion, or all")->required();
  audit->add_flag("--all-small", aa.all_small, "Small corpus and conforming triples for p in {3,5,7} (default)");
  audit->add_option("--conforming", aa.conforming, "Conforming audit triples for p (accepts 5 or p=5)");
  audit->add_option("--triple", aa.triple, "Audit one triple")->expected(3);
  audit->add_option("--small-max", aa.small_max, "Parameter bound of the small corpus")->check(CLI::Range(3, 200));
  audit->callback([&] { action = [&](Emitter &em) { return cmd_audit(aa, g, em); }; });

  BenchArgs ba;
  auto *bench = app.add_subcommand("bench", "Time the streaming engine on one large triple")->fallthrough();
  bench->add_option("--degree", ba.degree, "Target degree, e.g. 5e7");
  bench->add_option("--p", ba.p);
  bench->add_option("--q", ba.q);
  bench->callback([&] { action = [&](Emitter &em) { return cmd_bench(ba, em); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    load_config(g);
    Emitter em(out, !g.no_timestamp);
    return action(em);
  } catch (const UsageError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OutOfDomain &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LimitExceeded &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvariantViolation &e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
}

} // namespace tcyclo::cli
