#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tcyclo/poly_oracle.hpp"
#include "tcyclo/triple.hpp"

namespace tcyclo {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct TripleReport {
  Triple triple;
  HeightProfile profile;
  std::vector<CheckResult> checks;

  bool passed() const;
};

struct CorpusOptions {
  Int oracle_cap = kDefaultOracleCap;
  bool identities = true; // shift and negation comparisons
  unsigned jobs = 1;
};

/// Pairwise coprime 3 <= p < q < r with p <= pmax, q <= qmax, r <= rmax,
/// in lexicographic order.
std::vector<Triple> enumerate_corpus(Int pmax, Int qmax, Int rmax);

/// Pairwise coprime 3 <= p < q < r with (p-1)(q-1)(r-1) <= max_degree,
/// in lexicographic order.
std::vector<Triple> enumerate_by_degree(Int max_degree);

/// Least r' > max(p, q) with r' = -r (mod pq).
Int negated_partner(const Triple &triple);

/// Runs every invariant that applies to the triple: engine against oracle,
/// end coefficients, self-reciprocity, coefficient sum, contiguity, diameter
/// bounds, shift and negation identities, closed-form prediction for
/// conforming labellings, flatness for r = +-1 (mod pq), and the pinned
/// profile of {3,5,7}.
TripleReport verify_triple(const Triple &triple, const CorpusOptions &opts = {});

struct CorpusSummary {
  Int triples = 0;
  Int passed = 0;
  Int failed = 0;
  std::map<std::string, Int> failures_by_check;
};

/// verify_triple over the corpus on opts.jobs threads. `sink` sees every report
/// in corpus order from the calling thread.
CorpusSummary verify_corpus(const std::vector<Triple> &corpus, const CorpusOptions &opts,
                            const std::function<void(const TripleReport &)> &sink = {});

} // namespace tcyclo
