#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcyclo/chi_engine.hpp"
#include "tcyclo/theorem3.hpp"
#include "tcyclo/triple.hpp"

namespace tcyclo {

enum class LemmaId { L5, L6, L8, L9, L10, L11, L12, L13, L14, completion };

std::string to_string(LemmaId id);
std::optional<LemmaId> parse_lemma_id(std::string_view text);
std::vector<LemmaId> all_lemma_ids();

/// Lemmas that need r t = 1 (mod pq), q > p^2 and r > pq.
bool needs_conforming(LemmaId id);

/// Coefficients and chi for one triple, plus the parameters of the conforming
/// family when the triple belongs to it.
class AuditContext {
public:
  explicit AuditContext(const Triple &triple);

  const Triple &triple() const { return triple_; }
  const ChiContext &chi_context() const { return chi_; }
  Int degree() const { return degree_; }

  /// a_m, and 0 for m < 0.
  Int a(Int m) const { return m < 0 ? 0 : coeffs_[static_cast<std::size_t>(m)]; }
  /// chi(n), 0 for n < 0.
  int chi(Int n) const { return chi_.chi(n); }

  const std::vector<Int> &coeffs() const { return coeffs_; }

  /// Set when r t = 1 (mod pq), q > p^2 and r > pq, with t = q mod p.
  const std::optional<TernaryParams> &params() const { return params_; }

private:
  Triple triple_;
  ChiContext chi_;
  Int degree_;
  std::vector<Int> coeffs_;
  std::optional<TernaryParams> params_;
};

/// Residue data for one sign choice Q = eps_q q, R = eps_r r.
struct SignedParams {
  int eps_q = 1;
  int eps_r = 1;
  Int Q = 0;
  Int R = 0;
  Int x_q = 0;       // x coordinate of Q
  Int x_r = 0;       // x coordinate of R
  Int x_q_prime = 0; // p - x_q
  Int x_r_prime = 0; // p - x_r
  Int y_r = 0;       // y coordinate of R
  Int y_r_prime = 0; // q - y_r
  Int eta_r = 0;     // eta for R = r, t - eta for R = -r
};

/// Requires ctx.params().
SignedParams signed_params(const AuditContext &ctx, int eps_q, int eps_r);

struct SumSpec {
  int q_sign = 1;
  int r_sign = 1;
  Int M = 0;
};

/// S(Q, R; M) = sum over M - p < n <= M of chi(n) - chi(n+Q) - chi(n+R) + chi(n+Q+R).
/// Requires M <= degree.
Int s_sum(const AuditContext &ctx, const SumSpec &args);

struct WindowMultiples {
  Int count_q = 0;
  Int count_r = 0;
};

/// Distinct multiples of q and of r in the union of the four windows
/// (m-p, m], (m-q-p, m-q], (m-r-p, m-r], (m-q-r-p, m-q-r].
WindowMultiples count_window_multiples(const Triple &triple, Int m);

/// One member (Q, R; M) of the extremal set: the window (M-p, M] holds a
/// multiple l of r with chi(l) = 1, chi(l+R) = 0, and a multiple l' of q lies
/// either in (M-p, M] with chi(l') = 1, chi(l'+Q) = 0 (case 1 when l' = l,
/// case 2 otherwise) or in (M+Q+R-p, M+Q+R] with chi(l') = 1, chi(l'-Q) = 0
/// (case 3).
struct MInstance {
  int eps_q = 1;
  int eps_r = 1;
  Int M = 0;
  Int l = 0;
  Int l_prime = 0;
  int case_id = 0;
  Int S = 0;
};

/// Every member with 0 <= M <= degree for one sign choice, by direct chi tests.
std::vector<MInstance> enumerate_m_set(const AuditContext &ctx, int eps_q, int eps_r);

/// Case-3 members generated from the (a, b) parametrization
///   l = a q r + (theta b + eta_R - t) p r,  l' = l + Q + R + p + b - x_R,
///   0 <= a < x'_R,  max(1, x'_Q - a) <= b < x_R,  l + p + b - x_R <= M < l + p,
/// restricted to M <= degree. S is filled in.
std::vector<MInstance> parametrized_case3(const AuditContext &ctx, int eps_q, int eps_r);

struct Counterexample {
  Triple triple;
  std::string where; // index or (Q, R; M) description
  Int expected = 0;
  Int got = 0;
};

struct AuditReport {
  std::string lemma_id;
  Triple triple;
  Int instances_checked = 0;
  bool applicable = true;
  bool passed = true;
  std::optional<Counterexample> first_counterexample;
  std::vector<std::string> notes;
};

/// Exhaustive check of one lemma on one triple. Lemmas in needs_conforming()
/// throw InvalidArgument unless ctx.params() is set; the case lemmas (L11-L14,
/// completion) report applicable = false when t = 1.
AuditReport audit_lemma(const AuditContext &ctx, LemmaId id);
AuditReport audit_lemma(const Triple &triple, LemmaId id);

/// r replaced by the least r + k pq exceeding pq.
Triple shift_above_pq(const Triple &triple);

/// q = least prime = t (mod p) above p^2; r = least solution of r t = 1 (mod pq)
/// above pq.
Triple conforming_audit_triple(Int p, Int t);

/// conforming_audit_triple for every t in [1, p-1] coprime to p.
std::vector<Triple> conforming_audit_corpus(Int p);

/// F(n) = prod_{i=1..n} (1 + i n) has a prime factor above 2n + 1.
/// Requires 4 <= n <= 30.
bool product_has_large_prime(Int n);

} // namespace tcyclo
