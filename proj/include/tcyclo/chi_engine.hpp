#pragma once

#include <cstdint>
#include <vector>

#include "tcyclo/modmath.hpp"
#include "tcyclo/poly_oracle.hpp"
#include "tcyclo/triple.hpp"

namespace tcyclo {

/// Precomputed inverses for evaluating the representability indicator chi.
///
/// chi(n) = 1 iff 0 <= n < pqr and n is a nonnegative combination of qr, pr
/// and pq. With n = x_n qr + y_n pr + z_n pq + delta_n pqr, this holds iff
/// f(n) = x_n q + y_n p <= floor(n / r). Note f(n) is congruent to n r* modulo
/// pq but may exceed pq, so the least residue alone does not decide chi.
class ChiContext {
public:
  explicit ChiContext(const Triple &triple);

  const Triple &triple() const { return triple_; }
  Int r_star() const { return r_star_; } // r * r_star = 1 (mod pq)
  Int x_step() const { return x_step_; } // x_1, inverse of qr mod p
  Int y_step() const { return y_step_; } // y_1, inverse of pr mod q
  Int pq() const { return pq_; }
  Int pqr() const { return pqr_; }

  /// x_n q + y_n p, in [0, 2pq).
  Int f(Int n) const;

  /// Representability indicator; 0 for negative n, OutOfDomain for n >= pqr.
  int chi(Int n) const;

private:
  Triple triple_;
  Int pq_;
  Int pqr_;
  Int r_star_;
  Int x_step_;
  Int y_step_;
};

int chi(Int n, const ChiContext &ctx);

/// Independent route: chi via the delta coordinate of crt_decompose.
/// Requires 0 <= n < pqr.
int chi_via_delta(Int n, const Triple &triple);

struct Coefficient {
  Int index;
  Int value;
};

/// Streams a_0 .. a_degree in order using the window formula
///   a_m = a_{m-1} + g(m) - g(m-p),  g(n) = chi(n) - chi(n-q) - chi(n-r) + chi(n-q-r).
///
/// g at the leading edge comes from four cursors (at m, m-q, m-r, m-q-r)
/// stepped together in O(1) without division or multiplication; g at the
/// trailing edge is read back from a ring of the last p values. Memory is O(p)
/// whatever the degree.
class CoeffStream {
public:
  explicit CoeffStream(const Triple &triple);

  Int degree() const { return degree_; }
  bool has_next() const { return next_index_ <= degree_; }
  Coefficient next();

private:
  typedef std::int32_t Lanes32 __attribute__((vector_size(16)));
  typedef std::int64_t Lanes64 __attribute__((vector_size(32)));

  // One lane per cursor at n: fx = x_n q and fy = y_n p, so chi(n) is
  // [fx + fy <= quot]; quot = floor(n / r), rem = n mod r.
  template <class V> struct Bank {
    V fx, fy, quot, rem;
    V step_x, step_y, pq, r;
  };

  template <class V> int step(Bank<V> &bank);
  template <class V> void init(Bank<V> &bank) const;

  Triple triple_;
  Int degree_;
  Int next_index_ = 0;
  Int value_ = 0;
  bool narrow_; // 32-bit lanes suffice
  Bank<Lanes32> bank32_{};
  Bank<Lanes64> bank64_{};
  std::vector<std::int32_t> ring_; // g(m - p + 1) .. g(m), indexed by m mod p
  Int ring_pos_ = 0;
};

/// Calls fn(index, value) for every coefficient in order.
template <class Fn> void for_each_coefficient(const Triple &triple, Fn &&fn) {
  CoeffStream stream(triple);
  while (stream.has_next()) {
    auto c = stream.next();
    fn(c.index, c.value);
  }
}

/// Coefficients via the stream, materialized. For tests and small audits.
CoeffVector stream_coeffs(const Triple &triple);

/// Same result as profile_from_coeffs(q_poly_coeffs(triple)) in O(min(p,q,r))
/// memory. Throws InvariantViolation if the values seen are not contiguous or
/// span more than min(p,q,r) + 1 integers.
HeightProfile profile_stream(const Triple &triple);

} // namespace tcyclo
