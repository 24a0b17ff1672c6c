#include "tcyclo/chi_engine.hpp"

#include <algorithm>
#include <string>

#include "tcyclo/errors.hpp"

namespace tcyclo {

namespace {

Int floor_div(Int n, Int d) {
  Int q = n / d;
  return (n % d != 0 && n < 0) ? q - 1 : q;
}

Int scaled_residue(Int n, Int step, Int m) {
  if (m < (Int{1} << 31))
    return lnr(n, m) * step % m;
  return static_cast<Int>(static_cast<Wide>(lnr(n, m)) * step % m);
}

} // namespace

ChiContext::ChiContext(const Triple &triple)
    : triple_(Triple::make(triple.p, triple.q, triple.r)), pq_(triple.p * triple.q),
      pqr_(triple.p * triple.q * triple.r), r_star_(mod_inverse(triple.r, pq_)),
      x_step_(mod_inverse(triple.q * triple.r, triple.p)),
      y_step_(mod_inverse(triple.p * triple.r, triple.q)) {}

Int ChiContext::f(Int n) const {
  return scaled_residue(n, x_step_, triple_.p) * triple_.q + scaled_residue(n, y_step_, triple_.q) * triple_.p;
}

int ChiContext::chi(Int n) const {
  if (n >= pqr_)
    throw OutOfDomain("chi: argument " + std::to_string(n) + " >= pqr = " + std::to_string(pqr_));
  if (n < 0)
    return 0;
  return f(n) <= n / triple_.r ? 1 : 0;
}

int chi(Int n, const ChiContext &ctx) { return ctx.chi(n); }

int chi_via_delta(Int n, const Triple &triple) {
  if (n < 0 || n >= triple.product())
    throw OutOfDomain("chi_via_delta: argument " + std::to_string(n) + " outside [0, pqr)");
  return crt_decompose(n, triple).delta == 0 ? 1 : 0;
}

template <class V> void CoeffStream::init(Bank<V> &bank) const {
  const Int p = triple_.p, q = triple_.q, r = triple_.r;
  const Int x_step = mod_inverse(q * r, p);
  const Int y_step = mod_inverse(p * r, q);
  const Int offsets[4] = {0, -q, -r, -q - r};
  for (int k = 0; k < 4; ++k) {
    const Int n = offsets[k];
    const Int quot = floor_div(n, r);
    bank.fx[k] = scaled_residue(n, x_step, p) * q;
    bank.fy[k] = scaled_residue(n, y_step, q) * p;
    bank.quot[k] = quot;
    bank.rem[k] = n - quot * r;
    bank.step_x[k] = x_step * q;
    bank.step_y[k] = y_step * p;
    bank.pq[k] = p * q;
    bank.r[k] = r;
  }
}

CoeffStream::CoeffStream(const Triple &triple)
    : triple_(Triple::make(triple.p, triple.q, triple.r)), degree_(triple_.degree()),
      narrow_(2 * triple_.p * triple_.q < (Int{1} << 31) && triple_.r < (Int{1} << 31)),
      ring_(static_cast<std::size_t>(triple_.p), 0) {
  if (narrow_)
    init(bank32_);
  else
    init(bank64_);
}

template <class V> int CoeffStream::step(Bank<V> &b) {
  // Comparisons give -1 for true. Negative n has quot < 0 <= fx + fy, so the
  // cursors behind 0 read chi = 0 without a special case.
  const V chi = (b.fx + b.fy <= b.quot);
  const int g = static_cast<int>(-chi[0] + chi[1] + chi[2] - chi[3]);
  b.fx += b.step_x;
  b.fx -= (b.fx >= b.pq) & b.pq;
  b.fy += b.step_y;
  b.fy -= (b.fy >= b.pq) & b.pq;
  b.rem += 1;
  const V carry = (b.rem == b.r);
  b.rem &= ~carry;
  b.quot -= carry;
  return g;
}

Coefficient CoeffStream::next() {
  const int g = narrow_ ? step(bank32_) : step(bank64_);
  auto &slot = ring_[static_cast<std::size_t>(ring_pos_)];
  value_ += g - slot;
  slot = g;
  ring_pos_ = ring_pos_ + 1 == triple_.p ? 0 : ring_pos_ + 1;
  return Coefficient{next_index_++, value_};
}

CoeffVector stream_coeffs(const Triple &triple) {
  CoeffVector out;
  out.coeffs.reserve(static_cast<std::size_t>(triple.degree() + 1));
  for_each_coefficient(triple, [&](Int, Int v) { out.coeffs.push_back(v); });
  return out;
}

HeightProfile profile_stream(const Triple &triple) {
  CoeffStream stream(triple);
  const Int width = triple.min() + 1;
  // Values span at most min(p,q,r) + 1 consecutive integers including 0, so
  // |v| < width and v mod width identifies v once the span is known to fit.
  std::vector<char> present(static_cast<std::size_t>(width), 0);
  Int lo = 0, hi = 0;
  bool first = true;
  while (stream.has_next()) {
    const Int v = stream.next().value;
    if (first) {
      lo = hi = v;
      first = false;
    } else if (v < lo || v > hi) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      if (hi - lo >= width)
        throw InvariantViolation("profile_stream: diameter exceeds min(p,q,r) for " + triple.to_string());
    }
    if (v >= width || v <= -width)
      throw InvariantViolation("profile_stream: coefficient " + std::to_string(v) + " exceeds min(p,q,r) for " +
                               triple.to_string());
    present[static_cast<std::size_t>(v < 0 ? v + width : v)] = 1;
  }
  for (Int v = lo; v <= hi; ++v) {
    if (!present[static_cast<std::size_t>(lnr(v, width))])
      throw InvariantViolation("profile_stream: coefficient set of " + triple.to_string() +
                               " is not contiguous, missing " + std::to_string(v));
  }
  return profile_from_extremes(stream.degree(), lo, hi);
}

} // namespace tcyclo
