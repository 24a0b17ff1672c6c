#include "tcyclo/triple.hpp"

#include <algorithm>
#include <array>

#include "tcyclo/errors.hpp"

namespace tcyclo {

std::string Triple::validate(Int p, Int q, Int r) {
  if (p < 3 || q < 3 || r < 3)
    return "every parameter must be >= 3";
  if (gcd(p, q) != 1 || gcd(q, r) != 1 || gcd(p, r) != 1)
    return "parameters must be pairwise coprime";
  const Wide pq = static_cast<Wide>(p) * q;
  if (pq > kMaxTripleProduct || pq * r > kMaxTripleProduct)
    return "p*q*r exceeds 2^62";
  return {};
}

Triple Triple::make(Int p, Int q, Int r) {
  if (auto why = validate(p, q, r); !why.empty())
    throw InvalidArgument("invalid triple {" + std::to_string(p) + "," + std::to_string(q) + "," +
                          std::to_string(r) + "}: " + why);
  return Triple{p, q, r};
}

Int Triple::min() const { return std::min({p, q, r}); }

Triple Triple::sorted() const {
  std::array<Int, 3> v{p, q, r};
  std::sort(v.begin(), v.end());
  return Triple{v[0], v[1], v[2]};
}

std::string Triple::to_string() const {
  return "{" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + "}";
}

} // namespace tcyclo
