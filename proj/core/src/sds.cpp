#include "skewsds/sds.hpp"

#include <sstream>

#include "skewsds/errors.hpp"

namespace skewsds {

bool SdsParams::satisfies_counting_identity() const noexcept {
  return r * (r - 1) + k * (k - 1) == lambda * (v - 1);
}

bool SdsParams::is_feasible() const noexcept {
  return v >= 3 && v % 2 == 1 && r >= 0 && k >= 0 && r <= v && k <= v && lambda >= 0 &&
         satisfies_counting_identity() && alpha() >= 2 && beta() >= 1;
}

bool SdsParams::is_skew_normalized() const noexcept {
  return is_feasible() && r == (v - 1) / 2 && k < r;
}

std::string SdsParams::to_string() const {
  std::ostringstream os;
  os << '(' << v << ", " << r << ", " << k << ", " << lambda << ')';
  return os.str();
}

std::strong_ordering operator<=>(const SdsPair& x, const SdsPair& y) noexcept {
  if (auto c = x.params <=> y.params; c != 0) return c;
  if (auto c = x.a <=> y.a; c != 0) return c;
  return x.b <=> y.b;
}

SdsPair make_pair(const SdsParams& params, SubsetZv a, SubsetZv b) {
  if (a.modulus() != params.v || b.modulus() != params.v) {
    throw ParameterError("set modulus differs from v = " + std::to_string(params.v));
  }
  if (a.size() != params.r || b.size() != params.k) {
    throw ParameterError("declared sizes (r, k) = (" + std::to_string(params.r) + ", " +
                         std::to_string(params.k) + ") but |A| = " + std::to_string(a.size()) +
                         ", |B| = " + std::to_string(b.size()));
  }
  return SdsPair{params, std::move(a), std::move(b)};
}

bool is_sds(const SdsPair& pair) {
  const auto& p = pair.params;
  if (pair.a.modulus() != p.v || pair.b.modulus() != p.v) {
    throw ParameterError("set modulus differs from v = " + std::to_string(p.v));
  }
  if (pair.a.size() != p.r || pair.b.size() != p.k) {
    throw ParameterError("pair sizes do not match declared (r, k) " + p.to_string());
  }
  for (int i = 1; i < p.v; ++i) {
    if (difference_count(pair.a, i) + difference_count(pair.b, i) != p.lambda) return false;
  }
  return true;
}

bool is_skew(const SubsetZv& a) {
  if (a.contains(0)) return false;
  // A and -A must be disjoint.
  return (a.mask() & a.negated().mask()) == 0;
}

std::optional<SdsParams> derive_params(int v, int k) {
  if (v < 3 || v % 2 == 0) {
    throw DomainError("v must be odd and at least 3, got " + std::to_string(v));
  }
  const int r = (v - 1) / 2;
  if (k >= r || k < 0) {
    throw NormalizationError("need 0 <= k < (v-1)/2 = " + std::to_string(r) + ", got k = " +
                             std::to_string(k));
  }
  const int numerator = r * (r - 1) + k * (k - 1);
  if (numerator % (v - 1) != 0) return std::nullopt;
  SdsParams p{v, r, k, numerator / (v - 1)};
  if (p.lambda < 0 || p.beta() < 1) return std::nullopt;
  return p;
}

}  // namespace skewsds
