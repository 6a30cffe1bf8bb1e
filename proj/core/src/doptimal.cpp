#include "skewsds/doptimal.hpp"

#include <boost/multiprecision/integer.hpp>

#include <stdexcept>

#include "skewsds/errors.hpp"

namespace skewsds {

namespace {

std::optional<long long> exact_sqrt(long long m) {
  if (m < 0) return std::nullopt;
  const auto s = static_cast<long long>(boost::multiprecision::sqrt(BigInt(m)));
  if (s * s == m) return s;
  return std::nullopt;
}

}  // namespace

BigInt ehlich_bound(int n) {
  if (n <= 2 || n % 4 != 2) {
    throw DomainError("Ehlich bound needs n = 2 mod 4 and n > 2, got " + std::to_string(n));
  }
  return BigInt(2 * n - 2) * boost::multiprecision::pow(BigInt(n - 2), static_cast<unsigned>((n - 2) / 2));
}

std::optional<std::pair<long long, long long>> sum_two_squares(long long m) {
  if (m < 0) return std::nullopt;
  // Most balanced witness first: a runs down from floor(sqrt(m / 2)).
  long long a = static_cast<long long>(boost::multiprecision::sqrt(BigInt(m / 2)));
  while (2 * (a + 1) * (a + 1) <= m) ++a;
  for (; a >= 0; --a) {
    if (auto b = exact_sqrt(m - a * a)) return std::pair{a, *b};
  }
  return std::nullopt;
}

std::vector<DoptParams> feasible_dopt_params(int n_max) {
  std::vector<DoptParams> out;
  for (int n = 6; n <= n_max; n += 4) {
    const int v = n / 2;
    const int r = (v - 1) / 2;
    // (v - 2r)^2 = 1, so (v - 2k)^2 = 2n - 3 = 4v - 3; keep the root with k < r.
    const auto s = exact_sqrt(4LL * v - 3);
    if (!s || (v - *s) % 2 != 0) continue;
    const int k = static_cast<int>((v - *s) / 2);
    if (k < 0 || k >= r) continue;
    DoptParams p;
    p.n = n;
    p.v = v;
    p.r = r;
    p.k = k;
    p.bound = ehlich_bound(n);
    p.two_squares_ok = sum_two_squares(2LL * n - 2).has_value();
    out.push_back(std::move(p));
  }
  return out;
}

CertifiedDesign sds_to_dopt(const SdsPair& pair) {
  const auto& p = pair.params;
  if (p.lambda != p.r + p.k - (p.v - 1) / 2) {
    throw DomainError("pair with parameters " + p.to_string() +
                      " is not D-optimal-class: lambda != r + k - (v-1)/2");
  }
  auto gram = verify_gram_pair(pair.a, pair.b, p);
  if (!gram.holds || gram.alpha != 2LL * p.v - 2 || gram.beta != 2) {
    throw ParameterError("R1 R1^T + R2 R2^T != (2v - 2)I + 2J for " + p.to_string());
  }
  auto design = build_design(pair.a, pair.b);
  const IntMatrix dense = design.dense();
  CertifiedDesign out{pair, design, gram, GramCertificate{}, exact_determinant(dense),
                      ehlich_bound(design.order()), false};
  // C1-C3 only applies to skew designs; record it when it does.
  if (design_is_skew(dense)) out.c1c3 = verify_c1c3(dense);
  out.meets_bound = abs(out.determinant) == out.bound;
  return out;
}

DoptClassification classify_dopt(int n, const SearchOptions& options) {
  for (auto& p : feasible_dopt_params(n)) {
    if (p.n != n) continue;
    const auto sds = derive_params(p.v, p.k);
    if (!sds || sds->lambda != p.k) {
      throw std::logic_error("derive_params disagrees with the D-optimal parameters at n = " +
                             std::to_string(n));
    }
    DoptClassification out{p, classify(*sds, options), {}};
    for (const auto& rep : out.sds.representatives) out.designs.push_back(sds_to_dopt(rep));
    return out;
  }
  throw DomainError("n = " + std::to_string(n) + " has no feasible skew circulant D-optimal parameters");
}

}  // namespace skewsds
