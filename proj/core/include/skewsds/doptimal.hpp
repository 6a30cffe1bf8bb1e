#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "skewsds/bigint.hpp"
#include "skewsds/matrices.hpp"
#include "skewsds/sds.hpp"
#include "skewsds/search.hpp"

namespace skewsds {

// (2n - 2)(n - 2)^((n - 2)/2). Throws DomainError unless n = 2 mod 4 and n > 2.
BigInt ehlich_bound(int n);

// Witness a^2 + b^2 = m with 0 <= a <= b, taking the largest such a, or nothing.
std::optional<std::pair<long long, long long>> sum_two_squares(long long m);

/// Feasible parameters of a skew circulant D-optimal design of order n = 2v:
/// r = (v-1)/2 and (v - 2r)^2 + (v - 2k)^2 = 2n - 2 with 0 <= k < r.
struct DoptParams {
  int n = 0;
  int v = 0;
  int r = 0;
  int k = 0;
  BigInt bound;
  bool two_squares_ok = false;

  // The induced SDS parameters; lambda = r + k - (v-1)/2 = k.
  SdsParams sds_params() const { return SdsParams{v, r, k, k}; }
};

std::vector<DoptParams> feasible_dopt_params(int n_max);

struct CertifiedDesign {
  SdsPair pair;
  DesignMatrix design;
  GramCertificate gram;      // (alpha, beta) = (2v - 2, 2)
  GramCertificate c1c3;
  BigInt determinant;        // signed
  BigInt bound;
  bool meets_bound = false;  // |det| == bound
};

/// Builds X(R1, R2) from a D-optimal-class SDS, checks R1R1^T + R2R2^T =
/// (2v - 2)I + 2J, and certifies |det| against the Ehlich bound.
/// Throws DomainError when lambda != r + k - (v-1)/2 and ParameterError
/// when the Gram identity fails.
CertifiedDesign sds_to_dopt(const SdsPair& pair);

struct DoptClassification {
  DoptParams params;
  ClassificationResult sds;
  std::vector<CertifiedDesign> designs;
};

// Throws DomainError if n is not among feasible_dopt_params(n).
DoptClassification classify_dopt(int n, const SearchOptions& options = {});

}  // namespace skewsds
