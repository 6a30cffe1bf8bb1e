#pragma once

#include <optional>
#include <string>

#include "skewsds/subset.hpp"

namespace skewsds {

/// Parameters (v, r, k, lambda) of a 2-{v; r, k; lambda} supplementary
/// difference set. The Gram constants of the associated design are
/// alpha = 4(r + k - lambda) and beta = 2(v - 2(r + k - lambda)).
struct SdsParams {
  int v = 0;
  int r = 0;
  int k = 0;
  int lambda = 0;

  int alpha() const noexcept { return 4 * (r + k - lambda); }
  int beta() const noexcept { return 2 * (v - 2 * (r + k - lambda)); }

  // r(r-1) + k(k-1) = lambda(v-1)
  bool satisfies_counting_identity() const noexcept;
  // v odd, alpha >= 2, beta >= 1, counting identity.
  bool is_feasible() const noexcept;
  // Feasible and r = (v-1)/2 > k.
  bool is_skew_normalized() const noexcept;

  std::string to_string() const;

  friend bool operator==(const SdsParams&, const SdsParams&) = default;
  friend auto operator<=>(const SdsParams&, const SdsParams&) = default;
};

struct SdsPair {
  SdsParams params;
  SubsetZv a;
  SubsetZv b;

  friend bool operator==(const SdsPair&, const SdsPair&) = default;
  // Orders by params, then sorted A-list, then sorted B-list.
  friend std::strong_ordering operator<=>(const SdsPair& x, const SdsPair& y) noexcept;
};

// Builds a pair and checks that moduli and declared sizes agree with the sets.
SdsPair make_pair(const SdsParams& params, SubsetZv a, SubsetZv b);

// True iff P_A + P_B is the constant vector (lambda, ..., lambda).
// Throws ParameterError if |A| != r, |B| != k or the moduli disagree.
bool is_sds(const SdsPair& pair);

// 0 not in A, and i in A implies -i not in A.
bool is_skew(const SubsetZv& a);

// A skew pair is one whose A is skew.
inline bool is_skew(const SdsPair& pair) { return is_skew(pair.a); }

/// Skew-normalized parameters for (v, k): r = (v-1)/2 and lambda from the
/// counting identity. Returns nothing when lambda is not a nonnegative
/// integer or beta < 1. Throws NormalizationError when k >= (v-1)/2 and
/// DomainError when v is even or below 3.
std::optional<SdsParams> derive_params(int v, int k);

}  // namespace skewsds
