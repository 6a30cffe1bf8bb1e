#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "skewsds/sds.hpp"
#include "skewsds/subset.hpp"

namespace skewsds {

// Default leaf budget. Covers every row with v <= 41 and most of v <= 55,
// but not (43,21,15,15) or the larger-k rows beyond.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 28;

enum class JoinBackend { Hash, SortMerge };

struct SearchOptions {
  unsigned jobs = 1;
  std::uint64_t budget = kDefaultBudget;
  JoinBackend backend = JoinBackend::Hash;
  // Record files for the sort-merge backend live here; required for it.
  std::filesystem::path cache_dir;
};

struct ProfileKeyedRecord {
  // For A-records (lambda,...,lambda) - P_A, for B-records P_B.
  DifferenceProfile key;
  SubsetZv payload;
};

ProfileKeyedRecord a_record(const SubsetZv& a, int lambda);
ProfileKeyedRecord b_record(const SubsetZv& b);

// One byte per difference class, i = 1..(v-1)/2. Throws ParameterError if
// the profile is not palindromic or an entry does not fit in a byte.
std::string pack_profile_key(const DifferenceProfile& profile);

struct StageStats {
  std::string stage;
  std::uint64_t candidates = 0;  // size of the space the stage draws from (saturating)
  std::uint64_t visited = 0;     // search-tree nodes or probes actually touched
  std::uint64_t survivors = 0;

  friend bool operator==(const StageStats&, const StageStats&) = default;
};

enum class RunStatus { Completed, NotAttempted, BudgetExceeded };

std::string to_string(RunStatus status);

struct ClassificationResult {
  SdsParams params;
  RunStatus status = RunStatus::Completed;
  std::size_t count = 0;
  // One skew pair per class: the least matched pair, in increasing order.
  std::vector<SdsPair> representatives;
  std::vector<StageStats> stats;
  std::uint64_t estimated_leaves = 0;
  double wall_seconds = 0.0;
};

/// Skew r-subsets A = A' u {v - j : j in {1..r} \ A'}, r = (v-1)/2, with
/// P_A(i) <= lambda for all i. Returned in increasing order.
std::vector<SubsetZv> enumerate_skew_A(int v, int lambda, unsigned jobs = 1);

/// k-subsets that are least among their v translates and have
/// P_B(i) <= lambda for all i, in increasing order.
std::vector<SubsetZv> enumerate_canonical_B(int v, int k, int lambda, unsigned jobs = 1);

/// All (A, B) with (lambda,...,lambda) - P_A = P_B, in increasing order.
/// The sort-merge backend writes record files under options.cache_dir.
std::vector<SdsPair> match_pairs(std::span<const SubsetZv> as, std::span<const SubsetZv> bs,
                                 const SdsParams& params, const SearchOptions& options = {});

// Upper bound on DFS leaves classify will reach: 2^r skew candidates plus the
// number of binary necklaces with k ones and v - k zeros. Saturates at 2^64-1.
std::uint64_t estimate_leaves(const SdsParams& params);

/// Full pipeline: A-enumeration, B-enumeration with streaming join, and
/// orbit deduplication. Throws NormalizationError for parameters that are
/// not skew-normalized feasible parameters.
ClassificationResult classify(const SdsParams& params, const SearchOptions& options = {});

/// derive_params over every odd v in [3, v_max] and k in [0, (v-1)/2), then
/// classify. Rows over budget come back NotAttempted.
std::vector<ClassificationResult> classify_all(int v_max, const SearchOptions& options = {});

// All feasible skew-normalized parameters with v <= v_max, in (v, k) order.
std::vector<SdsParams> feasible_params(int v_max);

}  // namespace skewsds
