#include <doctest.h>

#include <filesystem>

#include "oracles.hpp"
#include "skewsds/errors.hpp"
#include "skewsds/group.hpp"
#include "skewsds/search.hpp"

using namespace skewsds;

namespace {

std::vector<SubsetZv> oracle_skew_a(int v, int lambda) {
  std::vector<SubsetZv> out;
  for (const auto& a : oracle::subsets(v, (v - 1) / 2)) {
    if (!oracle::is_skew(v, a)) continue;
    const auto p = oracle::profile(v, a);
    if (std::all_of(p.begin(), p.end(), [&](int c) { return c <= lambda; })) out.emplace_back(v, a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SubsetZv> oracle_canonical_b(int v, int k, int lambda) {
  std::vector<SubsetZv> out;
  for (const auto& b : oracle::subsets(v, k)) {
    const auto p = oracle::profile(v, b);
    if (!std::all_of(p.begin(), p.end(), [&](int c) { return c <= lambda; })) continue;
    bool least = true;
    for (int s = 1; s < v && least; ++s) least = !(oracle::affine(v, b, 1, s) < b);
    if (least) out.emplace_back(v, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("skewsds-search-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("skew A enumeration examples") {
    CHECK(enumerate_skew_A(3, 0) == std::vector<SubsetZv>{SubsetZv(3, {1}), SubsetZv(3, {2})});
    CHECK(enumerate_skew_A(7, 0).empty());
    const auto a7 = enumerate_skew_A(7, 1);
    CHECK(std::find(a7.begin(), a7.end(), SubsetZv(7, {3, 5, 6})) != a7.end());
    CHECK(enumerate_skew_A(7, 3).size() == 8);
    CHECK_THROWS_AS(enumerate_skew_A(8, 1), ParameterError);
  }

  TEST_CASE("skew A enumeration matches the subset scan") {
    for (int v = 3; v <= 17; v += 2) {
      for (int lambda = 0; lambda <= (v - 1) / 2; ++lambda) {
        REQUIRE(enumerate_skew_A(v, lambda) == oracle_skew_a(v, lambda));
      }
    }
    CHECK(enumerate_skew_A(15, 3, 3) == enumerate_skew_A(15, 3, 1));
  }

  TEST_CASE("canonical B enumeration examples") {
    const auto b13 = enumerate_canonical_B(13, 3, 3);
    CHECK(std::find(b13.begin(), b13.end(), SubsetZv(13, {0, 2, 8})) != b13.end());
    CHECK(enumerate_canonical_B(7, 1, 1) == std::vector<SubsetZv>{SubsetZv(7, {0})});
    CHECK(enumerate_canonical_B(7, 0, 1) == std::vector<SubsetZv>{SubsetZv(7)});
    CHECK_THROWS_AS(enumerate_canonical_B(7, 3, 1), NormalizationError);
  }

  TEST_CASE("canonical B enumeration matches the translate scan") {
    for (int v = 3; v <= 17; v += 2) {
      for (int k = 0; k < (v - 1) / 2; ++k) {
        for (int lambda = 0; lambda <= k; ++lambda) {
          REQUIRE(enumerate_canonical_B(v, k, lambda) == oracle_canonical_b(v, k, lambda));
        }
      }
    }
    CHECK(enumerate_canonical_B(21, 6, 3, 4) == enumerate_canonical_B(21, 6, 3, 1));
  }

  TEST_CASE("profile keys") {
    const auto rec = a_record(SubsetZv(7, {3, 5, 6}), 1);
    CHECK(rec.key.counts == std::vector<int>(6, 0));
    CHECK(pack_profile_key(b_record(SubsetZv(13, {0, 2, 8})).key) == std::string("\0\1\0\0\1\1", 6));
    CHECK_THROWS_AS(pack_profile_key(DifferenceProfile{5, {1, 0, 0, 0}}), ParameterError);
    CHECK_THROWS_AS(a_record(SubsetZv(7, {1, 2, 3}), 1), ParameterError);
  }

  TEST_CASE("match_pairs examples") {
    const SdsParams p3{3, 1, 0, 0};
    const auto a3 = enumerate_skew_A(3, 0);
    const auto b3 = enumerate_canonical_B(3, 0, 0);
    CHECK(match_pairs(a3, b3, p3).size() == 2);

    const SdsParams p7{7, 3, 0, 1};
    const auto m7 = match_pairs(enumerate_skew_A(7, 1), enumerate_canonical_B(7, 0, 1), p7);
    CHECK(m7.size() == oracle::classify(7, 0, 1).raw_pairs);
    for (const auto& m : m7) CHECK(diff_profile(m.a).counts == std::vector<int>(6, 1));

    const SdsParams p15{15, 7, 0, 3};
    CHECK(match_pairs(enumerate_skew_A(15, 3), enumerate_canonical_B(15, 0, 3), p15).empty());
  }

  TEST_CASE("join backends agree") {
    const auto dir = fresh_dir("join");
    for (const auto& p : {SdsParams{13, 6, 3, 3}, SdsParams{21, 10, 6, 6}, SdsParams{19, 9, 1, 4}}) {
      const auto as = enumerate_skew_A(p.v, p.lambda);
      const auto bs = enumerate_canonical_B(p.v, p.k, p.lambda);
      const auto hash = match_pairs(as, bs, p);
      SearchOptions disk;
      disk.backend = JoinBackend::SortMerge;
      disk.cache_dir = dir;
      CHECK(match_pairs(as, bs, p, disk) == hash);
      CHECK_FALSE(hash.empty());
      for (const auto& m : hash) {
        CHECK(is_sds(m));
        CHECK(is_skew(m.a));
      }
    }
    SearchOptions no_dir;
    no_dir.backend = JoinBackend::SortMerge;
    CHECK_THROWS_AS(match_pairs(enumerate_skew_A(7, 1), enumerate_canonical_B(7, 0, 1), SdsParams{7, 3, 0, 1},
                                no_dir),
                    ParameterError);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("classify examples") {
    const auto r13 = classify(SdsParams{13, 6, 3, 3});
    CHECK(r13.status == RunStatus::Completed);
    REQUIRE(r13.count == 1);
    const SdsPair s13{SdsParams{13, 6, 3, 3}, SubsetZv(13, {4, 7, 8, 10, 11, 12}), SubsetZv(13, {0, 2, 8})};
    CHECK(are_equivalent(r13.representatives.front(), s13));
    CHECK(classify(SdsParams{25, 12, 4, 6}).count == 0);
    CHECK(classify(SdsParams{31, 15, 10, 10}).count == 1);
    CHECK_THROWS_AS(classify(SdsParams{13, 6, 6, 5}), NormalizationError);
    CHECK_THROWS_AS(classify(SdsParams{13, 6, 2, 3}), NormalizationError);
  }

  TEST_CASE("classification agrees with the brute-force oracle") {
    for (int v = 3; v <= 13; v += 2) {
      for (int k = 0; k < (v - 1) / 2; ++k) {
        const auto p = derive_params(v, k);
        if (!p) continue;
        CAPTURE(p->to_string());
        const auto want = oracle::classify(v, k, p->lambda);
        const auto got = classify(*p);
        CHECK(got.count == want.classes);
        CHECK(got.stats[2].survivors == want.least_b_pairs);
      }
    }
  }

  TEST_CASE("representatives are valid, skew and pairwise inequivalent") {
    for (const auto& p : {SdsParams{13, 6, 3, 3}, SdsParams{21, 10, 6, 6}, SdsParams{23, 11, 1, 5}}) {
      const auto r = classify(p);
      CHECK(r.count == r.representatives.size());
      CHECK(std::is_sorted(r.representatives.begin(), r.representatives.end()));
      for (std::size_t i = 0; i < r.representatives.size(); ++i) {
        CHECK(is_sds(r.representatives[i]));
        CHECK(is_skew(r.representatives[i]));
        for (std::size_t j = i + 1; j < r.representatives.size(); ++j) {
          CHECK_FALSE(are_equivalent(r.representatives[i], r.representatives[j]));
        }
      }
      // Every raw match belongs to exactly one class.
      for (const auto& m : match_pairs(enumerate_skew_A(p.v, p.lambda), enumerate_canonical_B(p.v, p.k, p.lambda), p)) {
        const auto hits = std::count_if(r.representatives.begin(), r.representatives.end(),
                                        [&](const SdsPair& rep) { return are_equivalent(rep, m); });
        CHECK(hits == 1);
      }
    }
  }

  TEST_CASE("classify is deterministic across worker counts and backends") {
    const auto dir = fresh_dir("classify");
    for (const auto& p : {SdsParams{21, 10, 6, 6}, SdsParams{29, 14, 7, 8}, SdsParams{31, 15, 6, 8}}) {
      const auto one = classify(p);
      for (unsigned jobs : {2u, 3u}) {
        SearchOptions o;
        o.jobs = jobs;
        const auto many = classify(p, o);
        CHECK(many.representatives == one.representatives);
        CHECK(many.stats == one.stats);
        o.backend = JoinBackend::SortMerge;
        o.cache_dir = dir;
        const auto disk = classify(p, o);
        CHECK(disk.representatives == one.representatives);
        CHECK(disk.stats.back() == one.stats.back());
      }
    }
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("stage statistics are monotone") {
    const auto r = classify(SdsParams{31, 15, 10, 10});
    REQUIRE(r.stats.size() == 4);
    CHECK(r.stats[0].stage == "skew-A");
    CHECK(r.stats[1].stage == "canonical-B");
    CHECK(r.stats[2].stage == "join");
    CHECK(r.stats[3].stage == "dedup");
    for (const auto& s : r.stats) CHECK(s.candidates >= s.survivors);
    CHECK(r.stats[3].survivors == r.count);
  }

  TEST_CASE("budget policy") {
    const SdsParams big{43, 21, 15, 15};
    const auto r = classify(big);
    CHECK(r.status == RunStatus::NotAttempted);
    CHECK(r.representatives.empty());
    CHECK(r.estimated_leaves > kDefaultBudget);

    SearchOptions tiny;
    tiny.budget = 10;
    CHECK(classify(SdsParams{13, 6, 3, 3}, tiny).status == RunStatus::NotAttempted);

    SearchOptions lying;
    lying.budget = estimate_leaves(SdsParams{21, 10, 6, 6});
    CHECK(classify(SdsParams{21, 10, 6, 6}, lying).status == RunStatus::Completed);
    CHECK(to_string(RunStatus::NotAttempted) == "not-attempted");
  }

  TEST_CASE("classify_all") {
    CHECK(classify_all(1).empty());
    const auto three = classify_all(3);
    REQUIRE(three.size() == 1);
    CHECK(three.front().params == SdsParams{3, 1, 0, 0});
    CHECK(three.front().count == 1);

    const auto rows = classify_all(31);
    REQUIRE(rows.size() == 21);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& want = oracle::kTable1[i];
      CHECK(rows[i].params == SdsParams{want.v, want.r, want.k, want.lambda});
      CHECK(rows[i].status == RunStatus::Completed);
      CHECK(rows[i].count == static_cast<std::size_t>(want.n));
    }
  }

  TEST_CASE("feasible parameter rows") {
    const auto rows = feasible_params(75);
    REQUIRE(rows.size() == oracle::kTable1.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& t = oracle::kTable1[i];
      CHECK(rows[i] == SdsParams{t.v, t.r, t.k, t.lambda});
    }
    CHECK(feasible_params(2).empty());
  }
}
