#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "skewsds/constructions.hpp"
#include "skewsds/group.hpp"
#include "skewsds/matrices.hpp"
#include "skewsds/search.hpp"

using namespace skewsds;

namespace {

std::vector<SdsPair> known_pairs() {
  std::vector<SdsPair> out;
  for (int v = 3; v <= 31; v += 2) {
    for (int k = 0; k < (v - 1) / 2; ++k) {
      const auto p = derive_params(v, k);
      if (!p) continue;
      const auto r = classify(*p);
      out.insert(out.end(), r.representatives.begin(), r.representatives.end());
    }
  }
  return out;
}

GroupElement random_element(std::mt19937_64& rng, int v) {
  const auto us = units(v);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  return GroupElement{v, us[static_cast<std::size_t>(pick(static_cast<int>(us.size())))],
                      pick(2) ? 1 : -1, pick(2) ? 1 : -1, pick(v), pick(v)};
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("profile palindrome and mass on 10^4 random subsets") {
    std::mt19937_64 rng(20240101);
    for (int trial = 0; trial < 10000; ++trial) {
      const int v = 3 + static_cast<int>(rng() % 125);
      const double density = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const SubsetZv x(v, oracle::random_subset(rng, v, density));
      const auto p = diff_profile(x);
      REQUIRE(p.is_palindromic());
      REQUIRE(p.total() == x.size() * (x.size() - 1));
      for (int c : p.counts) REQUIRE(c <= x.size());
    }
  }

  TEST_CASE("Gram identity holds exactly for SDS pairs, 1000 pairs per v") {
    std::mt19937_64 rng(77);
    for (int v : {3, 5, 7, 9, 11}) {
      int positives = 0;
      for (int trial = 0; trial < 1000; ++trial) {
        const int r = static_cast<int>(rng() % static_cast<std::uint64_t>(v + 1));
        const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(v + 1));
        const int lambda = (r * (r - 1) + k * (k - 1)) / (v - 1);
        auto sample = [&](int size) {
          auto all = oracle::subsets(v, size);
          return SubsetZv(v, all[rng() % all.size()]);
        };
        const SdsPair p{SdsParams{v, r, k, lambda}, sample(r), sample(k)};
        const bool sds = is_sds(p);
        positives += sds;
        REQUIRE(verify_gram_pair(p.a, p.b, p.params).holds == sds);
      }
      CAPTURE(v);
      CHECK(positives > 0);
    }
  }

  TEST_CASE("group action laws and canonical forms on 10^3 samples") {
    const auto pairs = known_pairs();
    REQUIRE(pairs.size() == 16);
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto& p = pairs[rng() % pairs.size()];
      const int v = p.params.v;
      const auto g1 = random_element(rng, v);
      const auto g2 = random_element(rng, v);
      const auto img = apply_group(g1, p);
      REQUIRE(is_sds(img));
      REQUIRE(apply_group(g2, img) == apply_group(compose(g2, g1), p));
      const auto c = canonical_form(p);
      REQUIRE(canonical_form(img) == c);
      REQUIRE(canonical_form(c) == c);
      REQUIRE(are_equivalent(p, img));
    }
  }

  TEST_CASE("classification agrees with brute force for every feasible v <= 9") {
    int rows = 0;
    for (int v = 3; v <= 9; v += 2) {
      for (int k = 0; k < (v - 1) / 2; ++k) {
        const auto p = derive_params(v, k);
        if (!p) continue;
        ++rows;
        CHECK(classify(*p).count == oracle::classify(v, k, p->lambda).classes);
      }
    }
    CHECK(rows == 3);
  }

  TEST_CASE("determinant agrees with cofactor expansion on 10^3 random +-1 matrices") {
    std::mt19937_64 rng(9001);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 1 + trial % 7;
      IntMatrix m(n, n);
      oracle::Matrix rows(n, std::vector<long long>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j) = (rng() & 1) ? 1 : -1;
      }
      REQUIRE(exact_determinant(m) == oracle::cofactor_det(rows));
    }
  }

  TEST_CASE("det(M M) = det(M)^2") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + trial % 9;
      IntMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long long>(rng() % 11) - 5;
      }
      const BigInt d = exact_determinant(m);
      REQUIRE(exact_determinant(m * m) == d * d);
    }
  }

  TEST_CASE("circulants commute") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
      const int v = 3 + static_cast<int>(rng() % 20);
      const auto r1 = CirculantMatrix(subset_to_row(SubsetZv(v, oracle::random_subset(rng, v)))).dense();
      const auto r2 = CirculantMatrix(subset_to_row(SubsetZv(v, oracle::random_subset(rng, v)))).dense();
      REQUIRE(r1 * r2 == r2 * r1);
    }
  }

  TEST_CASE("alpha + beta = 2v whenever a certificate holds") {
    for (const auto& p : known_pairs()) {
      const auto g = verify_gram_pair(p.a, p.b, p.params);
      const auto c = verify_c1c3(build_design(p.a, p.b));
      REQUIRE(g.holds);
      REQUIRE(c.holds);
      CHECK(g.alpha + g.beta == 2 * p.params.v);
      CHECK(c.alpha == g.alpha);
      CHECK(c.beta == g.beta);
      CHECK(design_is_skew(build_design(p.a, p.b)));
    }
  }
}
