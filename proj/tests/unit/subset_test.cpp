#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "skewsds/errors.hpp"
#include "skewsds/subset.hpp"

using namespace skewsds;

TEST_SUITE("subset") {
  TEST_CASE("construction keeps set semantics; insert reduces residues") {
    CHECK_THROWS_AS(SubsetZv(7, {3, 7}), ParameterError);
    CHECK_THROWS_AS(SubsetZv(7, {-1}), ParameterError);
    SubsetZv x(7, {3, 3});
    x.insert(-1);
    CHECK(x.elements() == std::vector<int>{3, 6});
    CHECK(x.size() == 2);
    CHECK(x.contains(6));
    CHECK_FALSE(x.contains(0));
    x.insert(14);
    x.erase(-4);
    CHECK(x.elements() == std::vector<int>{0, 6});
  }

  TEST_CASE("modulus limits") {
    CHECK_THROWS_AS(SubsetZv(0), ParameterError);
    CHECK_THROWS_AS(SubsetZv(kMaxModulus + 1), ParameterError);
    SubsetZv big(kMaxModulus, {0, 64, 126});
    CHECK(big.size() == 3);
    CHECK(big.translated(1).elements() == std::vector<int>{0, 1, 65});
  }

  TEST_CASE("from_mask rejects bits beyond v") {
    CHECK_THROWS_AS(SubsetZv::from_mask(5, Mask{1} << 5), ParameterError);
    const auto x = SubsetZv::from_mask(5, 0b10110);
    CHECK(x.elements() == std::vector<int>{1, 2, 4});
    CHECK(SubsetZv::from_words(70, x.words()) != x);
    CHECK(SubsetZv::from_words(5, x.words()) == x);
  }

  TEST_CASE("affine maps") {
    const SubsetZv a(7, {3, 5, 6});
    CHECK(a.negated().elements() == std::vector<int>{1, 2, 4});
    CHECK(a.scaled(2).elements() == std::vector<int>{3, 5, 6});
    CHECK(a.translated(1).elements() == std::vector<int>{0, 4, 6});
    CHECK(a.complement().elements() == std::vector<int>{0, 1, 2, 4});
  }

  TEST_CASE("least translate contains zero and is least") {
    const SubsetZv b(13, {2, 4, 10});
    const auto t = b.least_translate();
    CHECK(t.elements() == std::vector<int>{0, 2, 8});
    for (int s = 0; s < 13; ++s) CHECK(t <= b.translated(s));
    CHECK(SubsetZv(13).least_translate().empty());
  }

  TEST_CASE("lexicographic order on sorted sequences") {
    CHECK(SubsetZv(7, {0, 4}) < SubsetZv(7, {1, 2}));
    CHECK(SubsetZv(7, {0, 2, 6}) < SubsetZv(7, {0, 3, 4}));
    CHECK(SubsetZv(7, {0, 1}) < SubsetZv(7, {0, 1, 2}));
    CHECK(SubsetZv(7) < SubsetZv(7, {0}));
    CHECK(SubsetZv(5, {4}) < SubsetZv(7, {0}));
  }

  TEST_CASE("lex order agrees with vector comparison") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
      const int v = 3 + static_cast<int>(rng() % 120);
      const auto xs = oracle::random_subset(rng, v);
      const auto ys = oracle::random_subset(rng, v);
      const SubsetZv x(v, xs);
      const SubsetZv y(v, ys);
      CHECK((x < y) == (xs < ys));
      CHECK((x == y) == (xs == ys));
    }
  }

  TEST_CASE("difference profile examples") {
    CHECK(diff_profile(SubsetZv(7, {3, 5, 6})).counts == std::vector<int>(6, 1));
    CHECK(diff_profile(SubsetZv(13)).counts == std::vector<int>(12, 0));
    const auto p = diff_profile(SubsetZv(13, {0, 2, 8}));
    for (int i = 1; i <= 12; ++i) {
      const bool hit = i == 2 || i == 5 || i == 6 || i == 7 || i == 8 || i == 11;
      CHECK(p[i] == (hit ? 1 : 0));
    }
    CHECK(difference_count(SubsetZv(13, {0, 2, 8}), -2) == 1);
  }

  TEST_CASE("difference profile matches the v^2 scan") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
      const int v = 3 + static_cast<int>(rng() % 125);
      const auto xs = oracle::random_subset(rng, v, 0.3);
      CHECK(diff_profile(SubsetZv(v, xs)).counts == oracle::profile(v, xs));
    }
  }
}
