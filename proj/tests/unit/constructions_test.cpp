#include <doctest.h>

#include "oracles.hpp"
#include "skewsds/constructions.hpp"
#include "skewsds/errors.hpp"
#include "skewsds/group.hpp"
#include "skewsds/matrices.hpp"
#include "skewsds/search.hpp"

using namespace skewsds;

TEST_SUITE("constructions") {
  TEST_CASE("primality") {
    std::vector<int> primes;
    for (int n = -3; n < 60; ++n) {
      if (is_prime(n)) primes.push_back(n);
    }
    CHECK(primes == std::vector<int>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59});
    CHECK(is_prime(999983));
    CHECK_FALSE(is_prime(999981));
  }

  TEST_CASE("difference sets") {
    CHECK(is_difference_set(SubsetZv(7, {3, 5, 6}), 3, 1));
    CHECK(is_difference_set(SubsetZv(7, {1, 2, 4}), 3, 1));
    CHECK_FALSE(is_difference_set(SubsetZv(7, {0, 1, 2}), 3, 1));
    CHECK_THROWS_AS(is_difference_set(SubsetZv(7, {0, 1}), 3, 1), ParameterError);
  }

  TEST_CASE("quadratic residues") {
    CHECK(quadratic_residues(7).elements() == std::vector<int>{1, 2, 4});
    CHECK(quadratic_nonresidues(7).elements() == std::vector<int>{3, 5, 6});
    CHECK(quadratic_nonresidues(11).elements() == std::vector<int>{2, 6, 7, 8, 10});
  }

  TEST_CASE("QR construction examples") {
    const auto q7 = qr_skew_sds(7, 0);
    CHECK(q7.a.elements() == std::vector<int>{3, 5, 6});
    CHECK(q7.b.empty());
    CHECK(q7.params == SdsParams{7, 3, 0, 1});
    CHECK(qr_skew_sds(3, 0).a.elements() == std::vector<int>{2});
    const auto q11 = qr_skew_sds(11, 1);
    CHECK(q11.a.elements() == std::vector<int>{2, 6, 7, 8, 10});
    CHECK(q11.b.elements() == std::vector<int>{0});
    CHECK(is_sds(q11));
    CHECK_THROWS_AS(qr_skew_sds(13, 0), DomainError);
    CHECK_THROWS_AS(qr_skew_sds(15, 0), DomainError);
    CHECK_THROWS_AS(qr_skew_sds(7, 2), DomainError);
  }

  TEST_CASE("QR multiplier stability") {
    for (int p : {7, 19, 43, 71}) {
      const auto q = qr_skew_sds(p, 1);
      for (int d : quadratic_residues(p).elements()) {
        CHECK(apply_group(GroupElement{p, d, 1, 1, 0, 0}, q) == q);
      }
    }
  }

  TEST_CASE("QR pairs land in the single class") {
    for (int p : {7, 11, 19, 23}) {
      for (int k01 : {0, 1}) {
        const auto q = qr_skew_sds(p, k01);
        CHECK(verify_gram_pair(q.a, q.b, q.params).holds);
        const auto r = classify(q.params);
        REQUIRE(r.count == 1);
        CHECK(are_equivalent(r.representatives.front(), q));
      }
    }
  }

  TEST_CASE("Hadamard design check examples") {
    CHECK(hadamard_design_check(SubsetZv(7, {3, 5, 6})));
    CHECK(hadamard_design_check(SubsetZv(7, {1, 2, 4})));
    CHECK_FALSE(hadamard_design_check(SubsetZv(7, {0, 1, 3})));
    CHECK_THROWS_AS(hadamard_design_check(SubsetZv(13, {1, 2, 3, 4, 5, 6})), DomainError);
    CHECK_THROWS_AS(hadamard_design_check(SubsetZv(7, {1, 2})), ParameterError);
  }

  TEST_CASE("Hadamard design check is equivalent to the two skew SDS") {
    // Exhaustive over every (v-1)/2-subset for small v, over skew candidates up to 19.
    for (int v : {3, 7, 11}) {
      for (const auto& a : oracle::subsets(v, (v - 1) / 2)) {
        const SubsetZv s(v, a);
        const int lambda = (v - 3) / 4;
        const bool sds_both = oracle::is_sds(v, a, {}, lambda) && oracle::is_skew(v, a);
        REQUIRE(hadamard_design_check(s) == sds_both);
      }
    }
    for (int v : {15, 19}) {
      const int lambda = (v - 3) / 4;
      for (const auto& a : enumerate_skew_A(v, (v - 1) / 2)) {
        const bool empty_b = is_sds(SdsPair{SdsParams{v, (v - 1) / 2, 0, lambda}, a, SubsetZv(v)});
        const bool zero_b = is_sds(SdsPair{SdsParams{v, (v - 1) / 2, 1, lambda}, a, SubsetZv(v, {0})});
        CHECK(empty_b == zero_b);
        REQUIRE(hadamard_design_check(a) == empty_b);
      }
    }
    for (int p = 23; p <= 31; p += 4) {
      if (is_prime(p)) CHECK(hadamard_design_check(qr_skew_sds(p, 0).a));
    }
  }
}
