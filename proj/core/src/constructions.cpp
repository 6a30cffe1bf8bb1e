#include "skewsds/constructions.hpp"

#include <stdexcept>
#include <string>

#include "skewsds/errors.hpp"
#include "skewsds/matrices.hpp"

namespace skewsds {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_difference_set(const SubsetZv& a, int k, int lambda) {
  if (a.size() != k) {
    throw ParameterError("difference set of size " + std::to_string(k) + " expected, got " +
                         std::to_string(a.size()));
  }
  for (int i = 1; i < a.modulus(); ++i) {
    if (difference_count(a, i) != lambda) return false;
  }
  return true;
}

SubsetZv quadratic_residues(int p) {
  if (!is_prime(p) || p > kMaxModulus) throw DomainError("quadratic residues need a prime modulus");
  SubsetZv q(p);
  for (int x = 1; x < p; ++x) q.insert(x * x % p);
  return q;
}

SubsetZv quadratic_nonresidues(int p) {
  auto n = quadratic_residues(p).complement();
  n.erase(0);
  return n;
}

SdsPair qr_skew_sds(int p, int k01) {
  if (!is_prime(p) || p % 4 != 3 || p > kMaxModulus) {
    throw DomainError("QR construction needs a prime p = 3 mod 4, got " + std::to_string(p));
  }
  if (k01 != 0 && k01 != 1) throw DomainError("k01 must be 0 or 1");
  SubsetZv b(p);
  if (k01 == 1) b.insert(0);
  return make_pair(SdsParams{p, (p - 1) / 2, k01, (p - 3) / 4}, quadratic_nonresidues(p), b);
}

bool hadamard_design_check(const SubsetZv& a) {
  const int v = a.modulus();
  if (v % 4 != 3) throw DomainError("circulant Hadamard designs need v = 3 mod 4");
  const int k = (v - 1) / 2;
  const int lambda = (v - 3) / 4;
  if (a.size() != k) throw ParameterError("A must have (v-1)/2 elements");

  // Incidence matrix route: M(i, j) = 1 iff j - i in A.
  const auto n = static_cast<std::size_t>(v);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = a.contains(static_cast<int>((j + n - i) % n)) ? 1 : 0;
    }
  }
  const IntMatrix gram = m * m.transposed();
  const IntMatrix mt = m.transposed();
  bool by_matrix = true;
  for (std::size_t i = 0; i < n && by_matrix; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const long long design = i == j ? k : lambda;
      const long long tournament = m(i, j) + mt(i, j) + (i == j ? 1 : 0);
      if (gram(i, j) != design || tournament != 1) {
        by_matrix = false;
        break;
      }
    }
  }

  const bool by_sets = is_difference_set(a, k, lambda) && is_skew(a);
  if (by_matrix != by_sets) {
    throw std::logic_error("incidence-matrix and difference-set checks disagree for " + a.to_string());
  }
  return by_matrix;
}

}  // namespace skewsds
