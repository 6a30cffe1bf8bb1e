#pragma once

#include "skewsds/sds.hpp"
#include "skewsds/subset.hpp"

namespace skewsds {

// Trial division.
bool is_prime(long long n);

// P_A(i) = lambda for every i = 1..v-1. Throws ParameterError if |A| != k.
bool is_difference_set(const SubsetZv& a, int k, int lambda);

// Nonzero squares mod p and their complement in Z_p \ {0}. p must be prime.
SubsetZv quadratic_residues(int p);
SubsetZv quadratic_nonresidues(int p);

/// (N, {}) for k01 = 0 or (N, {0}) for k01 = 1, N the non-residues mod p:
/// a skew 2-{p; (p-1)/2, k01; (p-3)/4} SDS. Throws DomainError unless p is
/// a prime = 3 mod 4 (and p <= kMaxModulus) and k01 is 0 or 1.
SdsPair qr_skew_sds(int p, int k01);

/// A is a (v, (v-1)/2, (v-3)/4) difference set whose 0/1 circulant
/// incidence matrix M satisfies M + M^T + I = J. Computed on the incidence
/// matrix and cross-checked against is_difference_set && is_skew; a
/// disagreement throws std::logic_error. Throws DomainError unless
/// v = 3 mod 4 and ParameterError unless |A| = (v-1)/2.
bool hadamard_design_check(const SubsetZv& a);

}  // namespace skewsds
