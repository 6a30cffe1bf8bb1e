#pragma once

#include <vector>

#include "skewsds/sds.hpp"

namespace skewsds {

/// The affine map (A, B) -> (sign_a * d * A + shift_a, sign_b * d * B + shift_b)
/// on pairs of subsets of Z_v, with d a unit mod v.
struct GroupElement {
  int v = 0;
  int d = 1;
  int sign_a = 1;
  int sign_b = 1;
  int shift_a = 0;
  int shift_b = 0;

  static GroupElement identity(int v) { return GroupElement{v, 1, 1, 1, 0, 0}; }

  // Throws InvalidGroupElement unless gcd(d, v) = 1, signs are +-1 and v >= 1.
  void validate() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

// The element that applies `first` and then `second`.
GroupElement compose(const GroupElement& second, const GroupElement& first);

// U(Z_v) in increasing order.
std::vector<int> units(int v);

SdsPair apply_group(const GroupElement& g, const SdsPair& pair);

/// Least pair in the orbit {(+-dA + a, +-dB + b)} under the order on
/// (sorted A-list, sorted B-list). Each image is reduced to its least
/// translate, so only |U(Z_v)| * 4 images are scanned.
SdsPair canonical_form(const SdsPair& pair);

// Throws IncomparableError when the parameters differ.
bool are_equivalent(const SdsPair& p, const SdsPair& q);

}  // namespace skewsds
