#include "skewsds/group.hpp"

#include <numeric>
#include <string>

#include "skewsds/errors.hpp"

namespace skewsds {

namespace {

int reduce(long long x, int v) {
  const long long r = x % v;
  return static_cast<int>(r < 0 ? r + v : r);
}

SubsetZv image(const SubsetZv& x, int multiplier, int shift) {
  return x.scaled(multiplier).translated(shift);
}

}  // namespace

void GroupElement::validate() const {
  if (v < 1) throw InvalidGroupElement("modulus must be positive");
  if (sign_a * sign_a != 1 || sign_b * sign_b != 1) {
    throw InvalidGroupElement("signs must be +1 or -1");
  }
  if (std::gcd(reduce(d, v), v) != 1) {
    throw InvalidGroupElement("multiplier " + std::to_string(d) + " is not a unit mod " +
                              std::to_string(v));
  }
}

GroupElement compose(const GroupElement& second, const GroupElement& first) {
  if (second.v != first.v) throw InvalidGroupElement("composing elements of different Z_v");
  const int v = first.v;
  // x -> s2 d2 (s1 d1 x + a1) + a2
  GroupElement g;
  g.v = v;
  g.d = reduce(static_cast<long long>(second.d) * first.d, v);
  g.sign_a = second.sign_a * first.sign_a;
  g.sign_b = second.sign_b * first.sign_b;
  g.shift_a = reduce(static_cast<long long>(second.sign_a) * second.d * first.shift_a +
                         second.shift_a, v);
  g.shift_b = reduce(static_cast<long long>(second.sign_b) * second.d * first.shift_b +
                         second.shift_b, v);
  return g;
}

std::vector<int> units(int v) {
  std::vector<int> out;
  for (int d = 1; d < v; ++d) {
    if (std::gcd(d, v) == 1) out.push_back(d);
  }
  return out;
}

SdsPair apply_group(const GroupElement& g, const SdsPair& pair) {
  g.validate();
  if (g.v != pair.params.v) throw InvalidGroupElement("group element acts on a different Z_v");
  return SdsPair{pair.params, image(pair.a, g.sign_a * g.d, g.shift_a),
                 image(pair.b, g.sign_b * g.d, g.shift_b)};
}

SdsPair canonical_form(const SdsPair& pair) {
  const int v = pair.params.v;
  // sign_a * d runs over all of U(Z_v) as d does, so the A-sign folds into d.
  Mask best_a = 0;
  Mask best_b = 0;
  bool have = false;
  for (int d : units(v)) {
    const Mask a = mask::least_translate(pair.a.scaled(d).mask(), v);
    if (have) {
      const auto c = mask::lex_compare(a, best_a);
      if (c > 0) continue;
      if (c < 0) have = false;
    }
    for (int sign : {1, -1}) {
      const Mask b = mask::least_translate(pair.b.scaled(sign * d).mask(), v);
      if (!have || mask::lex_compare(b, best_b) < 0) {
        best_a = a;
        best_b = b;
        have = true;
      }
    }
  }
  if (!have) return pair;  // U(Z_v) empty only for v = 1
  return SdsPair{pair.params, SubsetZv::from_mask(v, best_a), SubsetZv::from_mask(v, best_b)};
}

bool are_equivalent(const SdsPair& p, const SdsPair& q) {
  if (p.params != q.params) {
    throw IncomparableError("cannot compare pairs with parameters " + p.params.to_string() +
                            " and " + q.params.to_string());
  }
  return canonical_form(p) == canonical_form(q);
}

}  // namespace skewsds
