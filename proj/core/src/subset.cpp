#include "skewsds/subset.hpp"

#include <bit>
#include <sstream>

#include "skewsds/errors.hpp"

namespace skewsds {

namespace {

int reduce(int x, int v) {
  int r = x % v;
  return r < 0 ? r + v : r;
}

void check_modulus(int v) {
  if (v < 1 || v > kMaxModulus) {
    throw ParameterError("modulus " + std::to_string(v) + " outside [1, " +
                         std::to_string(kMaxModulus) + "]");
  }
}

}  // namespace

namespace mask {

int popcount(Mask m) noexcept {
  return std::popcount(static_cast<std::uint64_t>(m)) +
         std::popcount(static_cast<std::uint64_t>(m >> 64));
}

int lowest_bit(Mask m) noexcept {
  const auto lo = static_cast<std::uint64_t>(m);
  if (lo != 0) return std::countr_zero(lo);
  const auto hi = static_cast<std::uint64_t>(m >> 64);
  return hi == 0 ? -1 : 64 + std::countr_zero(hi);
}

std::strong_ordering lex_compare(Mask a, Mask b) noexcept {
  const Mask diff = a ^ b;
  if (diff == 0) return std::strong_ordering::equal;
  const Mask low = diff & (~diff + 1);
  // The set owning the smallest differing element is smaller, unless the
  // other set has already run out of elements (proper prefix).
  const Mask above = ~((low << 1) - 1);
  if ((a & low) != 0) {
    return (b & above) != 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return (a & above) != 0 ? std::strong_ordering::greater : std::strong_ordering::less;
}

Mask least_translate(Mask m, int v) noexcept {
  if (m == 0) return 0;
  Mask best = 0;
  bool have = false;
  for (Mask rest = m; rest != 0; rest &= rest - 1) {
    const int x = lowest_bit(rest);
    const Mask t = rotate(m, (v - x) % v, v);
    if (!have || lex_compare(t, best) < 0) {
      best = t;
      have = true;
    }
  }
  return best;
}

}  // namespace mask

SubsetZv::SubsetZv(int v) : v_(v) { check_modulus(v); }

SubsetZv::SubsetZv(int v, std::initializer_list<int> elements)
    : SubsetZv(v, std::span<const int>(elements.begin(), elements.size())) {}

SubsetZv::SubsetZv(int v, std::span<const int> elements) : v_(v) {
  check_modulus(v);
  for (int x : elements) {
    if (x < 0 || x >= v) {
      throw ParameterError("element " + std::to_string(x) + " not in Z_" + std::to_string(v));
    }
    bits_ |= Mask{1} << x;
  }
}

SubsetZv SubsetZv::from_mask(int v, Mask bits) {
  check_modulus(v);
  if ((bits & ~mask::full(v)) != 0) {
    throw ParameterError("mask has bits at or above modulus " + std::to_string(v));
  }
  return SubsetZv(v, bits);
}

SubsetZv SubsetZv::from_words(int v, std::array<std::uint64_t, 2> words) {
  return from_mask(v, (Mask{words[1]} << 64) | Mask{words[0]});
}

std::array<std::uint64_t, 2> SubsetZv::words() const noexcept {
  return {static_cast<std::uint64_t>(bits_), static_cast<std::uint64_t>(bits_ >> 64)};
}

int SubsetZv::size() const noexcept { return mask::popcount(bits_); }

bool SubsetZv::contains(int x) const noexcept {
  if (x < 0 || x >= v_) return false;
  return ((bits_ >> x) & 1) != 0;
}

std::vector<int> SubsetZv::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (Mask rest = bits_; rest != 0; rest &= rest - 1) out.push_back(mask::lowest_bit(rest));
  return out;
}

void SubsetZv::insert(int x) { bits_ |= Mask{1} << reduce(x, v_); }

void SubsetZv::erase(int x) { bits_ &= ~(Mask{1} << reduce(x, v_)); }

SubsetZv SubsetZv::translated(int a) const {
  return SubsetZv(v_, mask::rotate(bits_, reduce(a, v_), v_));
}

SubsetZv SubsetZv::scaled(int d) const {
  const int dd = reduce(d, v_);
  Mask out = 0;
  for (Mask rest = bits_; rest != 0; rest &= rest - 1) {
    const int x = mask::lowest_bit(rest);
    out |= Mask{1} << ((x * dd) % v_);
  }
  return SubsetZv(v_, out);
}

SubsetZv SubsetZv::complement() const { return SubsetZv(v_, ~bits_ & mask::full(v_)); }

SubsetZv SubsetZv::least_translate() const {
  return SubsetZv(v_, mask::least_translate(bits_, v_));
}

std::string SubsetZv::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int x : elements()) {
    os << (first ? "" : ", ") << x;
    first = false;
  }
  os << '}';
  return os.str();
}

std::strong_ordering operator<=>(const SubsetZv& a, const SubsetZv& b) noexcept {
  if (auto c = a.v_ <=> b.v_; c != 0) return c;
  return mask::lex_compare(a.bits_, b.bits_);
}

int DifferenceProfile::total() const noexcept {
  int sum = 0;
  for (int c : counts) sum += c;
  return sum;
}

bool DifferenceProfile::is_palindromic() const noexcept {
  const auto n = counts.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (counts[i] != counts[n - 1 - i]) return false;
  }
  return true;
}

int difference_count(const SubsetZv& x, int i) {
  const int v = x.modulus();
  const int s = reduce(i, v);
  if (s == 0) throw ParameterError("difference 0 is not profiled");
  // y - x = s  <=>  y in X and y - s in X: intersect X with X shifted up by s.
  return mask::popcount(x.mask() & mask::rotate(x.mask(), s, v));
}

DifferenceProfile diff_profile(const SubsetZv& x) {
  const int v = x.modulus();
  DifferenceProfile p{v, std::vector<int>(static_cast<std::size_t>(v > 0 ? v - 1 : 0), 0)};
  for (int i = 1; i < v; ++i) p.counts[static_cast<std::size_t>(i - 1)] = difference_count(x, i);
  return p;
}

}  // namespace skewsds
