#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace skewsds {

inline constexpr int kMaxModulus = 127;

// Bitmask over Z_v, bit x set iff x is in the set. Two machine words wide,
// enough for every v <= kMaxModulus.
__extension__ typedef unsigned __int128 Mask;

/// A subset of the integers mod v.
///
/// Stored as a bitmask, so set algebra, translation and the difference
/// profile reduce to shifts and popcounts. Ordering is the lexicographic
/// order on ascending element sequences (after comparing the modulus).
class SubsetZv {
 public:
  SubsetZv() = default;
  explicit SubsetZv(int v);
  SubsetZv(int v, std::initializer_list<int> elements);
  SubsetZv(int v, std::span<const int> elements);

  // Bits at positions >= v are rejected.
  static SubsetZv from_mask(int v, Mask bits);
  static SubsetZv from_words(int v, std::array<std::uint64_t, 2> words);

  int modulus() const noexcept { return v_; }
  Mask mask() const noexcept { return bits_; }
  std::array<std::uint64_t, 2> words() const noexcept;

  int size() const noexcept;
  bool empty() const noexcept { return bits_ == 0; }
  bool contains(int x) const noexcept;
  std::vector<int> elements() const;

  // Residue is reduced mod v first, so negative inputs are fine.
  void insert(int x);
  void erase(int x);

  SubsetZv translated(int a) const;
  // Multiplies every element by d mod v. Only a bijection when gcd(d, v) = 1.
  SubsetZv scaled(int d) const;
  SubsetZv negated() const { return scaled(-1); }
  SubsetZv complement() const;

  // Lexicographically least translate X + a. Always contains 0 unless empty.
  SubsetZv least_translate() const;

  std::string to_string() const;

  friend bool operator==(const SubsetZv&, const SubsetZv&) = default;
  friend std::strong_ordering operator<=>(const SubsetZv& a, const SubsetZv& b) noexcept;

 private:
  SubsetZv(int v, Mask bits) noexcept : v_(v), bits_(bits) {}

  int v_ = 0;
  Mask bits_ = 0;
};

namespace mask {

constexpr Mask full(int v) noexcept {
  return v >= 128 ? ~Mask{0} : ((Mask{1} << v) - 1);
}

int popcount(Mask m) noexcept;
int lowest_bit(Mask m) noexcept;

// Cyclic shift inside Z_v: bit x moves to bit (x + s) mod v. Requires 0 <= s < v.
constexpr Mask rotate(Mask m, int s, int v) noexcept {
  if (s == 0) return m;
  return ((m << s) | (m >> (v - s))) & full(v);
}

// Sorted-sequence lexicographic comparison of two sets in the same Z_v.
std::strong_ordering lex_compare(Mask a, Mask b) noexcept;

// Least translate of a bitmask set; 0 stays 0.
Mask least_translate(Mask m, int v) noexcept;

}  // namespace mask

/// Difference counts P_X(i) for i = 1..v-1.
struct DifferenceProfile {
  int v = 0;
  std::vector<int> counts;  // counts[i - 1] = P_X(i)

  int operator[](int i) const { return counts.at(static_cast<std::size_t>(i - 1)); }
  int total() const noexcept;
  bool is_palindromic() const noexcept;

  friend bool operator==(const DifferenceProfile&, const DifferenceProfile&) = default;
};

DifferenceProfile diff_profile(const SubsetZv& x);

// P_X(i) alone; i taken mod v, i != 0.
int difference_count(const SubsetZv& x, int i);

}  // namespace skewsds
