#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "skewsds/bigint.hpp"
#include "skewsds/sds.hpp"
#include "skewsds/subset.hpp"

namespace skewsds {

/// Dense row-major integer matrix. Only used for certification and
/// determinants, so no expression templates.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix filled(std::size_t rows, std::size_t cols, long long value);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  long long& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  long long operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transposed() const;
  // Throws DimensionError on shape mismatch.
  IntMatrix operator*(const IntMatrix& rhs) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<long long> data_;
};

/// First row of the circulant attached to X: entry i (0-based) is -1 iff i in X.
struct SignRow {
  std::vector<int> entries;

  int size() const noexcept { return static_cast<int>(entries.size()); }
  int operator[](int i) const { return entries[static_cast<std::size_t>(i)]; }
  int minus_count() const noexcept;

  friend bool operator==(const SignRow&, const SignRow&) = default;
};

SignRow subset_to_row(const SubsetZv& x);
// Inverse of subset_to_row. Throws MalformedInput on entries outside {+1, -1}.
SubsetZv row_to_subset(const SignRow& row);

// Periodic autocorrelation c(s) = sum_j row[j] * row[j + s mod v], s = 0..v-1.
std::vector<long long> autocorrelation(const SignRow& row);

// Skew form: row[0] = +1 and row[i] = -row[v - i] for i = 1..v-1.
bool row_is_skew(const SignRow& row);

/// v x v matrix whose row t is the first row cyclically shifted right by t.
class CirculantMatrix {
 public:
  CirculantMatrix() = default;
  explicit CirculantMatrix(SignRow first_row) : first_row_(std::move(first_row)) {}

  const SignRow& first_row() const noexcept { return first_row_; }
  int order() const noexcept { return first_row_.size(); }
  int operator()(int i, int j) const;
  IntMatrix dense() const;

 private:
  SignRow first_row_;
};

/// The 2v x 2v block matrix [[R1, R2], [-R2^T, R1^T]].
class DesignMatrix {
 public:
  DesignMatrix(CirculantMatrix r1, CirculantMatrix r2);

  const CirculantMatrix& r1() const noexcept { return r1_; }
  const CirculantMatrix& r2() const noexcept { return r2_; }
  int order() const noexcept { return 2 * r1_.order(); }
  int operator()(int i, int j) const;
  IntMatrix dense() const;

 private:
  CirculantMatrix r1_;
  CirculantMatrix r2_;
};

struct GramCertificate {
  long long alpha = 0;
  long long beta = 0;
  bool holds = false;
  // Name of the first violated identity when holds is false.
  std::string failure;
};

/// Checks R1 R1^T + R2 R2^T = alpha I + beta J with (alpha, beta) =
/// (4(r+k-lambda), 2(v-2(r+k-lambda))), through the two periodic
/// autocorrelations. Holds exactly when (A, B) is an SDS.
GramCertificate verify_gram_pair(const SubsetZv& a, const SubsetZv& b, const SdsParams& params);

// Throws ParameterError when the moduli differ.
DesignMatrix build_design(const SubsetZv& a, const SubsetZv& b);

// M - I = -(M - I)^T.
bool design_is_skew(const DesignMatrix& m);
bool design_is_skew(const IntMatrix& m);

/// (C1) order 2d with d odd, (C2) M - I skew, (C3) M M^T =
/// diag(alpha I + beta J, alpha I + beta J) with alpha >= 2, beta >= 1.
/// Throws MalformedInput on entries outside {+1, -1} and DimensionError
/// on a non-square matrix.
GramCertificate verify_c1c3(const IntMatrix& m);
GramCertificate verify_c1c3(const DesignMatrix& m);

/// Exact determinant by fraction-free (Bareiss) elimination with row
/// pivoting. Throws DimensionError on a non-square matrix.
BigInt exact_determinant(const IntMatrix& m);

// Text format: first line n, then n lines of n whitespace-separated integers.
IntMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const IntMatrix& m);

}  // namespace skewsds
