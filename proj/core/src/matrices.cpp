#include "skewsds/matrices.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "skewsds/errors.hpp"

namespace skewsds {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::filled(std::size_t rows, std::size_t cols, long long value) {
  IntMatrix m(rows, cols);
  std::fill(m.data_.begin(), m.data_.end(), value);
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionError("matrix product shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t t = 0; t < cols_; ++t) {
      const long long x = (*this)(i, t);
      if (x == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += x * rhs(t, j);
    }
  }
  return out;
}

int SignRow::minus_count() const noexcept {
  int n = 0;
  for (int e : entries) n += e == -1;
  return n;
}

SignRow subset_to_row(const SubsetZv& x) {
  SignRow row;
  row.entries.assign(static_cast<std::size_t>(x.modulus()), 1);
  for (int e : x.elements()) row.entries[static_cast<std::size_t>(e)] = -1;
  return row;
}

SubsetZv row_to_subset(const SignRow& row) {
  SubsetZv x(row.size());
  for (int i = 0; i < row.size(); ++i) {
    if (row[i] == -1) {
      x.insert(i);
    } else if (row[i] != 1) {
      throw MalformedInput("sign row entry " + std::to_string(row[i]) + " is not +1 or -1");
    }
  }
  return x;
}

std::vector<long long> autocorrelation(const SignRow& row) {
  const int v = row.size();
  std::vector<long long> c(static_cast<std::size_t>(v), 0);
  for (int s = 0; s < v; ++s) {
    long long sum = 0;
    for (int j = 0; j < v; ++j) sum += row[j] * row[(j + s) % v];
    c[static_cast<std::size_t>(s)] = sum;
  }
  return c;
}

bool row_is_skew(const SignRow& row) {
  const int v = row.size();
  if (v == 0 || row[0] != 1) return false;
  for (int i = 1; i < v; ++i) {
    if (row[i] != -row[v - i]) return false;
  }
  return true;
}

int CirculantMatrix::operator()(int i, int j) const {
  const int v = order();
  return first_row_[((j - i) % v + v) % v];
}

IntMatrix CirculantMatrix::dense() const {
  const auto v = static_cast<std::size_t>(order());
  IntMatrix m(v, v);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) m(i, j) = (*this)(static_cast<int>(i), static_cast<int>(j));
  }
  return m;
}

DesignMatrix::DesignMatrix(CirculantMatrix r1, CirculantMatrix r2)
    : r1_(std::move(r1)), r2_(std::move(r2)) {
  if (r1_.order() != r2_.order()) throw DimensionError("design blocks must have equal order");
}

int DesignMatrix::operator()(int i, int j) const {
  const int v = r1_.order();
  const bool lower = i >= v;
  const bool right = j >= v;
  const int bi = i % v;
  const int bj = j % v;
  if (!lower) return right ? r2_(bi, bj) : r1_(bi, bj);
  return right ? r1_(bj, bi) : -r2_(bj, bi);
}

IntMatrix DesignMatrix::dense() const {
  const auto n = static_cast<std::size_t>(order());
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (*this)(static_cast<int>(i), static_cast<int>(j));
  }
  return m;
}

GramCertificate verify_gram_pair(const SubsetZv& a, const SubsetZv& b, const SdsParams& params) {
  if (a.modulus() != params.v || b.modulus() != params.v) {
    throw ParameterError("set modulus differs from v = " + std::to_string(params.v));
  }
  if (a.size() != params.r || b.size() != params.k) {
    throw ParameterError("pair sizes do not match declared (r, k) " + params.to_string());
  }
  GramCertificate cert;
  cert.alpha = params.alpha();
  cert.beta = params.beta();
  const auto c1 = autocorrelation(subset_to_row(a));
  const auto c2 = autocorrelation(subset_to_row(b));
  // Entry (i, j) of R R^T is c(j - i), so alpha I + beta J means
  // c1 + c2 = alpha + beta at shift 0 and beta elsewhere.
  for (int s = 0; s < params.v; ++s) {
    const long long expected = s == 0 ? cert.alpha + cert.beta : cert.beta;
    if (c1[static_cast<std::size_t>(s)] + c2[static_cast<std::size_t>(s)] != expected) {
      cert.failure = "R1 R1^T + R2 R2^T = alpha I + beta J fails at shift " + std::to_string(s);
      return cert;
    }
  }
  cert.holds = true;
  return cert;
}

DesignMatrix build_design(const SubsetZv& a, const SubsetZv& b) {
  if (a.modulus() != b.modulus()) throw ParameterError("A and B live in different Z_v");
  return DesignMatrix(CirculantMatrix(subset_to_row(a)), CirculantMatrix(subset_to_row(b)));
}

bool design_is_skew(const IntMatrix& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m(i, i) != 1) return false;
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != -m(j, i)) return false;
    }
  }
  return true;
}

bool design_is_skew(const DesignMatrix& m) { return design_is_skew(m.dense()); }

GramCertificate verify_c1c3(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("C1-C3 check needs a square matrix");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 1 && m(i, j) != -1) {
        throw MalformedInput("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") is not +1 or -1");
      }
    }
  }
  GramCertificate cert;
  const std::size_t n = m.rows();
  if (n % 2 != 0 || (n / 2) % 2 == 0) {
    cert.failure = "C1: order is not 2d with d odd";
    return cert;
  }
  if (!design_is_skew(m)) {
    cert.failure = "C2: M - I is not skew-symmetric";
    return cert;
  }
  const std::size_t d = n / 2;
  const IntMatrix g = m * m.transposed();
  cert.beta = d > 1 ? g(0, 1) : 0;
  cert.alpha = g(0, 0) - cert.beta;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool same_block = (i < d) == (j < d);
      const long long expected = !same_block ? 0 : (i == j ? cert.alpha + cert.beta : cert.beta);
      if (g(i, j) != expected) {
        cert.failure = "C3: M M^T is not diag(alpha I + beta J, alpha I + beta J) at (" +
                       std::to_string(i) + ", " + std::to_string(j) + ")";
        return cert;
      }
    }
  }
  if (cert.alpha < 2 || cert.beta < 1) {
    cert.failure = "C3: need alpha >= 2 and beta >= 1";
    return cert;
  }
  cert.holds = true;
  return cert;
}

GramCertificate verify_c1c3(const DesignMatrix& m) { return verify_c1c3(m.dense()); }

BigInt exact_determinant(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant needs a square matrix");
  const std::size_t n = m.rows();
  std::vector<BigInt> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  }
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * n + j]; };
  BigInt previous = 1;
  int sign = 1;
  BigInt q, r;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && at(pivot, k) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(pivot, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const BigInt t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        divide_qr(t, previous, q, r);
        if (r != 0) throw std::logic_error("fraction-free elimination produced an inexact division");
        at(i, j) = q;
      }
      at(i, k) = 0;
    }
    previous = at(k, k);
  }
  return n == 0 ? BigInt(1) : BigInt(sign * at(n - 1, n - 1));
}

IntMatrix read_matrix(std::istream& in) {
  long long n = -1;
  if (!(in >> n) || n < 0) throw MalformedInput("matrix file must start with a nonnegative order");
  const auto size = static_cast<std::size_t>(n);
  IntMatrix m(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      std::string token;
      if (!(in >> token)) throw MalformedInput("matrix file ends early at row " + std::to_string(i));
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(token, &used);
      } catch (const std::exception&) {
        throw MalformedInput("bad matrix entry '" + token + "'");
      }
      if (used != token.size()) throw MalformedInput("bad matrix entry '" + token + "'");
      m(i, j) = value;
    }
  }
  std::string extra;
  if (in >> extra) throw MalformedInput("trailing data after matrix: '" + extra + "'");
  return m;
}

void write_matrix(std::ostream& out, const IntMatrix& m) {
  out << m.rows() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const long long x = m(i, j);
      if (j != 0) out << ' ';
      if (x == 1) {
        out << "+1";
      } else {
        out << x;
      }
    }
    out << '\n';
  }
}

}  // namespace skewsds
