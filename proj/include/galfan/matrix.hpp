#pragma once

#include "galfan/linalg.hpp"

#include <compare>
#include <vector>

namespace galfan {

/// Dense integer matrix, row-major.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> entries;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, Int(0)) {}
  IntMatrix(std::size_t r, std::size_t c, std::vector<Int> e)
      : rows(r), cols(c), entries(std::move(e)) {
    if (entries.size() != rows * cols) throw std::invalid_argument("matrix entry count mismatch");
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVec>& r) {
    if (r.empty()) return IntMatrix();
    IntMatrix m(r.size(), r[0].size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i].size() != m.cols) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = r[i][j];
    }
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVec>& c) {
    if (c.empty()) return IntMatrix();
    IntMatrix m(c[0].size(), c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j].size() != m.rows) throw std::invalid_argument("ragged matrix columns");
      for (std::size_t i = 0; i < m.rows; ++i) m.at(i, j) = c[j][i];
    }
    return m;
  }

  Int& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

  IntVec row(std::size_t i) const {
    return IntVec(entries.begin() + i * cols, entries.begin() + (i + 1) * cols);
  }

  IntVec apply(const IntVec& v) const {
    if (cols != v.size())
      throw std::invalid_argument("matrix-vector product: dimension mismatch");
    IntVec out(rows, Int(0));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) out[i] += at(i, j) * v[j];
    return out;
  }

  bool is_square() const { return rows == cols; }

  bool operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && entries == o.entries;
  }

  bool operator<(const IntMatrix& o) const {
    if (rows != o.rows) return rows < o.rows;
    if (cols != o.cols) return cols < o.cols;
    return std::lexicographical_compare(entries.begin(), entries.end(), o.entries.begin(),
                                        o.entries.end());
  }
};

inline IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix product: dimension mismatch");
  IntMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

inline IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

/// Exact determinant, Bareiss fraction-free elimination.
inline Int determinant(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  std::size_t n = m.rows;
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& m) {
  if (!m.is_square()) return false;
  Int d = determinant(m);
  return d == 1 || d == -1;
}

struct SmithResult {
  std::vector<Int> diag;  // min(rows, cols) entries, d1 | d2 | ..., all >= 0
  IntMatrix left;         // unimodular, rows x rows
  IntMatrix right;        // unimodular, cols x cols
};

// left * m * right is diagonal with the divisibility chain. Row operations on
// the working matrix are mirrored on `left`, column operations on `right`.
inline SmithResult smith_normal_form(const IntMatrix& m) {
  std::size_t rows = m.rows, cols = m.cols;
  IntMatrix a = m;
  IntMatrix left = IntMatrix::identity(rows);
  IntMatrix right = IntMatrix::identity(cols);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols; ++k) std::swap(a.at(i, k), a.at(j, k));
    for (std::size_t k = 0; k < rows; ++k) std::swap(left.at(i, k), left.at(j, k));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows; ++k) std::swap(a.at(k, i), a.at(k, j));
    for (std::size_t k = 0; k < cols; ++k) std::swap(right.at(k, i), right.at(k, j));
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const Int& c) {  // row dst += c * row src
    for (std::size_t k = 0; k < cols; ++k) a.at(dst, k) += c * a.at(src, k);
    for (std::size_t k = 0; k < rows; ++k) left.at(dst, k) += c * left.at(src, k);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& c) {  // col dst += c * col src
    for (std::size_t k = 0; k < rows; ++k) a.at(k, dst) += c * a.at(k, src);
    for (std::size_t k = 0; k < cols; ++k) right.at(k, dst) += c * right.at(k, src);
  };
  auto negate_row = [&](std::size_t i) {
    for (std::size_t k = 0; k < cols; ++k) a.at(i, k) = -a.at(i, k);
    for (std::size_t k = 0; k < rows; ++k) left.at(i, k) = -left.at(i, k);
  };

  std::size_t t = 0;
  std::size_t limit = std::min(rows, cols);
  while (t < limit) {
    // pick the nonzero entry of minimal absolute value in the trailing block
    std::size_t pi = t, pj = t;
    Int best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        const Int& x = a.at(i, j);
        if (x == 0) continue;
        Int ax = abs(x);
        if (best == 0 || ax < best) {
          best = ax;
          pi = i;
          pj = j;
        }
      }
    if (best == 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a.at(i, t) == 0) continue;
        Int q = a.at(i, t) / a.at(t, t);
        add_row(i, t, -q);
        if (a.at(i, t) != 0) {  // remainder became the new, smaller pivot
          swap_rows(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a.at(t, j) == 0) continue;
        Int q = a.at(t, j) / a.at(t, t);
        add_col(j, t, -q);
        if (a.at(t, j) != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
      if (clean) {
        // enforce d_t | everything below-right; one violating entry restarts
        for (std::size_t i = t + 1; i < rows && clean; ++i)
          for (std::size_t j = t + 1; j < cols && clean; ++j)
            if (a.at(i, j) % a.at(t, t) != 0) {
              add_row(t, i, Int(1));
              clean = false;
            }
      }
    }
    if (a.at(t, t) < 0) negate_row(t);
    ++t;
  }

  SmithResult out;
  out.diag.resize(limit, Int(0));
  for (std::size_t i = 0; i < limit; ++i) out.diag[i] = a.at(i, i);
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

}  // namespace galfan
