#pragma once

#include <vector>

#include "tstruct/field.hpp"

namespace tstruct {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;  // row major

struct SolveResult {
  int rank = 0;
  std::vector<Vec> kernel;      // basis of ker, as column vectors (length = ncols)
  std::vector<int> pivot_cols;  // columns of the original matrix spanning the image
};

/// Exact Gauss elimination of an m x n matrix over the given field.
inline SolveResult row_reduce(const Field& k, Mat a, int ncols) {
  const int nrows = static_cast<int>(a.size());
  SolveResult res;
  std::vector<int> pivot_row_of_col(ncols, -1);
  int row = 0;
  for (int col = 0; col < ncols && row < nrows; ++col) {
    int piv = -1;
    for (int r = row; r < nrows; ++r) {
      if (!k.is_zero(a[r][col])) { piv = r; break; }
    }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    Rational inv = k.div(Rational(1), a[row][col]);
    for (int c = col; c < ncols; ++c) a[row][c] = k.mul(a[row][c], inv);
    for (int r = 0; r < nrows; ++r) {
      if (r == row || k.is_zero(a[r][col])) continue;
      Rational f = a[r][col];
      for (int c = col; c < ncols; ++c) k.submul(a[r][c], f, a[row][c]);
    }
    pivot_row_of_col[col] = row;
    res.pivot_cols.push_back(col);
    ++row;
  }
  res.rank = row;
  // kernel basis from free columns
  for (int col = 0; col < ncols; ++col) {
    if (pivot_row_of_col[col] >= 0) continue;
    Vec v(ncols, Rational(0));
    v[col] = 1;
    for (int c = 0; c < ncols; ++c) {
      int pr = pivot_row_of_col[c];
      if (pr >= 0) v[c] = k.neg(a[pr][col]);
    }
    res.kernel.push_back(std::move(v));
  }
  return res;
}

/// Rank via forward elimination only: no pivot normalization, no kernel.
inline int rank_of(const Field& k, Mat a, int ncols) {
  if (a.empty() || ncols == 0) return 0;
  const int nrows = static_cast<int>(a.size());
  int row = 0;
  for (int col = 0; col < ncols && row < nrows; ++col) {
    int piv = -1;
    for (int r = row; r < nrows; ++r) {
      if (!k.is_zero(a[r][col])) { piv = r; break; }
    }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    for (int r = row + 1; r < nrows; ++r) {
      if (k.is_zero(a[r][col])) continue;
      Rational f = k.div(a[r][col], a[row][col]);
      for (int c = col; c < ncols; ++c) k.submul(a[r][c], f, a[row][c]);
    }
    ++row;
  }
  return row;
}

/// Span helper: maintains a row-echelon basis of a subspace of k^n.
class Span {
public:
  Span(const Field& k, int dim) : k_(k), dim_(dim) {}

  int dim() const { return static_cast<int>(rows_.size()); }
  int ambient() const { return dim_; }

  /// Reduce v against the span; returns the residue (zero iff v in span).
  Vec reduce(Vec v) const {
    for (const auto& r : rows_) {
      int p = r.second;
      if (!k_.is_zero(v[p])) {
        Rational f = v[p];
        for (int c = 0; c < dim_; ++c) k_.submul(v[c], f, r.first[c]);
      }
    }
    return v;
  }

  bool contains(const Vec& v) const {
    Vec r = reduce(v);
    for (const auto& x : r)
      if (!k_.is_zero(x)) return false;
    return true;
  }

  /// Insert v; returns true if it enlarged the span.
  bool insert(Vec v) {
    v = reduce(std::move(v));
    int p = -1;
    for (int c = 0; c < dim_; ++c) {
      if (!k_.is_zero(v[c])) { p = c; break; }
    }
    if (p < 0) return false;
    Rational inv = k_.div(Rational(1), v[p]);
    for (int c = 0; c < dim_; ++c) v[c] = k_.mul(v[c], inv);
    // keep earlier rows reduced against the new pivot
    for (auto& r : rows_) {
      if (!k_.is_zero(r.first[p])) {
        Rational f = r.first[p];
        for (int c = 0; c < dim_; ++c) k_.submul(r.first[c], f, v[c]);
      }
    }
    rows_.push_back({std::move(v), p});
    return true;
  }

private:
  Field k_;
  int dim_;
  std::vector<std::pair<Vec, int>> rows_;  // (reduced vector, pivot col)
};

}  // namespace tstruct
