#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wedge {

/// Dense row-major matrix over an exact field.
template <class K>
struct Matrix {
  using Scalar = typename K::Elem;

  int rows = 0;
  int cols = 0;
  std::vector<Scalar> a;

  Matrix() = default;
  Matrix(int r, int c, const K& f)
      : rows(r), cols(c), a(static_cast<size_t>(r) * c, f.zero()) {}

  Scalar& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Scalar& at(int r, int c) const {
    return a[static_cast<size_t>(r) * cols + c];
  }

  static Matrix identity(int n, const K& f) {
    Matrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  bool operator==(const Matrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

template <class K>
Matrix<K> mat_mul(const Matrix<K>& x, const Matrix<K>& y, const K& f) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
  Matrix<K> z(x.rows, y.cols, f);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const auto& xik = x.at(i, k);
      if (f.is_zero(xik)) continue;
      for (int j = 0; j < y.cols; ++j)
        z.at(i, j) = f.add(z.at(i, j), f.mul(xik, y.at(k, j)));
    }
  return z;
}

template <class K>
Matrix<K> mat_transpose(const Matrix<K>& x, const K& f) {
  Matrix<K> z(x.cols, x.rows, f);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
  return z;
}

/// Incremental row-echelon span. Rows are stored sparsely, pivot first and
/// normalized to 1; the pivot of each inserted vector is its first nonzero
/// coordinate, which makes every operation deterministic.
template <class K>
class EchelonBasis {
 public:
  using Scalar = typename K::Elem;
  using SparseRow = std::vector<std::pair<int, Scalar>>;

  EchelonBasis(const K& f, int len)
      : f_(&f), len_(len), pivot_of_(static_cast<size_t>(len), -1) {}

  int length() const { return len_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<SparseRow>& rows() const { return rows_; }

  /// Reduces v in place against the span. Returns true (and absorbs the
  /// reduced vector as a new pivot row) when v enlarges the span.
  bool insert(std::vector<Scalar>& v) {
    const K& f = *f_;
    for (int idx = 0; idx < len_; ++idx) {
      if (f.is_zero(v[static_cast<size_t>(idx)])) continue;
      int r = pivot_of_[static_cast<size_t>(idx)];
      if (r < 0) {
        // new pivot: normalize and compress
        Scalar c = f.inv(v[static_cast<size_t>(idx)]);
        SparseRow row;
        for (int j = idx; j < len_; ++j) {
          if (!f.is_zero(v[static_cast<size_t>(j)]))
            row.emplace_back(j, f.mul(c, v[static_cast<size_t>(j)]));
        }
        pivot_of_[static_cast<size_t>(idx)] = rank();
        rows_.push_back(std::move(row));
        return true;
      }
      Scalar c = v[static_cast<size_t>(idx)];
      for (const auto& [j, x] : rows_[static_cast<size_t>(r)])
        f.submul(v[static_cast<size_t>(j)], c, x);
    }
    return false;
  }

  /// Fully reduce v against the span without inserting.
  void reduce(std::vector<Scalar>& v) const {
    const K& f = *f_;
    for (int idx = 0; idx < len_; ++idx) {
      if (f.is_zero(v[static_cast<size_t>(idx)])) continue;
      int r = pivot_of_[static_cast<size_t>(idx)];
      if (r < 0) continue;
      Scalar c = v[static_cast<size_t>(idx)];
      for (const auto& [j, x] : rows_[static_cast<size_t>(r)])
        f.submul(v[static_cast<size_t>(j)], c, x);
    }
  }

 private:
  const K* f_;
  int len_;
  std::vector<SparseRow> rows_;
  std::vector<int> pivot_of_;
};

template <class K>
int mat_rank(const Matrix<K>& m, const K& f) {
  EchelonBasis<K> basis(f, m.cols);
  std::vector<typename K::Elem> v(static_cast<size_t>(m.cols), f.zero());
  int r = 0;
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) v[static_cast<size_t>(j)] = m.at(i, j);
    if (basis.insert(v)) ++r;
  }
  return r;
}

/// Basis of the right kernel {v : Mv = 0}, obtained by reducing the columns
/// of M left to right while tracking the combination that produced each
/// reduced column. Kernel vectors come out with coefficient 1 at their own
/// column and support only on earlier pivot columns.
template <class K>
std::vector<std::vector<typename K::Elem>> kernel_basis(const Matrix<K>& m,
                                                        const K& f) {
  using Scalar = typename K::Elem;
  struct PivotRow {
    std::vector<std::pair<int, Scalar>> val;   // reduced column, pivot first
    std::vector<std::pair<int, Scalar>> comb;  // expression in original cols
  };
  std::vector<PivotRow> pivots;
  std::vector<int> pivot_of(static_cast<size_t>(m.rows), -1);
  std::vector<std::vector<Scalar>> kernel;

  std::vector<Scalar> v(static_cast<size_t>(m.rows), f.zero());
  std::vector<Scalar> comb(static_cast<size_t>(m.cols), f.zero());
  for (int col = 0; col < m.cols; ++col) {
    for (int i = 0; i < m.rows; ++i) v[static_cast<size_t>(i)] = m.at(i, col);
    for (auto& c : comb) c = f.zero();
    comb[static_cast<size_t>(col)] = f.one();

    bool placed = false;
    for (int idx = 0; idx < m.rows; ++idx) {
      if (f.is_zero(v[static_cast<size_t>(idx)])) continue;
      int r = pivot_of[static_cast<size_t>(idx)];
      if (r < 0) {
        Scalar c = f.inv(v[static_cast<size_t>(idx)]);
        PivotRow row;
        for (int j = idx; j < m.rows; ++j)
          if (!f.is_zero(v[static_cast<size_t>(j)]))
            row.val.emplace_back(j, f.mul(c, v[static_cast<size_t>(j)]));
        for (int j = 0; j <= col; ++j)
          if (!f.is_zero(comb[static_cast<size_t>(j)]))
            row.comb.emplace_back(j, f.mul(c, comb[static_cast<size_t>(j)]));
        pivot_of[static_cast<size_t>(idx)] = static_cast<int>(pivots.size());
        pivots.push_back(std::move(row));
        placed = true;
        break;
      }
      Scalar c = v[static_cast<size_t>(idx)];
      for (const auto& [j, x] : pivots[static_cast<size_t>(r)].val)
        f.submul(v[static_cast<size_t>(j)], c, x);
      for (const auto& [j, x] : pivots[static_cast<size_t>(r)].comb)
        f.submul(comb[static_cast<size_t>(j)], c, x);
    }
    if (!placed) kernel.push_back(comb);
  }
  return kernel;
}

/// Inverse via Gauss-Jordan on [M | I]; nullopt when singular.
template <class K>
std::optional<Matrix<K>> mat_inverse(const Matrix<K>& m, const K& f) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square");
  int n = m.rows;
  Matrix<K> w = m;
  Matrix<K> inv = Matrix<K>::identity(n, f);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!f.is_zero(w.at(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(w.at(piv, j), w.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    }
    auto c = f.inv(w.at(col, col));
    for (int j = 0; j < n; ++j) {
      w.at(col, j) = f.mul(c, w.at(col, j));
      inv.at(col, j) = f.mul(c, inv.at(col, j));
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      auto x = w.at(r, col);
      if (f.is_zero(x)) continue;
      for (int j = 0; j < n; ++j) {
        f.submul(w.at(r, j), x, w.at(col, j));
        f.submul(inv.at(r, j), x, inv.at(col, j));
      }
    }
  }
  return inv;
}

}  // namespace wedge
