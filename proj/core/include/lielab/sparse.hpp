#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lielab/matrix.hpp"

namespace lielab {

/// Row-compressed sparse matrix; each row holds (column, value) pairs sorted by column, no zeros.
template <class F>
class SparseMatrix {
 public:
  using Elem = typename F::Elem;
  using Entry = std::pair<std::uint32_t, Elem>;
  using Row = std::vector<Entry>;

  SparseMatrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), cols_(cols), rows_(rows) {}

  static SparseMatrix from_dense(const Matrix<F>& m) {
    SparseMatrix s(m.field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m.field().is_zero(m.at(i, j))) s.rows_[i].emplace_back(static_cast<std::uint32_t>(j), m.at(i, j));
    return s;
  }

  static SparseMatrix identity(const F& field, std::size_t n) {
    SparseMatrix s(field, n, n);
    for (std::size_t i = 0; i < n; ++i) s.rows_[i].emplace_back(static_cast<std::uint32_t>(i), field.one());
    return s;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const Row& row(std::size_t i) const { return rows_[i]; }

  /// Accumulates v into (i, j). Keeps rows sorted; intended for construction.
  void add_to(std::size_t i, std::size_t j, Elem v) {
    if (field_.is_zero(v)) return;
    auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), static_cast<std::uint32_t>(j),
                               [](const Entry& e, std::uint32_t c) { return e.first < c; });
    if (it != r.end() && it->first == j) {
      it->second = field_.add(it->second, v);
      if (field_.is_zero(it->second)) r.erase(it);
    } else {
      r.insert(it, Entry{static_cast<std::uint32_t>(j), v});
    }
  }

  void set_row(std::size_t i, Row r) { rows_[i] = std::move(r); }

  Elem at(std::size_t i, std::size_t j) const {
    const auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), static_cast<std::uint32_t>(j),
                               [](const Entry& e, std::uint32_t c) { return e.first < c; });
    return (it != r.end() && it->first == j) ? it->second : field_.zero();
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  Matrix<F> to_dense() const {
    Matrix<F> m(field_, rows(), cols_);
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : rows_[i]) m.set(i, j, v);
    return m;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(field_, cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : rows_[i]) t.rows_[j].emplace_back(static_cast<std::uint32_t>(i), v);
    return t;
  }

  /// y = A v
  std::vector<Elem> apply(std::span<const Elem> v) const {
    if (v.size() != cols_) throw ShapeError("sparse matrix-vector shape mismatch");
    std::vector<Elem> out(rows(), field_.zero());
    for (std::size_t i = 0; i < rows(); ++i) {
      Elem acc = field_.zero();
      for (const auto& [j, a] : rows_[i]) {
        if (!field_.is_zero(v[j])) acc = field_.add(acc, field_.mul(a, v[j]));
      }
      out[i] = acc;
    }
    return out;
  }

  /// A * D for a dense D.
  Matrix<F> times_dense(const Matrix<F>& d) const {
    if (cols_ != d.rows()) throw ShapeError("sparse-dense product shape mismatch");
    Matrix<F> out(field_, rows(), d.cols());
    for (std::size_t i = 0; i < rows(); ++i) {
      auto dst = out.row(i);
      for (const auto& [k, a] : rows_[i]) {
        auto src = d.row(k);
        for (std::size_t j = 0; j < d.cols(); ++j) {
          if (!field_.is_zero(src[j])) dst[j] = field_.add(dst[j], field_.mul(a, src[j]));
        }
      }
    }
    return out;
  }

  SparseMatrix operator*(const SparseMatrix& o) const {
    if (cols_ != o.rows()) throw ShapeError("sparse product shape mismatch");
    SparseMatrix r(field_, rows(), o.cols_);
    std::vector<Elem> acc(o.cols_, field_.zero());
    std::vector<std::uint32_t> touched;
    for (std::size_t i = 0; i < rows(); ++i) {
      touched.clear();
      for (const auto& [k, a] : rows_[i]) {
        for (const auto& [j, b] : o.rows_[k]) {
          if (field_.is_zero(acc[j])) touched.push_back(j);
          acc[j] = field_.add(acc[j], field_.mul(a, b));
        }
      }
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      for (auto j : touched) {
        if (!field_.is_zero(acc[j])) r.rows_[i].emplace_back(j, acc[j]);
        acc[j] = field_.zero();
      }
    }
    return r;
  }

  SparseMatrix linear_combination(Elem a, const SparseMatrix& o, Elem b) const {
    if (rows() != o.rows() || cols_ != o.cols_) throw ShapeError("sparse shapes differ");
    SparseMatrix r(field_, rows(), cols_);
    for (std::size_t i = 0; i < rows(); ++i) {
      const auto& x = rows_[i];
      const auto& y = o.rows_[i];
      std::size_t p = 0, q = 0;
      while (p < x.size() || q < y.size()) {
        std::uint32_t c;
        Elem v;
        if (q == y.size() || (p < x.size() && x[p].first < y[q].first)) {
          c = x[p].first;
          v = field_.mul(a, x[p++].second);
        } else if (p == x.size() || y[q].first < x[p].first) {
          c = y[q].first;
          v = field_.mul(b, y[q++].second);
        } else {
          c = x[p].first;
          v = field_.add(field_.mul(a, x[p++].second), field_.mul(b, y[q++].second));
        }
        if (!field_.is_zero(v)) r.rows_[i].emplace_back(c, v);
      }
    }
    return r;
  }

  SparseMatrix operator+(const SparseMatrix& o) const { return linear_combination(field_.one(), o, field_.one()); }
  SparseMatrix operator-(const SparseMatrix& o) const {
    return linear_combination(field_.one(), o, field_.neg(field_.one()));
  }

  bool operator==(const SparseMatrix& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }

  bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.empty(); });
  }

 private:
  F field_;
  std::size_t cols_;
  std::vector<Row> rows_;
};

/// Rank by sparse row elimination. Pivot rows are kept normalised and indexed by leading column.
template <class F>
std::size_t sparse_rank(const SparseMatrix<F>& m) {
  using Elem = typename F::Elem;
  using Row = typename SparseMatrix<F>::Row;
  const F& f = m.field();
  std::vector<Row> pivot_rows(m.cols());
  std::vector<bool> has_pivot(m.cols(), false);
  std::size_t rank = 0;
  std::vector<Elem> dense(m.cols(), f.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Row& r = m.row(i);
    if (r.empty()) continue;
    for (const auto& [j, v] : r) dense[j] = v;
    std::size_t lo = r.front().first;
    std::size_t hi = r.back().first + 1;
    bool placed = false;
    for (std::size_t c = lo; c < m.cols(); ++c) {
      if (c >= hi) break;
      if (f.is_zero(dense[c])) continue;
      if (has_pivot[c]) {
        const Elem factor = dense[c];
        for (const auto& [j, v] : pivot_rows[c]) {
          dense[j] = f.sub(dense[j], f.mul(factor, v));
          if (j + 1 > hi) hi = j + 1;
        }
        continue;
      }
      const Elem inv = f.inv(dense[c]);
      Row nr;
      for (std::size_t j = c; j < hi; ++j) {
        if (!f.is_zero(dense[j])) nr.emplace_back(static_cast<std::uint32_t>(j), f.mul(dense[j], inv));
      }
      pivot_rows[c] = std::move(nr);
      has_pivot[c] = true;
      ++rank;
      placed = true;
      std::fill(dense.begin() + static_cast<std::ptrdiff_t>(c), dense.begin() + static_cast<std::ptrdiff_t>(hi), f.zero());
      break;
    }
    if (!placed) std::fill(dense.begin() + static_cast<std::ptrdiff_t>(lo), dense.begin() + static_cast<std::ptrdiff_t>(hi), f.zero());
  }
  return rank;
}

/// Exact rank; sparse elimination below 10% density, dense otherwise. Both give the same number.
template <class F>
std::size_t rank(const Matrix<F>& m) {
  if (m.rows() > 0 && m.cols() > 0 && m.density() < 0.1) return sparse_rank(SparseMatrix<F>::from_dense(m));
  return dense_rank(m);
}

template <class F>
std::size_t rank(const SparseMatrix<F>& m) {
  return sparse_rank(m);
}

}  // namespace lielab
