#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lielab/errors.hpp"

namespace lielab {

/// Dense matrix over a runtime field F (PrimeField or ExtensionField). Row-major.
template <class F>
class Matrix {
 public:
  using Field = F;
  using Elem = typename F::Elem;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, field.one());
    return m;
  }

  static Matrix scalar(const F& field, std::size_t n, Elem c) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, c);
    return m;
  }

  static Matrix from_rows(const F& field, const std::vector<std::vector<Elem>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw ShapeError("ragged rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * c));
    }
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Elem at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Elem v) { data_[i * cols_ + j] = v; }
  void add_to(std::size_t i, std::size_t j, Elem v) {
    auto& x = data_[i * cols_ + j];
    x = field_.add(x, v);
  }

  std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  const std::vector<Elem>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw ShapeError("matrix product shape mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Elem* out = r.data_.data() + i * o.cols_;
      for (std::size_t k = 0; k < cols_; ++k) {
        const Elem a = at(i, k);
        if (field_.is_zero(a)) continue;
        const Elem* in = o.data_.data() + k * o.cols_;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          if (!field_.is_zero(in[j])) out[j] = field_.add(out[j], field_.mul(a, in[j]));
        }
      }
    }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], o.data_[i]);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    require_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], o.data_[i]);
    return r;
  }

  Matrix scaled(Elem c) const {
    Matrix r = *this;
    for (auto& x : r.data_) x = field_.mul(x, c);
    return r;
  }

  /// this += c * o
  void axpy(Elem c, const Matrix& o) {
    require_same_shape(o);
    if (field_.is_zero(c)) return;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (!field_.is_zero(o.data_[i])) data_[i] = field_.add(data_[i], field_.mul(c, o.data_[i]));
    }
  }

  Matrix power(std::uint64_t e) const {
    if (!square()) throw ShapeError("power of a non-square matrix");
    Matrix result = identity(field_, rows_);
    Matrix base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](Elem x) { return field_.is_zero(x); });
  }

  /// c if this == c * I.
  std::optional<Elem> scalar_value() const {
    if (!square()) return std::nullopt;
    if (rows_ == 0) return field_.zero();
    const Elem c = at(0, 0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (at(i, j) != (i == j ? c : field_.zero())) return std::nullopt;
    return c;
  }

  std::size_t nonzeros() const {
    return static_cast<std::size_t>(
        std::count_if(data_.begin(), data_.end(), [&](Elem x) { return !field_.is_zero(x); }));
  }

  double density() const {
    return data_.empty() ? 0.0 : static_cast<double>(nonzeros()) / static_cast<double>(data_.size());
  }

  std::vector<Elem> apply(std::span<const Elem> v) const {
    if (v.size() != cols_) throw ShapeError("matrix-vector shape mismatch");
    std::vector<Elem> out(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i) {
      Elem acc = field_.zero();
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!field_.is_zero(v[j]) && !field_.is_zero(at(i, j))) acc = field_.add(acc, field_.mul(at(i, j), v[j]));
      }
      out[i] = acc;
    }
    return out;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix shapes differ");
  }

  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

/// Reduced row echelon form in place; returns pivot columns. First-nonzero pivoting.
template <class F>
std::vector<std::size_t> rref_in_place(Matrix<F>& m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && f.is_zero(m.at(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      auto a = m.row(piv);
      auto b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const auto inv = f.inv(m.at(r, c));
    for (auto& x : m.row(r)) x = f.mul(x, inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const auto factor = m.at(i, c);
      if (f.is_zero(factor)) continue;
      auto dst = m.row(i);
      auto src = m.row(r);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!f.is_zero(src[j])) dst[j] = f.sub(dst[j], f.mul(factor, src[j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t dense_rank(Matrix<F> m) {
  // forward elimination only
  const F& f = m.field();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && f.is_zero(m.at(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      auto a = m.row(piv);
      auto b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const auto inv = f.inv(m.at(r, c));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const auto factor = f.mul(m.at(i, c), inv);
      if (f.is_zero(factor)) continue;
      auto dst = m.row(i);
      auto src = m.row(r);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!f.is_zero(src[j])) dst[j] = f.sub(dst[j], f.mul(factor, src[j]));
      }
    }
    ++r;
  }
  return r;
}

template <class F>
std::vector<std::vector<typename F::Elem>> nullspace(const Matrix<F>& m) {
  const F& f = m.field();
  Matrix<F> r = m;
  const auto pivots = rref_in_place(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename F::Elem>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::Elem> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(r.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
typename F::Elem det(const Matrix<F>& input) {
  if (!input.square()) throw ShapeError("determinant of a non-square matrix");
  const F& f = input.field();
  Matrix<F> m = input;
  auto d = f.one();
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && f.is_zero(m.at(piv, c))) ++piv;
    if (piv == n) return f.zero();
    if (piv != c) {
      auto a = m.row(piv);
      auto b = m.row(c);
      std::swap_ranges(a.begin(), a.end(), b.begin());
      d = f.neg(d);
    }
    const auto pv = m.at(c, c);
    d = f.mul(d, pv);
    const auto inv = f.inv(pv);
    for (std::size_t i = c + 1; i < n; ++i) {
      const auto factor = f.mul(m.at(i, c), inv);
      if (f.is_zero(factor)) continue;
      auto dst = m.row(i);
      auto src = m.row(c);
      for (std::size_t j = c; j < n; ++j) {
        if (!f.is_zero(src[j])) dst[j] = f.sub(dst[j], f.mul(factor, src[j]));
      }
    }
  }
  return d;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (!m.square()) throw ShapeError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const F& f = m.field();
  Matrix<F> aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
    aug.set(i, n + i, f.one());
  }
  const auto pivots = rref_in_place(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<F> out(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, aug.at(i, n + j));
  return out;
}

/// Incrementally built semi-echelon basis of a subspace of F^dim.
/// Each stored vector has a pivot entry equal to one; later vectors vanish on earlier pivots.
template <class F>
class EchelonBasis {
 public:
  using Elem = typename F::Elem;

  EchelonBasis(F field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  bool full() const { return vectors_.size() == dim_; }
  const std::vector<std::vector<Elem>>& vectors() const { return vectors_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Subtracts the projection onto the span; true if something nonzero remains.
  bool reduce(std::vector<Elem>& v) const {
    for (std::size_t k = 0; k < vectors_.size(); ++k) {
      const Elem c = v[pivots_[k]];
      if (field_.is_zero(c)) continue;
      const auto& b = vectors_[k];
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!field_.is_zero(b[j])) v[j] = field_.sub(v[j], field_.mul(c, b[j]));
      }
    }
    return std::any_of(v.begin(), v.end(), [&](Elem x) { return !field_.is_zero(x); });
  }

  bool contains(std::vector<Elem> v) const { return !reduce(v); }

  /// Adds v if independent; returns whether the span grew.
  bool insert(std::vector<Elem> v) {
    if (v.size() != dim_) throw ShapeError("vector length differs from ambient dimension");
    if (!reduce(v)) return false;
    std::size_t piv = 0;
    while (field_.is_zero(v[piv])) ++piv;
    const Elem inv = field_.inv(v[piv]);
    for (auto& x : v) x = field_.mul(x, inv);
    vectors_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

  /// Coordinates of a vector in the span with respect to the stored basis.
  std::optional<std::vector<Elem>> coordinates(std::vector<Elem> v) const {
    std::vector<Elem> coords(vectors_.size(), field_.zero());
    for (std::size_t k = 0; k < vectors_.size(); ++k) {
      const Elem c = v[pivots_[k]];
      coords[k] = c;
      if (field_.is_zero(c)) continue;
      const auto& b = vectors_[k];
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!field_.is_zero(b[j])) v[j] = field_.sub(v[j], field_.mul(c, b[j]));
      }
    }
    if (std::any_of(v.begin(), v.end(), [&](Elem x) { return !field_.is_zero(x); })) return std::nullopt;
    return coords;
  }

 private:
  F field_;
  std::size_t dim_;
  std::vector<std::vector<Elem>> vectors_;
  std::vector<std::size_t> pivots_;
};

}  // namespace lielab
