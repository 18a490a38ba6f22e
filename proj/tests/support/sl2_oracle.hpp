#pragma once

// Closed-form sl_2 baby Verma matrices and a brute-force submodule search, over GF(p) with plain integers.

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<long long>>;  // row-major, entries in [0, p)

inline long long md(long long a, long long p) { return ((a % p) + p) % p; }

inline long long pw(long long a, long long e, long long p) {
  long long r = 1;
  a = md(a, p);
  while (e-- > 0) r = r * a % p;
  return r;
}

struct Sl2Verma {
  Mat f, h, e;
};

// Basis v_i = f^i v_0: f v_i = v_{i+1}, f v_{p-1} = chi(f)^p v_0, h v_i = (lambda - 2i) v_i,
// e v_i = i (lambda - i + 1) v_{i-1}.
inline Sl2Verma sl2_verma(long long p, long long lambda, long long chi_f) {
  Sl2Verma z{Mat(p, std::vector<long long>(p, 0)), Mat(p, std::vector<long long>(p, 0)),
             Mat(p, std::vector<long long>(p, 0))};
  for (long long i = 0; i < p; ++i) {
    if (i + 1 < p)
      z.f[i + 1][i] = 1;
    else
      z.f[0][i] = pw(chi_f, p, p);
    z.h[i][i] = md(lambda - 2 * i, p);
    if (i > 0) z.e[i - 1][i] = md(i * (lambda - i + 1), p);
  }
  return z;
}

inline std::vector<long long> apply(const Mat& m, const std::vector<long long>& v, long long p) {
  std::vector<long long> out(v.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = (out[i] + m[i][j] * v[j]) % p;
  return out;
}

// Reduced row echelon form of the rows; zero rows dropped.
inline Mat rref(Mat rows, long long p) {
  Mat out;
  const std::size_t n = rows.empty() ? 0 : rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const long long inv = pw(rows[r][c], p - 2, p);
    for (auto& x : rows[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const long long fct = rows[i][c];
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = md(rows[i][j] - fct * rows[r][j], p);
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

// Smallest subspace containing v and stable under every generator, as an RREF row basis.
inline Mat naive_spin(const std::vector<Mat>& gens, const std::vector<long long>& v, long long p) {
  Mat span = rref({v}, p);
  while (true) {
    Mat grown = span;
    for (const auto& b : span)
      for (const auto& g : gens) grown.push_back(apply(g, b, p));
    grown = rref(grown, p);
    if (grown.size() == span.size()) return span;
    span = grown;
  }
}

// Every proper nonzero submodule generated by a single line, by enumerating all lines of GF(p)^d.
inline std::set<Mat> cyclic_proper_submodules(const std::vector<Mat>& gens, std::size_t d, long long p) {
  std::set<Mat> found;
  std::vector<long long> v(d, 0);
  for (std::size_t lead = 0; lead < d; ++lead) {
    long long tails = 1;
    for (std::size_t k = lead + 1; k < d; ++k) tails *= p;
    for (long long t = 0; t < tails; ++t) {
      std::fill(v.begin(), v.end(), 0);
      v[lead] = 1;
      long long r = t;
      for (std::size_t k = lead + 1; k < d; ++k) {
        v[k] = r % p;
        r /= p;
      }
      auto s = naive_spin(gens, v, p);
      if (s.size() < d) found.insert(s);
    }
  }
  return found;
}

}  // namespace oracle
