#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "lielab/extension_field.hpp"
#include "lielab/matrix.hpp"
#include "lielab/prime_field.hpp"
#include "lielab/sparse.hpp"

using namespace lielab;

namespace {

// Naive polynomial product mod a monic f, coefficients low to high. Independent of the library.
std::vector<std::uint32_t> oracle_mulmod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                         const std::vector<std::uint32_t>& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  std::vector<std::uint64_t> prod(2 * k, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  for (std::size_t d = prod.size(); d-- > k;) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - c) * f[i]) % p;
  }
  std::vector<std::uint32_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return out;
}

Matrix<PrimeField> random_matrix(const PrimeField& f, std::size_t r, std::size_t c, double fill, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<std::uint32_t> v(1, f.characteristic() - 1);
  Matrix<PrimeField> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (u(rng) < fill) m.set(i, j, v(rng));
  return m;
}

}  // namespace

TEST(PrimeField, InverseExamples) {
  EXPECT_EQ(inv(FieldElement(3, 7)), FieldElement(5, 7));
  EXPECT_EQ(inv(FieldElement(4, 7)), FieldElement(2, 7));
  for (std::uint32_t p : {7u, 11u, 13u}) EXPECT_EQ(inv(FieldElement(1, p)), FieldElement(1, p));
  EXPECT_THROW(inv(FieldElement(0, 7)), DivisionByZero);
  EXPECT_THROW(inv(FieldElement(14, 7)), DivisionByZero);
}

TEST(PrimeField, RejectsCompositeModulus) {
  EXPECT_THROW(PrimeField(9), DomainError);
  EXPECT_THROW(FieldElement(1, 7) + FieldElement(1, 11), DomainError);
}

TEST(PrimeField, FuzzedAxioms) {
  std::mt19937 rng(1);
  for (std::uint32_t p : {7u, 11u, 13u, 101u, 65521u}) {
    PrimeField f(p);
    std::uniform_int_distribution<std::int64_t> d(-5 * static_cast<std::int64_t>(p), 5 * static_cast<std::int64_t>(p));
    for (int it = 0; it < 500; ++it) {
      const auto a = f.from_int(d(rng)), b = f.from_int(d(rng)), c = f.from_int(d(rng));
      EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      EXPECT_EQ(f.mul(a, b), f.mul(b, a));
      EXPECT_EQ(f.add(a, b), f.add(b, a));
      EXPECT_EQ(f.add(a, f.neg(a)), 0u);
      if (a != 0) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
        // brute-force inverse
        std::uint32_t brute = 0;
        if (p < 200)
          for (std::uint32_t x = 1; x < p; ++x)
            if (std::uint64_t{a} * x % p == 1) brute = x;
        if (p < 200) EXPECT_EQ(f.inv(a), brute);
      }
    }
  }
}

TEST(ExtensionField, ArtinSchreierGeneratorSolvesEquation) {
  for (std::uint32_t p : {7u, 11u}) {
    for (std::uint32_t c : {1u, 3u}) {
      auto K = ExtensionField::artin_schreier(p, c);
      EXPECT_EQ(K.degree(), p);
      const auto t = K.generator();
      EXPECT_EQ(K.sub(K.pow(t, p), t), K.from_int(c));
      // the other roots are t + j
      for (std::uint32_t j = 0; j < p; ++j) {
        const auto r = K.add(t, K.from_int(j));
        EXPECT_EQ(K.sub(K.pow(r, p), r), K.from_int(c));
      }
    }
  }
  EXPECT_TRUE(ExtensionField::artin_schreier(7, 1).table_backed());
  EXPECT_FALSE(ExtensionField::artin_schreier(11, 1).table_backed());
}

TEST(ExtensionField, MultiplicationMatchesNaivePolynomialOracle) {
  std::mt19937 rng(7);
  for (auto K : {ExtensionField::artin_schreier(7, 1), ExtensionField::artin_schreier(11, 2),
                 ExtensionField(13, {2, 1, 1})}) {
    const auto p = K.characteristic();
    std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
    for (int it = 0; it < 300; ++it) {
      std::vector<std::uint32_t> a(K.degree()), b(K.degree());
      for (auto& x : a) x = d(rng);
      for (auto& x : b) x = d(rng);
      const auto ea = K.from_poly(a), eb = K.from_poly(b);
      EXPECT_EQ(K.to_poly(ea), a);
      EXPECT_EQ(K.to_poly(K.mul(ea, eb)), oracle_mulmod(a, b, K.modulus(), p));
      if (!K.is_zero(ea)) EXPECT_EQ(K.mul(ea, K.inv(ea)), K.one());
      EXPECT_EQ(K.mul(ea, K.add(eb, K.one())), K.add(K.mul(ea, eb), ea));
    }
  }
}

TEST(ExtensionField, IrreducibilityAgreesWithRootSearchOnQuadratics) {
  const std::uint32_t p = 7;
  for (std::uint32_t a = 0; a < p; ++a) {
    for (std::uint32_t b = 0; b < p; ++b) {
      bool has_root = false;
      for (std::uint32_t x = 0; x < p; ++x) has_root |= (x * x + a * x + b) % p == 0;
      EXPECT_EQ(is_irreducible(p, {b, a, 1}), !has_root);
    }
  }
}

TEST(Matrix, RankExamples) {
  PrimeField f(7);
  EXPECT_EQ(rank(Matrix<PrimeField>::identity(f, 5)), 5u);
  EXPECT_EQ(rank(Matrix<PrimeField>(f, 4, 6)), 0u);
  // 49 elementary matrices E_ij of size 7, flattened as rows
  Matrix<PrimeField> e(f, 49, 49);
  for (std::size_t k = 0; k < 49; ++k) e.set(k, k, 1);
  EXPECT_EQ(rank(e), 49u);
}

TEST(Matrix, NullspaceAndDetExamples) {
  PrimeField f(7);
  EXPECT_TRUE(nullspace(Matrix<PrimeField>::identity(f, 4)).empty());
  EXPECT_EQ(nullspace(Matrix<PrimeField>(f, 2, 3)).size(), 3u);
  auto d = Matrix<PrimeField>::identity(f, 4);
  d.set(0, 0, 0);
  const auto ns = nullspace(d);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_EQ(ns[0], (std::vector<std::uint32_t>{1, 0, 0, 0}));
  EXPECT_EQ(det(Matrix<PrimeField>::identity(f, 3)), 1u);
  EXPECT_EQ(det(Matrix<PrimeField>::from_rows(f, {{1, 2}, {1, 2}})), 0u);
  EXPECT_EQ(det(Matrix<PrimeField>::from_rows(f, {{2, 0}, {0, 3}})), 6u);
  EXPECT_THROW(det(Matrix<PrimeField>(f, 2, 3)), ShapeError);
}

TEST(Matrix, RandomRankIsTransposeInvariantAndSparseAgreesWithDense) {
  std::mt19937 rng(42);
  PrimeField f(7);
  for (int it = 0; it < 200; ++it) {
    const std::size_t r = 1 + rng() % 30, c = 1 + rng() % 30;
    const double fill = (it % 3 == 0) ? 0.05 : 0.4;
    const auto m = random_matrix(f, r, c, fill, rng);
    const auto rk = dense_rank(m);
    EXPECT_EQ(rk, sparse_rank(SparseMatrix<PrimeField>::from_dense(m)));
    EXPECT_EQ(rk, rank(m.transpose()));
    EXPECT_LE(rk, std::min(r, c));
    const auto ns = nullspace(m);
    EXPECT_EQ(ns.size(), c - rk);
    for (const auto& v : ns) {
      for (auto x : m.apply(v)) EXPECT_EQ(x, 0u);
    }
    if (!ns.empty()) {
      auto stacked = Matrix<PrimeField>::from_rows(f, ns);
      EXPECT_EQ(rank(stacked), ns.size());
    }
  }
}

TEST(Matrix, RandomSquareDetVsNullspace) {
  std::mt19937 rng(3);
  PrimeField f(11);
  int singular = 0;
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + rng() % 6;
    const auto m = random_matrix(f, n, n, 0.5, rng);
    const bool invertible = det(m) != 0;
    EXPECT_EQ(invertible, nullspace(m).empty());
    EXPECT_EQ(invertible, inverse(m).has_value());
    if (invertible) {
      EXPECT_EQ(*inverse(m) * m, (Matrix<PrimeField>::identity(f, n)));
    } else {
      ++singular;
    }
  }
  EXPECT_GT(singular, 0);
}

TEST(Matrix, ExtensionFieldLinearAlgebra) {
  auto K = ExtensionField::artin_schreier(7, 1);
  std::mt19937 rng(5);
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = 2 + rng() % 5;
    Matrix<ExtensionField> m(K, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, K.element_at(rng() % K.size()));
    EXPECT_EQ(det(m) != K.zero(), nullspace(m).empty());
    EXPECT_EQ(dense_rank(m), sparse_rank(SparseMatrix<ExtensionField>::from_dense(m)));
  }
}

TEST(EchelonBasis, SpanMembership) {
  PrimeField f(7);
  EchelonBasis<PrimeField> b(f, 3);
  EXPECT_TRUE(b.insert({1, 2, 3}));
  EXPECT_TRUE(b.insert({0, 1, 1}));
  EXPECT_FALSE(b.insert({2, 5, 0}));  // 2*(1,2,3) + (0,1,1)
  const auto coords = b.coordinates({1, 3, 4});
  ASSERT_TRUE(coords.has_value());
  EXPECT_FALSE(b.contains({0, 0, 1}));
}
