#include <gtest/gtest.h>

#include <random>

#include "lielab/chevalley.hpp"
#include "lielab/matrix.hpp"
#include "lielab/pbw.hpp"
#include "lielab/prime_field.hpp"

using namespace lielab;

namespace {

struct Sl2 {
  ModularLieAlgebra alg = make_algebra(Family::A, 1, 7);
  Enveloping<PrimeField> U{PrimeField(7), alg.table()};
  // order (f, h, e)
  UEAElement<PrimeField> f = U.gen(0), h = U.gen(1), e = U.gen(2);
};

UEAElement<PrimeField> random_element(const Enveloping<PrimeField>& U, std::mt19937& rng, int terms, int maxdeg) {
  auto out = U.zero();
  for (int t = 0; t < terms; ++t) {
    Monomial m(U.n(), 0);
    const int d = static_cast<int>(rng() % (maxdeg + 1));
    for (int k = 0; k < d; ++k) ++m[rng() % U.n()];
    out = out + U.monomial(m, U.ring().from_int(1 + rng() % 6));
  }
  return out;
}

// Image in the adjoint representation, built directly from the structure table.
Matrix<PrimeField> adjoint_image(const ModularLieAlgebra& alg, const UEAElement<PrimeField>& u) {
  const PrimeField f(alg.p());
  const std::size_t n = alg.n();
  std::vector<Matrix<PrimeField>> ad;
  for (std::size_t a = 0; a < n; ++a) {
    Matrix<PrimeField> m(f, n, n);
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& t : alg.table().bracket(a, b)) m.set(t.index, b, f.from_int(t.coeff));
    ad.push_back(m);
  }
  Matrix<PrimeField> total(f, n, n);
  for (const auto& [mon, c] : u.terms()) {
    auto img = Matrix<PrimeField>::identity(f, n);
    for (std::size_t i = 0; i < n; ++i)
      for (int k = 0; k < mon[i]; ++k) img = img * ad[i];
    total.axpy(c, img);
  }
  return total;
}

}  // namespace

TEST(Pbw, Sl2Examples) {
  Sl2 s;
  EXPECT_EQ(s.e * s.f, s.f * s.e + s.h);
  EXPECT_EQ(s.U.format(s.e * s.f), "1 * h1 + 1 * x(e2-e1) x(e1-e2)");
  EXPECT_EQ(s.h * s.f, s.f * s.h - s.f.scaled(2));
  const auto u = s.e * s.h + s.f;
  EXPECT_EQ(u * s.U.one(), u);
  EXPECT_EQ(s.U.one() * u, u);
}

TEST(Pbw, CommutatorExamples) {
  Sl2 s;
  const auto u = s.e * s.e + s.h * s.f;
  EXPECT_TRUE(s.U.commutator(u, u).is_zero());
  EXPECT_EQ(s.U.commutator(s.e, s.f), s.h);
  const auto g = s.U.gen(2, 6) - s.f;  // e^{p-1} - f
  EXPECT_EQ(s.U.commutator(s.h, g), g.scaled(s.U.ring().from_int(-2)));
}

TEST(Pbw, CommutatorOfHWithGOverIntegersReducesToMinusTwoG) {
  const auto cb = structure_constants(RootSystem(Family::A, 1));
  Enveloping<IntegerRing> UZ(IntegerRing{}, cb->table());
  const auto g = UZ.gen(2, 6) - UZ.gen(0);
  const auto c = UZ.commutator(UZ.gen(1), g);
  // weights over Z: 2(p-1) on e^{p-1}, and +2 on -f
  EXPECT_EQ(c, UZ.gen(2, 6).scaled(12) + UZ.gen(0).scaled(2));
  Sl2 s;
  const auto gp = s.U.gen(2, 6) - s.f;
  EXPECT_EQ(reduce_integral(c, s.U), gp.scaled(s.U.ring().from_int(-2)));
}

TEST(Pbw, TruncatedExpandExamples) {
  Sl2 s;
  const auto a = s.e + s.U.scalar(3);
  const auto b = s.f * s.h + s.U.scalar(2);
  EXPECT_EQ(s.U.truncated_expand({a, b}, 0), s.U.scalar(6));
  EXPECT_EQ(s.U.truncated_expand({a, b, a}, 10), a * b * a);
  EXPECT_EQ(s.U.truncated_expand({s.e, s.f}, 1), s.h);
  // a single multiplication: truncating at the end agrees
  for (std::size_t cap = 0; cap < 4; ++cap)
    EXPECT_EQ(s.U.truncated_expand({a, b}, cap), s.U.truncate(a * b, cap));
}

TEST(Pbw, TruncationAfterEachStepCanDifferFromFinalTruncation) {
  Sl2 s;
  // f f is dropped at cap 1 before e acts; the full product e f f = f^2 e + 2 f h - 2 f keeps -2f.
  const auto stepwise = s.U.truncated_expand({s.e, s.f, s.f}, 1);
  const auto full = s.U.truncate(s.e * s.f * s.f, 1);
  EXPECT_TRUE(stepwise.is_zero());
  EXPECT_EQ(full, s.f.scaled(s.U.ring().from_int(-2)));
}

TEST(Pbw, AssociativityRandomized) {
  std::mt19937 rng(11);
  for (auto [f, l] : {std::pair{Family::A, 2}, std::pair{Family::C, 2}}) {
    const auto alg = make_algebra(f, l, 7);
    Enveloping<PrimeField> U(PrimeField(7), alg.table());
    for (int it = 0; it < 25; ++it) {
      const auto a = random_element(U, rng, 3, 3), b = random_element(U, rng, 3, 3), c = random_element(U, rng, 3, 3);
      EXPECT_EQ((a * b) * c, a * (b * c));
    }
  }
}

TEST(Pbw, AdjointImageIsMultiplicative) {
  std::mt19937 rng(12);
  for (auto [f, l] : {std::pair{Family::A, 2}, std::pair{Family::C, 2}}) {
    const auto alg = make_algebra(f, l, 7);
    Enveloping<PrimeField> U(PrimeField(7), alg.table());
    for (int it = 0; it < 15; ++it) {
      const auto a = random_element(U, rng, 3, 4), b = random_element(U, rng, 3, 4);
      EXPECT_EQ(adjoint_image(alg, a * b), adjoint_image(alg, a) * adjoint_image(alg, b));
    }
  }
}

TEST(Pbw, SymbolMapIsMultiplicative) {
  std::mt19937 rng(13);
  const auto alg = make_algebra(Family::A, 2, 11);
  Enveloping<PrimeField> U(PrimeField(11), alg.table());
  for (int it = 0; it < 30; ++it) {
    const auto a = random_element(U, rng, 3, 4), b = random_element(U, rng, 3, 4);
    if (a.is_zero() || b.is_zero()) continue;
    const auto ta = U.top_degree_part(a), tb = U.top_degree_part(b);
    // commutative product of the symbols
    UEAElement<PrimeField>::Terms sym;
    for (const auto& [ma, ca] : ta.terms())
      for (const auto& [mb, cb] : tb.terms()) {
        Monomial m(U.n());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint16_t>(ma[i] + mb[i]);
        U.add_term(sym, m, U.ring().mul(ca, cb));
      }
    const auto expected = U.from_terms(sym);
    if (expected.is_zero()) continue;
    EXPECT_EQ(U.top_degree_part(a * b), expected);
  }
}

TEST(Pbw, IntegralFormCommutesWithReduction) {
  std::mt19937 rng(14);
  const auto cb = structure_constants(RootSystem(Family::C, 2));
  Enveloping<IntegerRing> UZ(IntegerRing{}, cb->table());
  const auto alg = reduce_mod_p(cb, 7);
  Enveloping<PrimeField> U(PrimeField(7), alg.table());
  for (int it = 0; it < 20; ++it) {
    auto a = UZ.zero(), b = UZ.zero();
    for (int t = 0; t < 3; ++t) {
      Monomial m1(UZ.n(), 0), m2(UZ.n(), 0);
      for (int k = 0; k < 3; ++k) {
        ++m1[rng() % UZ.n()];
        ++m2[rng() % UZ.n()];
      }
      a = a + UZ.monomial(m1, static_cast<int>(rng() % 21) - 10);
      b = b + UZ.monomial(m2, static_cast<int>(rng() % 21) - 10);
    }
    EXPECT_EQ(reduce_integral(a * b, U), reduce_integral(a, U) * reduce_integral(b, U));
  }
}

TEST(Pbw, FormatParseRoundTrip) {
  std::mt19937 rng(15);
  const auto alg = make_algebra(Family::C, 2, 7);
  Enveloping<PrimeField> U(PrimeField(7), alg.table());
  for (int it = 0; it < 20; ++it) {
    const auto a = random_element(U, rng, 4, 4);
    EXPECT_EQ(U.parse(U.format(a)), a);
    EXPECT_EQ(U.format(U.parse(U.format(a))), U.format(a));
  }
  Sl2 s;
  EXPECT_EQ(s.U.parse("1 * x(e1-e2) x(e2-e1)"), s.e * s.f);
  EXPECT_EQ(s.U.parse("0"), s.U.zero());
  EXPECT_EQ(s.U.parse("3 * 1"), s.U.scalar(3));
  EXPECT_THROW(s.U.parse("2 * q"), ParseError);
  const auto cb = structure_constants(RootSystem(Family::A, 1));
  Enveloping<IntegerRing> UZ(IntegerRing{}, cb->table());
  const auto z = UZ.gen(2, 3) * UZ.gen(0, 2);
  EXPECT_EQ(UZ.parse(UZ.format(z)), z);
}

TEST(Pbw, MixedAlgebrasRejected) {
  Sl2 a, b;
  EXPECT_THROW(a.e * b.f, DomainError);
  EXPECT_THROW(a.e + b.f, DomainError);
}
