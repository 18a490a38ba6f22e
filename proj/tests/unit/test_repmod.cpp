#include <gtest/gtest.h>

#include <map>
#include <memory>

#include "lielab/extension_field.hpp"
#include "lielab/repmod.hpp"
#include "sl2_oracle.hpp"

using namespace lielab;

namespace {

using K = ExtensionField;

std::shared_ptr<const ChevalleyBasis> sl2() { return std::make_shared<const ChevalleyBasis>(RootSystem(Family::A, 1)); }

long long to_int(const K& f, K::Elem a) { return f.to_poly(a).at(0); }

oracle::Mat to_int(const SparseMatrix<K>& s) {
  oracle::Mat m(s.rows(), std::vector<long long>(s.cols(), 0));
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (const auto& [j, v] : s.row(i)) m[i][j] = to_int(s.field(), v);
  return m;
}

std::vector<long long> to_int(const K& f, const std::vector<K::Elem>& v) {
  std::vector<long long> out;
  for (auto a : v) out.push_back(to_int(f, a));
  return out;
}

bool subset_of(const oracle::Mat& a, const oracle::Mat& b, long long p) {
  auto both = b;
  both.insert(both.end(), a.begin(), a.end());
  return oracle::rref(both, p).size() == b.size();
}

}  // namespace

TEST(BabyVerma, MatchesClosedFormSl2) {
  const K f = K::prime(7);
  for (long long chi_f : {0, 1, 3})
    for (long long lambda = 0; lambda < 7; ++lambda) {
      auto chi = Character<K>::parse(sl2(), f, "f=" + std::to_string(chi_f));
      const auto Z = build_baby_verma(chi, Weight<K>{f.from_int(lambda)});
      const auto o = oracle::sl2_verma(7, lambda, chi_f);
      // basis order (f, h, e); module basis f^i in order i = 0..p-1
      EXPECT_EQ(to_int(Z.actions[0]), o.f);
      EXPECT_EQ(to_int(Z.actions[1]), o.h);
      EXPECT_EQ(to_int(Z.actions[2]), o.e);
    }
}

TEST(BabyVerma, InvariantsHoldAcrossTypes) {
  const K f = K::artin_schreier(7, 1);
  for (auto [fam, rank, text] : {std::tuple{Family::A, 1, "h1=1"}, std::tuple{Family::A, 2, "h1=1,h2=1"},
                                 std::tuple{Family::A, 2, "x(e2-e1)=1,x(e3-e2)=1"}}) {
    auto B = std::make_shared<const ChevalleyBasis>(RootSystem(fam, rank));
    const auto chi = Character<K>::parse(B, f, text);
    const auto weights = compatible_weights(chi);
    ASSERT_FALSE(weights.empty());
    const auto Z = build_baby_verma(chi, weights.front());
    std::size_t expect = 1;
    for (std::size_t k = 0; k < B->m(); ++k) expect *= 7;
    EXPECT_EQ(Z.dim(), expect);
    EXPECT_TRUE(verify_module(Z).ok) << text;
    // the highest vector 1 (x) 1 is index 0 and is killed by every positive root vector
    for (std::size_t b = 0; b < B->dim(); ++b)
      if (B->is_positive(b))
        for (std::size_t i = 0; i < Z.dim(); ++i) EXPECT_TRUE(f.is_zero(Z.actions[b].at(i, 0)));
  }
}

TEST(BabyVerma, RejectsIncompatibleWeightNamingTheCoroot) {
  const K f = K::prime(7);
  auto chi = Character<K>::parse(sl2(), f, "h=1");
  try {
    build_baby_verma(chi, Weight<K>{f.from_int(2)});
    FAIL() << "expected a domain error";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("h1"), std::string::npos);
  }
  EXPECT_THROW(build_baby_verma(Character<K>::parse(sl2(), f, "e=1"), Weight<K>{0}), DomainError);
  EXPECT_TRUE(compatible_weights(chi).empty());
}

TEST(ArtinSchreier, RootsSolveTheEquation) {
  for (const K& f : {K::prime(7), K::artin_schreier(7, 1), K::artin_schreier(11, 1)}) {
    for (std::uint32_t c = 0; c < 3; ++c) {
      const auto roots = artin_schreier_roots(f, f.from_int(c));
      if (f.degree() == 1 && c != 0) {
        EXPECT_TRUE(roots.empty());
        continue;
      }
      ASSERT_EQ(roots.size(), f.characteristic());
      for (auto x : roots) EXPECT_EQ(f.sub(f.pow(x, f.characteristic()), x), f.from_int(c));
    }
  }
}

TEST(Spin, TrivialAndIdempotent) {
  const K f = K::prime(7);
  const auto T = trivial_module(sl2(), f);
  EXPECT_EQ(spin(T, {f.from_int(3)}).size(), 1u);
  EXPECT_THROW(spin(T, {0}), DomainError);
  const auto Z = build_baby_verma(Character<K>::parse(sl2(), f, "0"), Weight<K>{f.from_int(2)});
  std::vector<K::Elem> v(7, 0);
  v[4] = f.one();
  const auto S = spin(Z, v);
  EXPECT_LT(S.size(), 7u);
  for (const auto& w : S.vectors()) {
    EXPECT_EQ(spin(Z, w).size(), S.size());
    for (const auto& A : Z.actions) EXPECT_TRUE(S.contains(A.apply(w)));
  }
}

TEST(IsSimple, AgreesWithBruteForceSubmoduleSearch) {
  const K f = K::prime(7);
  for (long long chi_f : {0, 1})
    for (long long lambda : {0, 3, 6}) {
      const auto o = oracle::sl2_verma(7, lambda, chi_f);
      const auto subs = oracle::cyclic_proper_submodules({o.f, o.e}, 7, 7);
      const auto Z = build_baby_verma(Character<K>::parse(sl2(), f, "f=" + std::to_string(chi_f)),
                                      Weight<K>{f.from_int(lambda)});
      const auto v = is_simple(Z);
      EXPECT_NE(v.verdict, Simplicity::Inconclusive);
      EXPECT_EQ(v.verdict == Simplicity::Simple, subs.empty()) << chi_f << " " << lambda;
      if (v.verdict == Simplicity::NotSimple) {
        const auto S = oracle::naive_spin({o.f, o.e}, to_int(f, v.witness), 7);
        EXPECT_LT(S.size(), 7u);
        bool inside = false;
        for (const auto& T : subs) inside = inside || subset_of(S, T, 7);
        EXPECT_TRUE(inside);
      }
    }
}

TEST(IsSimple, NortonPathAgreesWithTheProbe) {
  const K f = K::prime(7);
  EXPECT_EQ(is_simple(trivial_module(sl2(), f)).verdict, Simplicity::Simple);
  SimplicityOptions norton;
  norton.singular_probe = false;
  const auto ad = adjoint_module(sl2(), f);
  EXPECT_TRUE(verify_module(ad).ok);
  EXPECT_EQ(is_simple(ad).verdict, Simplicity::Simple);
  EXPECT_EQ(is_simple(ad, norton).verdict, Simplicity::Simple);
  auto B = std::make_shared<const ChevalleyBasis>(RootSystem(Family::C, 2));
  EXPECT_EQ(is_simple(adjoint_module(B, f), norton).verdict, Simplicity::Simple);
  for (long long chi_f : {0, 1})
    for (long long lambda : {0, 3, 6}) {
      const auto Z = build_baby_verma(Character<K>::parse(sl2(), f, "f=" + std::to_string(chi_f)),
                                      Weight<K>{f.from_int(lambda)});
      const auto a = is_simple(Z), b = is_simple(Z, norton);
      EXPECT_EQ(a.verdict, b.verdict) << chi_f << " " << lambda << " " << b.method;
      if (b.verdict == Simplicity::NotSimple) EXPECT_FALSE(spin(Z, b.witness).full());
    }
}

TEST(SimpleDimensions, Sl2RestrictedGivesOneThroughP) {
  const K f = K::prime(7);
  const auto res = simple_dimensions(Character<K>::parse(sl2(), f, "0"));
  ASSERT_EQ(res.size(), 7u);
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(res[i].simple_dim, static_cast<std::size_t>(f.to_poly(res[i].lambda[0]).at(0)) + 1);
    EXPECT_TRUE(res[i].verified);
  }
}

TEST(SimpleDimensions, Sl2NonzeroCharactersGiveP) {
  for (std::uint32_t p : {7u, 11u}) {
    for (const std::string text : {"f=1", "h=1"}) {
      const K f = text == "h=1" ? K::artin_schreier(p, 1) : K::prime(p);
      const auto res = simple_dimensions(Character<K>::parse(sl2(), f, text));
      ASSERT_EQ(res.size(), p);
      for (const auto& r : res) {
        EXPECT_EQ(r.simple_dim, p) << text;
        EXPECT_TRUE(r.verma_simple);
      }
    }
  }
}

TEST(SimpleDimensions, OverBudgetIsAnError) {
  const K f = K::prime(7);
  auto B = std::make_shared<const ChevalleyBasis>(RootSystem(Family::C, 3));
  EXPECT_THROW(simple_dimensions(Character<K>(B, f)), InfeasibleError);
}

TEST(Decomposition, LeftRegularSl2SplitsIntoSevenSquaredFactors) {
  const K f = K::artin_schreier(7, 1);
  const auto chi = Character<K>::parse(sl2(), f, "h=1");
  Enveloping<K> U(f, chi.basis().table());
  const auto factors = composition_factors(left_regular_module(U, chi));
  EXPECT_EQ(factors.size(), 49u);
  std::map<K::Elem, int> by_weight;
  for (const auto& F : factors) {
    EXPECT_EQ(F.dim(), 7u);
    const auto w = highest_weight(F);
    ASSERT_TRUE(w);
    ++by_weight[w->at(0)];
  }
  EXPECT_EQ(by_weight.size(), 7u);
  for (const auto& [w, k] : by_weight) EXPECT_EQ(k, 7);
}

TEST(ModuleBundle, RoundTripReverifies) {
  const K f = K::artin_schreier(7, 1);
  const auto chi = Character<K>::parse(sl2(), f, "h=1");
  const auto Z = build_baby_verma(chi, compatible_weights(chi)[2]);
  const auto j = export_module_json(Z);
  const auto back = import_module_json(j);
  EXPECT_EQ(back.labels, Z.labels);
  for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(back.actions[b], Z.actions[b]);
  auto broken = j;
  broken["actions"][0]["entries"][0][2] = "5";
  EXPECT_THROW(import_module_json(broken), DomainError);
  EXPECT_THROW(import_module_json(nlohmann::json::parse("{\"format\": 3}")), ParseError);
}
