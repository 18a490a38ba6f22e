#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "lielab/character.hpp"
#include "lielab/errors.hpp"
#include "lielab/matrix.hpp"
#include "lielab/module.hpp"
#include "lielab/pbw.hpp"

namespace lielab {

/// Element of U_chi(L): a PBW combination with every exponent below p, tagged with its character.
template <class F>
class ReducedElement {
 public:
  ReducedElement(UEAElement<F> u, Character<F> chi) : u_(std::move(u)), chi_(std::move(chi)) {}

  const UEAElement<F>& element() const { return u_; }
  const Character<F>& chi() const { return chi_; }
  const typename UEAElement<F>::Terms& terms() const { return u_.terms(); }
  bool is_zero() const { return u_.is_zero(); }
  bool operator==(const ReducedElement& o) const { return u_ == o.u_ && chi_ == o.chi_; }

 private:
  UEAElement<F> u_;
  Character<F> chi_;
};

namespace detail {

template <class F>
void require_same_algebra(const Enveloping<F>& U, const Character<F>& chi) {
  if (U.labels() != chi.basis().labels() || !(U.ring() == chi.field()))
    throw DomainError("character and enveloping algebra live on different algebras or fields");
}

}  // namespace detail

/// Rewrites x^p -> chi(x)^p for root vectors and h^p -> h + chi(h)^p for coroots until all exponents are
/// below p. Both replacements differ from the original by a central element, so they may be applied inside
/// a PBW monomial and in any order.
template <class F>
ReducedElement<F> reduce(const UEAElement<F>& u, const Character<F>& chi) {
  const auto* U = u.algebra();
  if (!U) return ReducedElement<F>(u, chi);
  detail::require_same_algebra(*U, chi);
  const auto& f = U->ring();
  const std::uint32_t p = chi.p();
  const auto& basis = chi.basis();
  typename UEAElement<F>::Terms out;
  std::vector<std::pair<Monomial, typename F::Elem>> work(u.terms().begin(), u.terms().end());
  while (!work.empty()) {
    auto [m, c] = std::move(work.back());
    work.pop_back();
    std::size_t i = 0;
    while (i < m.size() && m[i] < p) ++i;
    if (i == m.size()) {
      U->add_term(out, m, c);
      continue;
    }
    const auto cp = f.mul(c, chi.pth_power(i));
    if (basis.is_cartan(i)) {
      Monomial keep = m;
      keep[i] = static_cast<std::uint16_t>(keep[i] - (p - 1));
      work.emplace_back(std::move(keep), c);
    }
    if (!f.is_zero(cp)) {
      m[i] = static_cast<std::uint16_t>(m[i] - p);
      work.emplace_back(std::move(m), cp);
    }
  }
  return ReducedElement<F>(U->from_terms(std::move(out)), chi);
}

template <class F>
ReducedElement<F> multiply_reduced(const ReducedElement<F>& a, const ReducedElement<F>& b) {
  if (!(a.chi() == b.chi())) throw DomainError("reduced elements carry different characters");
  return reduce(a.element() * b.element(), a.chi());
}

/// Representation matrix of an arbitrary element of U(L). Monomials are grouped into a trie over the basis
/// order and each level is evaluated by Horner's rule, so every product is sparse times dense.
template <class F>
Matrix<F> image_of(const UEAElement<F>& u, const RepModule<F>& M) {
  const auto& f = M.field;
  const std::size_t d = M.dim();
  if (u.is_zero()) return Matrix<F>(f, d, d);
  std::vector<std::pair<const Monomial*, typename F::Elem>> terms;
  for (const auto& [m, c] : u.terms()) {
    if (m.size() != M.actions.size()) throw ShapeError("element and module belong to different algebras");
    terms.emplace_back(&m, c);
  }
  struct Eval {
    const RepModule<F>& M;
    std::size_t d;
    Matrix<F> run(std::size_t k, std::vector<std::pair<const Monomial*, typename F::Elem>> group) const {
      const auto& f = M.field;
      if (k == M.actions.size()) {
        auto s = f.zero();
        for (const auto& t : group) s = f.add(s, t.second);
        return Matrix<F>::scalar(f, d, s);
      }
      std::map<std::uint16_t, std::vector<std::pair<const Monomial*, typename F::Elem>>> by_exp;
      for (auto& t : group) by_exp[(*t.first)[k]].push_back(t);
      if (by_exp.size() == 1 && by_exp.begin()->first == 0) return run(k + 1, std::move(by_exp.begin()->second));
      const std::uint16_t top = by_exp.rbegin()->first;
      Matrix<F> acc = run(k + 1, std::move(by_exp.rbegin()->second));
      for (int e = static_cast<int>(top) - 1; e >= 0; --e) {
        acc = M.actions[k].times_dense(acc);
        auto it = by_exp.find(static_cast<std::uint16_t>(e));
        if (it != by_exp.end()) acc = acc + run(k + 1, std::move(it->second));
      }
      return acc;
    }
  };
  return Eval{M, d}.run(0, std::move(terms));
}

/// Image of a reduced element; the module must carry the same character.
template <class F>
Matrix<F> image_matrix(const ReducedElement<F>& a, const RepModule<F>& M) {
  if (!(a.chi() == M.chi)) throw DomainError("module character differs from the character of the element");
  return image_of(a.element(), M);
}

/// Enumerates all monomials with exponents below p in mixed radix, first basis index fastest.
inline std::vector<Monomial> reduced_monomials(std::size_t n, std::uint32_t p, const std::vector<std::size_t>& support) {
  std::size_t count = 1;
  for (std::size_t k = 0; k < support.size(); ++k) count *= p;
  std::vector<Monomial> out;
  out.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    Monomial m(n, 0);
    std::size_t r = idx;
    for (auto s : support) {
      m[s] = static_cast<std::uint16_t>(r % p);
      r /= p;
    }
    out.push_back(std::move(m));
  }
  return out;
}

template <class F>
std::string monomial_label(const Enveloping<F>& U, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += ' ';
    s += U.labels()[i];
    if (m[i] != 1) s += '^' + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

/// Largest p^n for which the left-regular module of U_chi is built.
inline constexpr std::uint64_t kLeftRegularLimit = 500;

/// U_chi(L) acting on itself by left multiplication, on the reduced PBW monomials.
template <class F>
RepModule<F> left_regular_module(const Enveloping<F>& U, const Character<F>& chi) {
  detail::require_same_algebra(U, chi);
  const std::size_t n = U.n();
  const std::uint32_t p = chi.p();
  std::uint64_t size = 1;
  for (std::size_t k = 0; k < n; ++k) {
    size *= p;
    if (size > kLeftRegularLimit)
      throw InfeasibleError("left-regular module of dimension p^" + std::to_string(n) + " exceeds the limit of " +
                            std::to_string(kLeftRegularLimit));
  }
  std::vector<std::size_t> all(n);
  for (std::size_t k = 0; k < n; ++k) all[k] = k;
  const auto monos = reduced_monomials(n, p, all);
  auto index = [&](const Monomial& m) {
    std::size_t idx = 0;
    for (std::size_t k = n; k-- > 0;) idx = idx * p + m[k];
    return idx;
  };
  RepModule<F> M(U.ring(), chi.basis_ptr(), chi);
  for (const auto& m : monos) M.labels.push_back(monomial_label(U, m));
  for (std::size_t b = 0; b < n; ++b) {
    SparseMatrix<F> s(U.ring(), monos.size(), monos.size());
    for (std::size_t col = 0; col < monos.size(); ++col) {
      const auto r = reduce(U.gen(b) * U.monomial(monos[col], U.ring().one()), chi);
      for (const auto& [m, c] : r.terms()) s.add_to(index(m), col, c);
    }
    M.actions.push_back(std::move(s));
  }
  return M;
}

}  // namespace lielab
