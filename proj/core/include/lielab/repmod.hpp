#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "lielab/character.hpp"
#include "lielab/errors.hpp"
#include "lielab/matrix.hpp"
#include "lielab/module.hpp"
#include "lielab/pbw.hpp"
#include "lielab/redenv.hpp"

namespace lielab {

/// Values lambda(h_1), ..., lambda(h_l) on the coroot basis.
template <class F>
using Weight = std::vector<typename F::Elem>;

template <class F>
std::uint64_t field_size(const F& f) {
  if constexpr (requires { f.size(); })
    return f.size();
  else
    return f.characteristic();
}

/// All x in F with x^p - x = c. Empty when the equation does not split over F.
template <class F>
std::vector<typename F::Elem> artin_schreier_roots(const F& f, typename F::Elem c) {
  const std::uint32_t p = f.characteristic();
  auto is_root = [&](typename F::Elem x) { return f.equal(f.sub(f.pow(x, p), x), c); };
  std::optional<typename F::Elem> base;
  if (f.is_zero(c)) base = f.zero();
  if constexpr (requires { f.generator(); }) {
    // In AS(p, a) the generator t has t^p - t = a, so c/a * t is a root whenever c/a lies in GF(p).
    if (!base) {
      const auto t = f.generator();
      const auto a = f.sub(f.pow(t, p), t);
      if (!f.is_zero(a) && is_root(f.mul(f.div(c, a), t))) base = f.mul(f.div(c, a), t);
    }
  }
  if (!base) {
    const std::uint64_t limit = std::min<std::uint64_t>(field_size(f), 1u << 20);
    for (std::uint64_t i = 0; i < limit && !base; ++i)
      if (is_root(f.element_at(i))) base = f.element_at(i);
  }
  std::vector<typename F::Elem> out;
  if (!base) return out;
  for (std::uint32_t j = 0; j < p; ++j) out.push_back(f.add(*base, f.from_int(j)));
  return out;
}

/// Every weight lambda with lambda(h_i)^p - lambda(h_i) = chi(h_i)^p, in lexicographic enumeration order.
template <class F>
std::vector<Weight<F>> compatible_weights(const Character<F>& chi) {
  const auto& B = chi.basis();
  std::vector<std::vector<typename F::Elem>> choices;
  for (int i = 0; i < B.rank(); ++i) choices.push_back(artin_schreier_roots(chi.field(), chi.pth_power(B.m() + i)));
  std::vector<Weight<F>> out{{}};
  for (const auto& ch : choices) {
    std::vector<Weight<F>> next;
    for (const auto& w : out)
      for (auto x : ch) {
        auto v = w;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

/// Z_chi(lambda): induced from the one-dimensional Borel module, basis = monomials in negative root vectors
/// with exponents below p. Columns are u * (monomial (x) 1) straightened and reduced.
template <class F>
RepModule<F> build_baby_verma(const Enveloping<F>& U, const Character<F>& chi, const Weight<F>& lambda) {
  detail::require_same_algebra(U, chi);
  const auto& B = chi.basis();
  const auto& f = chi.field();
  const std::uint32_t p = chi.p();
  const std::size_t n = B.dim(), m = B.m(), l = static_cast<std::size_t>(B.rank());
  if (!chi.in_standard_position())
    throw DomainError("character is not in standard position (nonzero on a positive root vector); "
                      "conjugate it by a Weyl group element first");
  if (lambda.size() != l) throw ShapeError("weight needs one value per coroot");
  for (std::size_t i = 0; i < l; ++i) {
    const auto lhs = f.sub(f.pow(lambda[i], p), lambda[i]);
    if (!f.equal(lhs, chi.pth_power(m + i)))
      throw DomainError("weight incompatible with the character at coroot " + B.label(m + i) +
                        ": lambda^p - lambda != chi^p");
  }
  std::vector<std::size_t> neg(m);
  for (std::size_t k = 0; k < m; ++k) neg[k] = k;
  const auto monos = reduced_monomials(n, p, neg);
  auto index = [&](const Monomial& mo) {
    std::size_t idx = 0;
    for (std::size_t k = m; k-- > 0;) idx = idx * p + mo[k];
    return idx;
  };
  RepModule<F> M(f, chi.basis_ptr(), chi);
  for (const auto& mo : monos) M.labels.push_back(monomial_label(U, mo));
  for (std::size_t b = 0; b < n; ++b) {
    SparseMatrix<F> s(f, monos.size(), monos.size());
    for (std::size_t col = 0; col < monos.size(); ++col) {
      const auto prod = U.gen(b) * U.monomial(monos[col], f.one());
      for (const auto& [mo, c0] : prod.terms()) {
        bool kills = false;
        for (std::size_t k = m + l; k < n && !kills; ++k) kills = mo[k] != 0;
        if (kills) continue;
        auto c = c0;
        for (std::size_t i = 0; i < l; ++i)
          if (mo[m + i]) c = f.mul(c, f.pow(lambda[i], mo[m + i]));
        Monomial low = mo;
        for (std::size_t k = 0; k < m; ++k)
          while (low[k] >= p) {
            low[k] = static_cast<std::uint16_t>(low[k] - p);
            c = f.mul(c, chi.pth_power(k));
          }
        for (std::size_t k = m; k < n; ++k) low[k] = 0;
        s.add_to(index(low), col, c);
      }
    }
    M.actions.push_back(std::move(s));
  }
  return M;
}

template <class F>
RepModule<F> build_baby_verma(const Character<F>& chi, const Weight<F>& lambda) {
  Enveloping<F> U(chi.field(), chi.basis().table());
  return build_baby_verma(U, chi, lambda);
}

/// Submodule generated by v under the given generators (default: Chevalley generators), echelonised.
template <class F>
EchelonBasis<F> spin(const RepModule<F>& M, const std::vector<typename F::Elem>& v,
                     const std::vector<const SparseMatrix<F>*>& gens) {
  if (v.size() != M.dim()) throw ShapeError("vector length differs from module dimension");
  EchelonBasis<F> S(M.field, M.dim());
  if (!S.insert(v)) throw DomainError("cannot spin the zero vector");
  for (std::size_t k = 0; k < S.size() && !S.full(); ++k)
    for (const auto* g : gens) {
      S.insert(g->apply(S.vectors()[k]));
      if (S.full()) break;
    }
  return S;
}

template <class F>
std::vector<const SparseMatrix<F>*> generator_matrices(const RepModule<F>& M) {
  std::vector<const SparseMatrix<F>*> g;
  for (auto b : M.generators()) g.push_back(&M.actions[b]);
  return g;
}

template <class F>
EchelonBasis<F> spin(const RepModule<F>& M, const std::vector<typename F::Elem>& v) {
  return spin(M, v, generator_matrices(M));
}

/// Restriction to an invariant subspace, in the coordinates of its echelon basis.
template <class F>
RepModule<F> submodule(const RepModule<F>& M, const EchelonBasis<F>& S) {
  RepModule<F> R(M.field, M.basis, M.chi);
  const std::size_t s = S.size();
  for (std::size_t k = 0; k < s; ++k) R.labels.push_back("s" + std::to_string(k));
  for (const auto& A : M.actions) {
    SparseMatrix<F> r(M.field, s, s);
    for (std::size_t k = 0; k < s; ++k) {
      const auto c = S.coordinates(A.apply(S.vectors()[k]));
      if (!c) throw DomainError("subspace is not invariant");
      for (std::size_t i = 0; i < s; ++i) r.add_to(i, k, (*c)[i]);
    }
    R.actions.push_back(std::move(r));
  }
  return R;
}

/// M / S on the images of the standard basis vectors at the non-pivot positions of S.
template <class F>
RepModule<F> quotient(const RepModule<F>& M, const EchelonBasis<F>& S) {
  std::vector<bool> piv(M.dim(), false);
  for (auto c : S.pivots()) piv[c] = true;
  std::vector<std::size_t> keep, pos(M.dim(), 0);
  for (std::size_t i = 0; i < M.dim(); ++i)
    if (!piv[i]) {
      pos[i] = keep.size();
      keep.push_back(i);
    }
  RepModule<F> Q(M.field, M.basis, M.chi);
  for (auto i : keep) Q.labels.push_back(M.labels[i]);
  std::vector<typename F::Elem> e(M.dim(), M.field.zero());
  for (const auto& A : M.actions) {
    SparseMatrix<F> q(M.field, keep.size(), keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) {
      std::fill(e.begin(), e.end(), M.field.zero());
      e[keep[j]] = M.field.one();
      auto w = A.apply(e);
      S.reduce(w);
      for (auto i : keep) q.add_to(pos[i], j, w[i]);
    }
    Q.actions.push_back(std::move(q));
  }
  return Q;
}

enum class Simplicity { Simple, NotSimple, Inconclusive };

inline const char* to_string(Simplicity s) {
  switch (s) {
    case Simplicity::Simple: return "simple";
    case Simplicity::NotSimple: return "not-simple";
    default: return "inconclusive";
  }
}

template <class F>
struct SimplicityVerdict {
  Simplicity verdict = Simplicity::Inconclusive;
  std::vector<typename F::Elem> witness;  // spins to a proper submodule when not simple
  std::string method;
};

struct SimplicityOptions {
  std::uint64_t seed = 0;
  std::uint64_t line_budget = 4096;  // lines enumerated per weight space of the singular vectors
  int norton_elements = 12;
  std::size_t exhaustive_limit = 512;
  bool singular_probe = true;  // off: Norton and exhaustive search only
};

namespace detail {

/// Combinations of the columns `basis` annihilated by A, returned as vectors of the ambient space.
template <class F>
std::vector<std::vector<typename F::Elem>> kernel_within(const F& f, const Matrix<F>& A,
                                                         const std::vector<std::vector<typename F::Elem>>& basis) {
  const std::size_t d = A.rows();
  Matrix<F> W(f, d, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto w = A.apply(basis[j]);
    for (std::size_t i = 0; i < d; ++i) W.set(i, j, w[i]);
  }
  std::vector<std::vector<typename F::Elem>> out;
  for (const auto& c : nullspace(W)) {
    std::vector<typename F::Elem> v(A.cols(), f.zero());
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (!f.is_zero(c[j]))
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(v[i], f.mul(c[j], basis[j][i]));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/// Joint eigenspaces of the coroots on the vectors killed by the simple positive root vectors.
/// Empty optional when some coroot eigenvalue lies outside F.
template <class F>
std::optional<std::vector<std::vector<std::vector<typename F::Elem>>>> singular_weight_spaces(const RepModule<F>& M) {
  const auto& f = M.field;
  const auto& B = *M.basis;
  const std::size_t d = M.dim();
  std::vector<std::vector<typename F::Elem>> N;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<typename F::Elem> e(d, f.zero());
    e[i] = f.one();
    N.push_back(std::move(e));
  }
  for (const auto& a : B.roots().simple()) {
    N = detail::kernel_within(f, M.actions[B.root_vector(a)].to_dense(), N);
    if (N.empty()) return std::vector<std::vector<std::vector<typename F::Elem>>>{};
  }
  std::vector<std::vector<std::vector<typename F::Elem>>> spaces{N};
  for (int i = 0; i < B.rank(); ++i) {
    const std::size_t h = B.m() + static_cast<std::size_t>(i);
    const auto H = M.actions[h].to_dense();
    const auto mus = artin_schreier_roots(f, M.chi.pth_power(h));
    std::vector<std::vector<std::vector<typename F::Elem>>> next;
    for (const auto& V : spaces) {
      std::size_t covered = 0;
      for (auto mu : mus) {
        auto shifted = H - Matrix<F>::scalar(f, d, mu);
        auto E = detail::kernel_within(f, shifted, V);
        covered += E.size();
        if (!E.empty()) next.push_back(std::move(E));
      }
      if (covered != V.size()) return std::nullopt;
    }
    spaces = std::move(next);
  }
  return spaces;
}

/// Simplicity test. A rigorous probe comes first: every nonzero submodule meets the singular vectors
/// (positive root vectors act nilpotently when chi vanishes on them) and is stable under the coroots, so
/// it contains a singular weight vector; spinning every line of every singular weight space decides the
/// question. Otherwise Norton's criterion on seeded random elements, then exhaustive witness search.
template <class F>
SimplicityVerdict<F> is_simple(const RepModule<F>& M, const SimplicityOptions& opt = {}) {
  using Elem = typename F::Elem;
  const auto& f = M.field;
  const std::size_t d = M.dim();
  SimplicityVerdict<F> out;
  if (d == 0) throw DomainError("zero module");
  if (d == 1) {
    out.verdict = Simplicity::Simple;
    out.method = "dimension one";
    return out;
  }
  const auto gens = generator_matrices(M);
  auto proper = [&](const std::vector<Elem>& v) { return !spin(M, v, gens).full(); };
  const std::uint64_t q = field_size(f);

  if (opt.singular_probe && M.chi.in_standard_position()) {
    if (auto spaces = singular_weight_spaces(M)) {
      bool complete = true;
      for (const auto& W : *spaces) {
        for (const auto& v : W)
          if (proper(v)) {
            out.verdict = Simplicity::NotSimple;
            out.witness = v;
            out.method = "singular weight vector";
            return out;
          }
        if (W.size() == 1) continue;
        // lines in a w-dimensional space: sum of q^k for k < w
        std::uint64_t lines = 0, qk = 1;
        bool over = false;
        for (std::size_t k = 0; k < W.size() && !over; ++k) {
          lines += qk;
          over = lines > opt.line_budget || (k + 1 < W.size() && qk > opt.line_budget / std::max<std::uint64_t>(q, 1));
          qk *= q;
        }
        if (over) {
          complete = false;
          continue;
        }
        const std::size_t w = W.size();
        for (std::size_t lead = 0; lead < w; ++lead) {
          std::uint64_t tails = 1;
          for (std::size_t k = lead + 1; k < w; ++k) tails *= q;
          for (std::uint64_t t = 0; t < tails; ++t) {
            std::vector<Elem> v = W[lead];
            std::uint64_t r = t;
            for (std::size_t k = lead + 1; k < w; ++k) {
              const auto c = f.element_at(r % q);
              r /= q;
              if (!f.is_zero(c))
                for (std::size_t i = 0; i < d; ++i) v[i] = f.add(v[i], f.mul(c, W[k][i]));
            }
            if (proper(v)) {
              out.verdict = Simplicity::NotSimple;
              out.witness = v;
              out.method = "singular weight line";
              return out;
            }
          }
        }
      }
      if (complete) {
        out.verdict = Simplicity::Simple;
        out.method = "singular weight probe";
        return out;
      }
    }
  }

  std::mt19937_64 rng(opt.seed);
  auto rand_elem = [&] { return f.element_at(rng() % q); };
  std::vector<Matrix<F>> G;
  for (const auto* g : gens) G.push_back(g->to_dense());
  std::vector<std::vector<Elem>> tried;
  for (int attempt = 0; attempt < opt.norton_elements; ++attempt) {
    Matrix<F> theta(f, d, d);
    for (std::size_t k = 0; k < G.size(); ++k) theta.axpy(rand_elem(), G[k]);
    for (int w = 0; w < 2; ++w) {
      const auto& a = G[rng() % G.size()];
      const auto& b = G[rng() % G.size()];
      theta.axpy(rand_elem(), a * b);
    }
    std::vector<Elem> mus{f.zero()};
    if (q <= 64)
      for (std::uint64_t i = 1; i < q; ++i) mus.push_back(f.element_at(i));
    else
      for (int i = 0; i < 8; ++i) mus.push_back(rand_elem());
    for (auto mu : mus) {
      const auto A = theta - Matrix<F>::scalar(f, d, mu);
      const auto ker = nullspace(A);
      for (const auto& v : ker) tried.push_back(v);
      if (ker.size() != 1) continue;
      if (proper(ker[0])) {
        out.verdict = Simplicity::NotSimple;
        out.witness = ker[0];
        out.method = "norton kernel vector";
        return out;
      }
      const auto At = A.transpose();
      const auto kt = nullspace(At);
      std::vector<SparseMatrix<F>> dual;
      for (const auto* g : gens) dual.push_back(g->transpose());
      std::vector<const SparseMatrix<F>*> dual_ptrs;
      for (const auto& s : dual) dual_ptrs.push_back(&s);
      const auto W = spin(M, kt.at(0), dual_ptrs);
      if (W.full()) {
        out.verdict = Simplicity::Simple;
        out.method = "norton criterion";
        return out;
      }
      Matrix<F> rows = Matrix<F>::from_rows(f, W.vectors());
      out.verdict = Simplicity::NotSimple;
      out.witness = nullspace(rows).at(0);
      out.method = "norton dual annihilator";
      return out;
    }
  }
  if (d <= opt.exhaustive_limit) {
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Elem> e(d, f.zero());
      e[i] = f.one();
      tried.push_back(std::move(e));
    }
    for (const auto& v : tried)
      if (proper(v)) {
        out.verdict = Simplicity::NotSimple;
        out.witness = v;
        out.method = "exhaustive witness search";
        return out;
      }
  }
  out.method = "undecided";
  return out;
}

/// Repeatedly divides out the submodule spun by a witness until the quotient is simple.
template <class F>
RepModule<F> simple_quotient(RepModule<F> M, const SimplicityOptions& opt = {}) {
  while (true) {
    const auto v = is_simple(M, opt);
    if (v.verdict == Simplicity::Simple) return M;
    if (v.verdict == Simplicity::Inconclusive)
      throw InfeasibleError("simplicity undecided for a module of dimension " + std::to_string(M.dim()));
    M = quotient(M, spin(M, v.witness));
  }
}

/// Composition factors, found by splitting along spun submodules; a singular weight vector is tried first.
template <class F>
std::vector<RepModule<F>> composition_factors(const RepModule<F>& M, const SimplicityOptions& opt = {}) {
  std::vector<RepModule<F>> out;
  std::vector<RepModule<F>> stack{M};
  while (!stack.empty()) {
    RepModule<F> X = std::move(stack.back());
    stack.pop_back();
    std::optional<EchelonBasis<F>> split;
    if (X.dim() > 1 && X.chi.in_standard_position()) {
      if (auto spaces = singular_weight_spaces(X); spaces && !spaces->empty()) {
        auto S = spin(X, spaces->front().front());
        if (!S.full()) split = std::move(S);
      }
    }
    if (!split) {
      const auto v = is_simple(X, opt);
      if (v.verdict == Simplicity::Simple) {
        out.push_back(std::move(X));
        continue;
      }
      if (v.verdict == Simplicity::Inconclusive)
        throw InfeasibleError("simplicity undecided for a module of dimension " + std::to_string(X.dim()));
      split = spin(X, v.witness);
    }
    stack.push_back(quotient(X, *split));
    stack.push_back(submodule(X, *split));
  }
  return out;
}

/// Eigenvalues of the coroots on the singular line of a simple module in standard position.
template <class F>
std::optional<Weight<F>> highest_weight(const RepModule<F>& M) {
  const auto spaces = singular_weight_spaces(M);
  if (!spaces || spaces->size() != 1 || spaces->front().size() != 1) return std::nullopt;
  const auto& v = spaces->front().front();
  std::size_t i0 = 0;
  while (M.field.is_zero(v[i0])) ++i0;
  Weight<F> w;
  for (int i = 0; i < M.basis->rank(); ++i) {
    const auto hv = M.actions[M.basis->m() + static_cast<std::size_t>(i)].apply(v);
    w.push_back(M.field.div(hv[i0], v[i0]));
  }
  return w;
}

struct DimensionBudget {
  std::uint64_t max_module_dim = 512;
  std::uint64_t max_weights = 4096;
};

template <class F>
struct WeightOutcome {
  Weight<F> lambda;
  std::size_t verma_dim = 0;
  std::size_t simple_dim = 0;
  bool verma_simple = false;
  bool verified = false;  // module invariants checked
};

/// Simple heads of every constructible baby Verma for chi, one entry per compatible weight.
/// Weights are processed in parallel; the output order is the enumeration order.
template <class F>
std::vector<WeightOutcome<F>> simple_dimensions(const Character<F>& chi, const DimensionBudget& budget = {},
                                                const SimplicityOptions& opt = {}, unsigned threads = 0) {
  const auto& B = chi.basis();
  std::uint64_t d = 1;
  for (std::size_t k = 0; k < B.m(); ++k) {
    d *= chi.p();
    if (d > budget.max_module_dim)
      throw InfeasibleError("baby Verma modules of " + B.name() + " have dimension p^" + std::to_string(B.m()) +
                            ", above the budget of " + std::to_string(budget.max_module_dim));
  }
  const auto weights = compatible_weights(chi);
  if (weights.empty()) throw DomainError("no weight compatible with chi over the chosen scalar field");
  if (weights.size() > budget.max_weights)
    throw InfeasibleError(std::to_string(weights.size()) + " compatible weights exceed the budget");
  std::vector<WeightOutcome<F>> out(weights.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    Enveloping<F> U(chi.field(), B.table());
    try {
      for (std::size_t i; (i = next++) < weights.size() && !failed;) {
        auto Z = build_baby_verma(U, chi, weights[i]);
        auto& o = out[i];
        o.lambda = weights[i];
        o.verma_dim = Z.dim();
        o.verified = verify_module(Z).ok;
        const auto v = is_simple(Z, opt);
        if (v.verdict == Simplicity::Inconclusive)
          throw InfeasibleError("simplicity undecided for a baby Verma module");
        o.verma_simple = v.verdict == Simplicity::Simple;
        o.simple_dim = o.verma_simple ? Z.dim() : simple_quotient(quotient(Z, spin(Z, v.witness)), opt).dim();
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  if (threads == 0) threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, weights.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace lielab
