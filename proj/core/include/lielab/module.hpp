#pragma once

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lielab/character.hpp"
#include "lielab/chevalley.hpp"
#include "lielab/errors.hpp"
#include "lielab/extension_field.hpp"
#include "lielab/sparse.hpp"

namespace lielab {

/// Finite-dimensional representation of a Chevalley-basis Lie algebra: one action matrix per basis element.
template <class F>
struct RepModule {
  using Elem = typename F::Elem;

  F field;
  std::shared_ptr<const ChevalleyBasis> basis;
  std::vector<SparseMatrix<F>> actions;
  Character<F> chi;
  std::vector<std::string> labels;

  RepModule(F f, std::shared_ptr<const ChevalleyBasis> b, Character<F> c)
      : field(std::move(f)), basis(std::move(b)), chi(std::move(c)) {}

  std::size_t dim() const { return labels.size(); }
  const SparseMatrix<F>& action(std::size_t b) const { return actions.at(b); }

  /// Chevalley generators x_{+-alpha_i}; they generate L since every structure constant is a unit mod p >= 7.
  std::vector<std::size_t> generators() const {
    std::vector<std::size_t> g;
    for (const auto& a : basis->roots().simple()) {
      g.push_back(basis->root_vector(a));
      g.push_back(basis->root_vector(-a));
    }
    return g;
  }
};

struct ModuleCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Exact check of [rho(a), rho(b)] = rho([a, b]) for all pairs and rho(x)^p - rho(x^[p]) = chi(x)^p for all basis x.
template <class F>
ModuleCheck verify_module(const RepModule<F>& m) {
  ModuleCheck r;
  const auto& f = m.field;
  const std::size_t n = m.basis->dim();
  const std::size_t d = m.dim();
  if (m.actions.size() != n) {
    r.ok = false;
    r.failures.push_back("expected " + std::to_string(n) + " action matrices");
    return r;
  }
  for (const auto& a : m.actions)
    if (a.rows() != d || a.cols() != d) {
      r.ok = false;
      r.failures.push_back("action matrix shape differs from module dimension");
      return r;
    }
  const auto& table = m.basis->table();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      auto lhs = m.actions[a] * m.actions[b] - m.actions[b] * m.actions[a];
      SparseMatrix<F> rhs(f, d, d);
      for (const auto& t : table.bracket(a, b)) rhs = rhs.linear_combination(f.one(), m.actions[t.index], f.from_int(t.coeff));
      if (!(lhs == rhs)) {
        r.ok = false;
        r.failures.push_back("bracket [" + m.basis->label(a) + ", " + m.basis->label(b) + "]");
      }
    }
  const std::uint32_t p = f.characteristic();
  for (std::size_t b = 0; b < n; ++b) {
    auto pw = m.actions[b];
    for (std::uint32_t k = 1; k < p; ++k) pw = pw * m.actions[b];
    if (m.basis->is_cartan(b)) pw = pw - m.actions[b];
    const auto c = m.chi.pth_power(b);
    const auto expected = SparseMatrix<F>::identity(f, d).linear_combination(c, SparseMatrix<F>(f, d, d), f.zero());
    if (!(pw == expected)) {
      r.ok = false;
      r.failures.push_back("p-law at " + m.basis->label(b));
    }
  }
  return r;
}

/// One-dimensional module with every basis element acting by zero (chi = 0).
template <class F>
RepModule<F> trivial_module(std::shared_ptr<const ChevalleyBasis> basis, F field) {
  RepModule<F> m(field, basis, Character<F>(basis, field));
  m.labels = {"1"};
  for (std::size_t b = 0; b < basis->dim(); ++b) m.actions.emplace_back(field, 1, 1);
  return m;
}

/// Adjoint module ad(x)(y) = [x, y] on the Chevalley basis (chi = 0).
template <class F>
RepModule<F> adjoint_module(std::shared_ptr<const ChevalleyBasis> basis, F field) {
  RepModule<F> m(field, basis, Character<F>(basis, field));
  const std::size_t n = basis->dim();
  m.labels = basis->labels();
  for (std::size_t a = 0; a < n; ++a) {
    SparseMatrix<F> s(field, n, n);
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& t : basis->table().bracket(a, b)) s.add_to(t.index, b, field.from_int(t.coeff));
    m.actions.push_back(std::move(s));
  }
  return m;
}

/// Action-matrix bundle: field, algebra, character, labels and sparse entries as [row, col, value].
inline nlohmann::json export_module_json(const RepModule<ExtensionField>& m) {
  using nlohmann::json;
  json j;
  j["format"] = "lielab-module-v1";
  j["algebra"] = m.basis->name();
  j["family"] = std::string(1, family_letter(m.basis->roots().family()));
  j["rank"] = m.basis->rank();
  j["field"] = {{"p", m.field.characteristic()}, {"modulus", m.field.modulus()}};
  j["chi"] = m.chi.to_string();
  j["labels"] = m.labels;
  json acts = json::array();
  for (std::size_t b = 0; b < m.actions.size(); ++b) {
    json entries = json::array();
    for (std::size_t i = 0; i < m.actions[b].rows(); ++i)
      for (const auto& [c, v] : m.actions[b].row(i)) entries.push_back({i, c, m.field.to_string(v)});
    acts.push_back({{"element", m.basis->label(b)}, {"entries", entries}});
  }
  j["actions"] = acts;
  return j;
}

/// Inverse of export_module_json; the result is re-verified and rejected if any invariant fails.
inline RepModule<ExtensionField> import_module_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "lielab-module-v1") throw ParseError("unknown module format");
    const auto fam = parse_family(j.at("family").get<std::string>());
    auto basis = std::make_shared<const ChevalleyBasis>(RootSystem(fam, j.at("rank").get<int>()));
    ExtensionField field(j.at("field").at("p").get<std::uint32_t>(),
                         j.at("field").at("modulus").get<std::vector<std::uint32_t>>());
    auto chi = Character<ExtensionField>::parse(basis, field, j.at("chi").get<std::string>());
    RepModule<ExtensionField> m(field, basis, chi);
    m.labels = j.at("labels").get<std::vector<std::string>>();
    const std::size_t d = m.labels.size();
    const auto& acts = j.at("actions");
    if (acts.size() != basis->dim()) throw ParseError("action count differs from algebra dimension");
    for (std::size_t b = 0; b < acts.size(); ++b) {
      if (acts[b].at("element").get<std::string>() != basis->label(b)) throw ParseError("actions out of basis order");
      SparseMatrix<ExtensionField> s(field, d, d);
      for (const auto& e : acts[b].at("entries")) {
        const auto i = e.at(0).get<std::size_t>(), c = e.at(1).get<std::size_t>();
        if (i >= d || c >= d) throw ParseError("matrix entry out of range");
        s.add_to(i, c, field.parse(e.at(2).get<std::string>()));
      }
      m.actions.push_back(std::move(s));
    }
    const auto check = verify_module(m);
    if (!check.ok) throw DomainError("imported module fails verification: " + check.failures.front());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed module bundle: ") + e.what());
  }
}

}  // namespace lielab
