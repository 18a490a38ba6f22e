#include "lielab/families.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "lielab/errors.hpp"
#include "lielab/matrix.hpp"
#include "lielab/redenv.hpp"
#include "lielab/sparse.hpp"

namespace lielab {

using K = ExtensionField;
using Dense = Matrix<K>;

Workspace::Workspace(std::shared_ptr<const ChevalleyBasis> basis, ExtensionField field)
    : basis_(std::move(basis)), field_(std::move(field)),
      U_(std::make_unique<Enveloping<ExtensionField>>(field_, basis_->table())) {}

Workspace::Workspace(Family family, int rank, ExtensionField field)
    : Workspace(std::make_shared<const ChevalleyBasis>(RootSystem(family, rank)), std::move(field)) {}

UElem Workspace::x(const Root& r) const {
  if (!is_root(r)) throw DomainError("not a root of " + basis_->name());
  return U_->gen(basis_->root_vector(r));
}

UElem Workspace::h(const Root& r) const {
  if (!is_root(r)) throw DomainError("not a root of " + basis_->name());
  const auto k = basis_->coroot_coefficients(r);
  std::vector<std::pair<std::size_t, Scalar>> v;
  for (int i = 0; i < basis_->rank(); ++i)
    if (k[static_cast<std::size_t>(i)] != 0) v.emplace_back(basis_->coroot(i), field_.from_int(k[static_cast<std::size_t>(i)]));
  return U_->from_lie(v);
}

Scalar Workspace::frac(std::int64_t num, std::int64_t den) const {
  return field_.div(field_.from_int(num), field_.from_int(den));
}

std::string Workspace::x_label(const Root& r) const { return basis_->label(basis_->root_vector(r)); }
std::string Workspace::h_label(const Root& r) const { return "h(" + roots().label(r) + ")"; }

// --- g and w ---------------------------------------------------------------------------------------

GW make_g_w(const Workspace& ws, const Root& alpha, std::int64_t w_coefficient) {
  if (!ws.is_root(alpha)) throw DomainError("g and w need a root of " + ws.basis().name());
  const auto& U = ws.U();
  const auto xa = ws.x(alpha), xm = ws.x(-alpha);
  GW out{alpha, U.power(xa, ws.p() - 1) - xm, {}};
  const auto h1 = ws.h(alpha) + U.one();
  out.w = h1 * h1 + (xm * xa).scaled(ws.field().from_int(w_coefficient));
  return out;
}

WCentrality check_w_central(const Workspace& ws, const Root& alpha, std::int64_t w_coefficient) {
  const auto gw = make_g_w(ws, alpha, w_coefficient);
  const auto& U = ws.U();
  auto probe = [&](const UElem& y, const std::string& name) {
    const auto c = U.commutator(gw.w, y);
    return CommutatorCheck{name, c.is_zero(), c.size()};
  };
  WCentrality out;
  out.triple.push_back(probe(ws.x(alpha), ws.x_label(alpha)));
  out.triple.push_back(probe(ws.x(-alpha), ws.x_label(-alpha)));
  out.triple.push_back(probe(ws.h(alpha), ws.h_label(alpha)));
  out.pass = std::all_of(out.triple.begin(), out.triple.end(), [](const auto& c) { return c.zero; });
  for (const auto& r : ws.roots().roots())
    if (r != alpha && r != -alpha) out.outside.push_back(probe(ws.x(r), ws.x_label(r)));
  return out;
}

// --- g identities on a module ----------------------------------------------------------------------

namespace {


Dense commutator_with(const SparseMatrix<K>& s, const Dense& d) {
  return s.times_dense(d) - s.transpose().times_dense(d.transpose()).transpose();
}

}  // namespace

GIdentities check_g_identities(const Workspace& ws, const Root& alpha, const RepModule<ExtensionField>& M) {
  const auto& B = ws.basis();
  const auto& f = ws.field();
  if (!f.is_zero(M.chi.value(B.root_vector(alpha))) || !f.is_zero(M.chi.value(B.root_vector(-alpha))))
    throw DomainError("g identities are stated for chi(x_alpha) = chi(x_-alpha) = 0");
  if (!(M.field == f)) throw DomainError("module and workspace use different scalar fields");
  const auto gw = make_g_w(ws, alpha);
  GIdentities out;
  const auto h = ws.h(alpha);
  out.bracket = ws.U().commutator(h, gw.g) == gw.g.scaled(f.from_int(-2));
  const auto G = image_of(gw.g, M);
  const auto H = image_of(h, M);
  const auto Ginv = inverse(G);
  out.invertible = Ginv.has_value();
  const auto Gp = G.power(ws.p());
  if (const auto c = Gp.scalar_value()) {
    out.pth_scalar = true;
    out.c = f.to_string(*c);
  }
  if (Ginv) out.conjugation = G * H * *Ginv == H + Dense::scalar(f, M.dim(), f.from_int(2));
  return out;
}

// --- B forms ---------------------------------------------------------------------------------------

BForms build_B_forms(const Workspace& ws, const Root& alpha, std::size_t count, std::uint64_t seed) {
  const auto& f = ws.field();
  const auto& rs = ws.roots();
  const int l = rs.rank();
  if (!ws.is_root(alpha)) throw DomainError("B forms need a root of " + ws.basis().name());
  std::vector<std::int64_t> ah(static_cast<std::size_t>(l));
  for (int k = 0; k < l; ++k) ah[static_cast<std::size_t>(k)] = cartan_integer(rs.simple(k), alpha);
  auto row_of = [&](Scalar t, const std::vector<Scalar>& shift) {
    std::vector<Scalar> r;
    Scalar pw = t;
    for (int k = 0; k < l; ++k) {
      r.push_back(f.add(pw, shift[static_cast<std::size_t>(k)]));
      pw = f.mul(pw, t);
    }
    return r;
  };
  auto alpha_of = [&](const std::vector<Scalar>& r) {
    Scalar s = f.zero();
    for (int k = 0; k < l; ++k) s = f.add(s, f.mul(r[static_cast<std::size_t>(k)], f.from_int(ah[static_cast<std::size_t>(k)])));
    return s;
  };
  const std::uint64_t pool_size = std::min<std::uint64_t>(f.size(), std::max<std::uint64_t>(64, 4 * count));
  // shifting along one coordinate with alpha(h_k) != 0 moves alpha(B) by a constant
  std::size_t lead = 0;
  while (ah[lead] % static_cast<std::int64_t>(f.characteristic()) == 0) ++lead;
  std::vector<Scalar> shift, pool;
  for (std::uint64_t si = 0; si < std::min<std::uint64_t>(f.size(), 64); ++si) {
    std::vector<Scalar> s(static_cast<std::size_t>(l), f.zero());
    s[lead] = f.element_at(si);
    std::vector<Scalar> admissible;
    for (std::uint64_t i = 0; i < pool_size; ++i) {
      const auto t = f.element_at(i);
      if (!f.is_zero(alpha_of(row_of(t, s)))) admissible.push_back(t);
    }
    if (admissible.size() > pool.size()) {
      pool = std::move(admissible);
      shift = std::move(s);
    }
    if (pool.size() == pool_size) break;
  }
  if (pool.size() < count)
    throw DomainError("only " + std::to_string(pool.size()) + " admissible B forms over " +
                      std::to_string(f.size()) + " scalars; " + std::to_string(count) + " needed");
  std::mt19937_64 rng(seed);
  for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng() % i]);
  BForms out;
  out.shift = shift;
  out.params.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
  for (auto t : out.params) {
    auto r = row_of(t, shift);
    std::vector<std::pair<std::size_t, Scalar>> v;
    for (int k = 0; k < l; ++k) v.emplace_back(ws.basis().coroot(k), r[static_cast<std::size_t>(k)]);
    out.elements.push_back(ws.U().from_lie(v));
    out.rows.push_back(std::move(r));
  }
  out.alpha_nonzero = std::all_of(out.rows.begin(), out.rows.end(), [&](const auto& r) { return !f.is_zero(alpha_of(r)); });
  if (l <= 4) {
    out.general_position_checked = true;
    out.general_position = true;
    const std::size_t k = static_cast<std::size_t>(l) + 1;
    if (count >= k) {
      std::vector<std::size_t> idx(k);
      for (std::size_t i = 0; i < k; ++i) idx[i] = i;
      while (out.general_position) {
        Dense m(f, k, k);
        for (std::size_t i = 0; i < k; ++i) {
          m.set(i, 0, f.one());
          for (std::size_t j = 1; j < k; ++j) m.set(i, j, out.rows[idx[i]][j - 1]);
        }
        if (f.is_zero(det(m))) out.general_position = false;
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == count - k + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
  }
  return out;
}

// --- case tables -----------------------------------------------------------------------------------

std::string case_name(FamilyCase c) {
  switch (c) {
    case FamilyCase::ASemisimple: return "A-semisimple";
    case FamilyCase::CShort: return "C-short";
    case FamilyCase::CLong: return "C-long";
    default: return "C-semisimple";
  }
}

FamilyCase parse_case(const std::string& s) {
  for (auto c : {FamilyCase::ASemisimple, FamilyCase::CShort, FamilyCase::CLong, FamilyCase::CSemisimple})
    if (case_name(c) == s) return c;
  throw DomainError("unknown family case '" + s + "'");
}

Root distinguished_root(const RootSystem& rs, FamilyCase c) {
  return c == FamilyCase::CLong ? rs.twice(1) : rs.diff(1, 2);
}

std::string to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::Pending: return "pending";
    case EntryStatus::Resolved: return "resolved";
    default: return "finding";
  }
}

std::size_t AEntry::signed_count() const {
  return static_cast<std::size_t>(std::count_if(terms.begin(), terms.end(), [](const auto& t) { return t.signed_term; }));
}

const AEntry* AFamily::find(const Root& r) const {
  for (const auto& e : entries)
    if (e.beta == r) return &e;
  return nullptr;
}

AEntry* AFamily::find(const Root& r) {
  for (auto& e : entries)
    if (e.beta == r) return &e;
  return nullptr;
}

bool AFamily::fully_resolved() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.status == EntryStatus::Resolved; });
}

std::size_t AFamily::findings() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.status == EntryStatus::Finding; }));
}

const std::vector<TranscriptionRepair>& transcription_repairs() {
  static const std::vector<TranscriptionRepair> table = {
      {"C-short and C-semisimple, A(-(e1+-e3))", "prefix x_{-(+-e3)}, not a root vector of C_l",
       "candidates x(-+2e3) then x(+-2e3); the resolver tries both"},
      {"C-short and C-semisimple, A(-(e1+-e3))", "constant c_{-(e2+-e3)}", "the entry's own constant"},
      {"C-short, C-long and C-semisimple, B_i", "h_{e_l} and h_{e_{2l}}", "h(2e_l), the coroot of the last simple root"},
      {"A-semisimple, A(ej-e1)", "constant c_{eJ-e1}", "c_{ej-e1}"},
      {"C-long, A(-e1+-ej)", "index e_!", "e1"},
      {"A-semisimple, product order", "factors between the fourth group and the last pair elided",
       "remaining root pairs in canonical root order, then +-(e_l - e_{l+1})"},
      {"C cases, remaining roots", "x_beta^2 or x_beta^3, otherwise attach the parenthesis of A_{-beta}",
       "candidates x^2, x^3, x^2 P(-beta), x^3 P(-beta) in that order"},
  };
  return table;
}

namespace {

struct TableBuilder {
  const Workspace& ws;
  AFamily& fam;
  const RootSystem& rs;
  int amb;

  bool ok(int i) const { return i >= 1 && i <= amb; }
  Root e(int i) const { return rs.epsilon(i); }

  std::string xl(const Root& r) const { return ws.x_label(r); }

  ParenTerm term(std::int64_t num, std::int64_t den, const Root& a, const Root& b, bool sign) const {
    ParenTerm t;
    t.coeff = ws.frac(num, den);
    t.product = ws.x(a) * ws.x(b);
    std::string c = den == 1 ? (num == 1 ? "" : std::to_string(num) + " ") : std::to_string(num) + "/" + std::to_string(den) + " ";
    t.text = c + xl(a) + " " + xl(b);
    t.signed_term = sign;
    return t;
  }

  PrefixCandidate power(const Root& r, int k) const {
    PrefixCandidate c;
    c.text = xl(r) + (k == 1 ? "" : "^" + std::to_string(k));
    for (int i = 0; i < k; ++i) c.factors.push_back(ws.x(r));
    return c;
  }

  PrefixCandidate gpow(int k) const {
    PrefixCandidate c;
    c.text = k == 1 ? "g" : "g^" + std::to_string(k);
    const auto g = make_g_w(ws, fam.alpha).g;
    for (int i = 0; i < k; ++i) c.factors.push_back(g);
    return c;
  }

  static PrefixCandidate unit() { return PrefixCandidate{"", {}, std::nullopt, std::nullopt}; }

  bool add(const Root& beta, std::vector<PrefixCandidate> cands, bool paren, std::vector<ParenTerm> terms,
           std::string repair = "") {
    if (!ws.is_root(beta)) return false;
    if (fam.find(beta)) {
      fam.notes.push_back("second formula for A(" + rs.label(beta) + ") ignored; the first one stands");
      return false;
    }
    AEntry a;
    a.beta = beta;
    a.name = "A(" + rs.label(beta) + ")";
    a.candidates = std::move(cands);
    a.has_paren = paren;
    a.has_constant = paren;
    a.terms = std::move(terms);
    a.repair = std::move(repair);
    std::string pre;
    for (std::size_t i = 0; i < a.candidates.size(); ++i) pre += (i ? " or " : "") + a.candidates[i].text;
    if (a.candidates.size() > 1) pre = "{" + pre + "}";
    std::string par;
    if (paren) {
      par = "(c";
      for (const auto& t : a.terms) par += (t.signed_term ? " +- " : " + ") + t.text;
      par += ")";
    }
    a.formula = pre.empty() ? par : (par.empty() ? pre : pre + " " + par);
    fam.entries.push_back(std::move(a));
    return true;
  }

  // (c + (h_alpha + 1)^2 + k * y z)
  void casimir_like(const Root& beta, std::int64_t num, std::int64_t den, const Root& y, const Root& z) {
    ParenTerm sq;
    sq.coeff = ws.field().one();
    const auto h1 = ws.h(fam.alpha) + ws.U().one();
    sq.product = h1 * h1;
    sq.text = "(" + ws.h_label(fam.alpha) + " + 1)^2";
    add(beta, {unit()}, true, {sq, term(num, den, y, z, false)});
  }
};

void add_remaining(TableBuilder& tb, bool attach_parens) {
  for (const auto& r : tb.rs.roots()) {
    if (tb.fam.find(r)) continue;
    std::vector<PrefixCandidate> cands{tb.power(r, 2), tb.power(r, 3)};
    if (attach_parens)
      for (int k : {2, 3}) {
        auto c = tb.power(r, k);
        c.text += " P(" + tb.rs.label(-r) + ")";
        c.times_paren = -r;
        cands.push_back(std::move(c));
      }
    tb.add(r, std::move(cands), false, {});
    tb.fam.entries.back().interpolated = true;
  }
}

void table_A(TableBuilder& tb) {
  const int n1 = tb.amb;
  auto d = [&](int i, int j) { return tb.rs.diff(i, j); };
  const Root a = d(1, 2);
  tb.add(a, {tb.gpow(1)}, false, {});
  tb.casimir_like(d(2, 1), 1, 4, -a, a);
  if (n1 >= 3) {
    tb.add(d(1, 3), {tb.gpow(2)}, true, {tb.term(1, 1, d(2, 3), d(3, 2), false), tb.term(1, 1, d(1, 3), d(3, 1), true)});
    std::vector<PrefixCandidate> c31{tb.gpow(3)};
    if (n1 >= 4) c31.push_back(tb.power(d(3, 4), 1));
    tb.add(d(3, 1), c31, true, {tb.term(1, 1, d(3, 2), d(2, 3), false), tb.term(1, 1, d(3, 1), d(1, 3), true)});
  }
  for (int j = 3; j <= n1; ++j) {
    if (j == 3)
      tb.add(d(2, 3), {tb.gpow(4)}, true, {tb.term(1, 1, d(2, 3), d(3, 2), false), tb.term(1, 1, d(1, 3), d(3, 1), true)});
    else if (j == 4)
      tb.add(d(2, 4), {tb.power(d(3, 4), 2)}, true,
             {tb.term(1, 1, d(2, 4), d(4, 2), false), tb.term(1, 1, d(1, 4), d(4, 1), true)});
    else
      tb.add(d(2, j), {tb.power(d(4, j), 1)}, true,
             {tb.term(1, 1, d(2, j), d(j, 2), false), tb.term(1, 1, d(1, j), d(j, 1), true)});
  }
  for (int j = 3; j <= n1; ++j) {
    if (j == 3)
      tb.add(d(3, 2), {tb.gpow(5)}, true, {tb.term(1, 1, d(2, 3), d(3, 2), false), tb.term(1, 1, d(1, 3), d(3, 1), true)});
    else if (j == 4)
      tb.add(d(4, 2), {tb.power(d(4, 3), 1)}, true,
             {tb.term(1, 1, d(4, 2), d(2, 4), false), tb.term(1, 1, d(4, 1), d(1, 4), true)});
    else
      tb.add(d(j, 2), {tb.power(d(j, 4), 1)}, true,
             {tb.term(1, 1, d(j, 2), d(2, j), false), tb.term(1, 1, d(j, 1), d(1, j), true)});
  }
  for (int j = 4; j <= n1; ++j) {
    tb.add(d(1, j), {tb.power(d(3, j), 2)}, true,
           {tb.term(1, 1, d(1, j), d(j, 1), false), tb.term(1, 1, d(2, j), d(j, 2), true)});
    tb.add(d(j, 1), {tb.power(d(j, 3), 2)}, true,
           {tb.term(1, 1, d(1, j), d(j, 1), false), tb.term(1, 1, d(2, j), d(j, 2), true)}, "constant c_{eJ-e1} read as c_{ej-e1}");
  }
  add_remaining(tb, false);
}

// e_i + s e_j for s = +1 / -1
Root pm(const RootSystem& rs, int i, int s, int j) { return s > 0 ? rs.sum(i, j) : rs.diff(i, j); }

void table_C_common_short(TableBuilder& tb, bool semisimple) {
  const auto& rs = tb.rs;
  const int l = tb.amb;
  const Root a = rs.diff(1, 2);
  const Root s12 = rs.sum(1, 2);
  const Root t1 = rs.twice(1), t2 = rs.twice(2);
  if (semisimple) {
    tb.add(a, {tb.gpow(1)}, false, {});
    tb.casimir_like(-a, 4, 1, -a, a);
  } else {
    tb.add(a, {tb.power(a, 1)}, false, {});
    tb.casimir_like(-a, 4, 1, a, -a);
  }
  if (l >= 3)
    for (int s : {1, -1}) {
      const Root b = pm(rs, 2, s, 3), b1 = pm(rs, 1, s, 3);
      tb.add(b, {tb.power(rs.twice(3).scaled(s), 1)}, true, {tb.term(1, 1, b, -b, false), tb.term(1, 1, b1, -b1, true)});
    }
  if (semisimple) {
    auto par = [&] {
      return std::vector<ParenTerm>{tb.term(1, 2, s12, -s12, false), tb.term(1, 3, t1, -t1, true), tb.term(1, 3, t2, -t2, true)};
    };
    tb.add(s12, {tb.gpow(2)}, true, par());
    tb.add(-s12, {tb.gpow(3)}, true, par());
  } else {
    tb.add(s12, {tb.power(a, 2)}, true,
           {tb.term(3, 1, s12, -s12, false), tb.term(2, 1, t1, -t1, true), tb.term(2, 1, t2, -t2, true)});
  }
  for (int k = 4; k <= l; ++k)
    for (int s : {1, -1}) {
      const Root b = pm(rs, 2, s, k), b1 = pm(rs, 1, s, k);
      tb.add(b, {tb.power(pm(rs, 3, s, k), 1)}, true, {tb.term(1, 1, b, -b, false), tb.term(1, 1, b1, -b1, true)});
    }
  if (semisimple) {
    auto par2 = [&] {
      return std::vector<ParenTerm>{tb.term(1, 3, t2, -t2, false), tb.term(1, 2, s12, -s12, true), tb.term(1, 3, t1, -t1, false)};
    };
    tb.add(t2, {tb.gpow(6)}, true, par2());
    PrefixCandidate gA = tb.gpow(1);
    gA.text = "g A(" + rs.label(-a) + ")";
    gA.times_entry = -a;
    tb.add(-t2, {gA}, true, par2());
    auto par1 = [&] {
      return std::vector<ParenTerm>{tb.term(1, 3, -t1, t1, false), tb.term(1, 2, -s12, s12, true), tb.term(1, 3, -t2, t2, true)};
    };
    tb.add(t1, {tb.gpow(4)}, true, par1());
    tb.add(-t1, {tb.gpow(5)}, true, par1());
  } else if (l >= 3) {
    tb.add(t2, {tb.power(rs.twice(3), 2)}, true,
           {tb.term(2, 1, t2, -t2, false), tb.term(3, 1, s12, -s12, true), tb.term(2, 1, t1, -t1, false)});
    tb.add(-t1, {tb.power(-rs.twice(3), 2)}, true,
           {tb.term(2, 1, -t1, t1, false), tb.term(3, 1, -s12, s12, true), tb.term(2, 1, -t2, t2, true)});
  }
  if (l >= 3)
    for (int s : {1, -1}) {
      const Root b = -pm(rs, 1, s, 3), b2 = pm(rs, 2, s, 3), b1 = pm(rs, 1, s, 3);
      auto first = tb.power(rs.twice(3).scaled(-s), 1);
      auto second = tb.power(rs.twice(3).scaled(s), 1);
      tb.add(b, {first, second}, true, {tb.term(1, 1, b2, -b2, false), tb.term(1, 1, b1, -b1, true)},
             "prefix x_{-(" + std::string(s > 0 ? "+" : "-") + "e3)} repaired to candidates " + first.text + ", " +
                 second.text + "; constant subscript read as the entry's own");
    }
  for (int k = 4; k <= l; ++k)
    for (int s : {1, -1}) {
      const Root b = -pm(rs, 1, s, k), b2 = pm(rs, 2, s, k), b1 = pm(rs, 1, s, k);
      tb.add(b, {tb.power(-pm(rs, 3, s, k), 1)}, true, {tb.term(1, 1, b2, -b2, false), tb.term(1, 1, b1, -b1, true)});
    }
  if (!semisimple || l >= 3) {
    tb.add(rs.twice(l), {tb.power(rs.twice(l), 2)}, false, {});
    tb.add(-rs.twice(l), {tb.power(-rs.twice(l), 2)}, false, {});
  }
  add_remaining(tb, true);
}

void table_C_long(TableBuilder& tb) {
  const auto& rs = tb.rs;
  const int l = tb.amb;
  const Root a = rs.twice(1);
  tb.add(a, {tb.power(a, 1)}, false, {});
  tb.casimir_like(-a, 4, 1, -a, a);
  if (l >= 3)
    for (int s : {1, -1}) {
      // -e1 + s e2
      const Root b = -rs.epsilon(1) + rs.epsilon(2).scaled(s);
      const Root pre = -rs.epsilon(3) + rs.epsilon(2).scaled(s);
      const Root c1 = rs.epsilon(1) + rs.epsilon(2).scaled(s);
      tb.add(b, {tb.power(pre, 1)}, true, {tb.term(1, 1, b, -b, true), tb.term(1, 1, c1, -c1, true)});
    }
  for (int j = 3; j <= l; ++j)
    for (int s : {1, -1}) {
      const Root b = -rs.epsilon(1) + rs.epsilon(j).scaled(s);
      const Root pre = -rs.epsilon(2) + rs.epsilon(j).scaled(s);
      const Root c1 = rs.epsilon(1) + rs.epsilon(j).scaled(s);
      tb.add(b, {tb.power(pre, 1)}, true, {tb.term(1, 1, b, -b, false), tb.term(1, 1, c1, -c1, true)},
             "index e_! read as e1");
    }
  add_remaining(tb, true);
}

/// Canonical product order of the case.
std::vector<Root> product_order(const RootSystem& rs, FamilyCase kind) {
  std::vector<Root> order;
  auto push = [&](const Root& r) {
    if (rs.contains(r) && std::find(order.begin(), order.end(), r) == order.end()) order.push_back(r);
  };
  const int n1 = rs.ambient();
  if (kind == FamilyCase::ASemisimple) {
    push(rs.diff(1, 2));
    push(rs.diff(2, 1));
    for (int j = 3; j <= n1; ++j) push(rs.diff(1, j));
    for (int j = 3; j <= n1; ++j) push(rs.diff(j, 1));
    for (int j = 3; j <= n1; ++j) push(rs.diff(2, j));
    for (int j = 3; j <= n1; ++j) push(rs.diff(j, 2));
    const Root last = rs.diff(n1 - 1, n1);
    for (std::size_t i = 0; i < rs.num_positive(); ++i) {
      const auto& r = rs.root(i);
      if (r == last) continue;
      push(r);
      push(-r);
    }
    push(last);
    push(-last);
    return order;
  }
  if (kind == FamilyCase::CLong) {
    push(rs.twice(1));
    push(-rs.twice(1));
  }
  for (int i = 1; i < rs.rank(); ++i) {
    push(rs.diff(i, i + 1));
    push(-rs.diff(i, i + 1));
  }
  push(rs.twice(rs.rank()));
  push(-rs.twice(rs.rank()));
  for (const auto& r : rs.roots()) push(r);
  return order;
}

}  // namespace

AFamily build_A_family(const Workspace& ws, FamilyCase kind) {
  const auto& rs = ws.roots();
  const bool typeA = rs.family() == Family::A;
  if (typeA != (kind == FamilyCase::ASemisimple))
    throw DomainError("case " + case_name(kind) + " does not apply to " + ws.basis().name());
  AFamily fam{kind, distinguished_root(rs, kind), {}, {}};
  TableBuilder tb{ws, fam, rs, rs.ambient()};
  switch (kind) {
    case FamilyCase::ASemisimple: table_A(tb); break;
    case FamilyCase::CShort: table_C_common_short(tb, false); break;
    case FamilyCase::CSemisimple: table_C_common_short(tb, true); break;
    case FamilyCase::CLong: table_C_long(tb); break;
  }
  const auto order = product_order(rs, kind);
  std::vector<AEntry> sorted;
  for (const auto& r : order) sorted.push_back(std::move(*fam.find(r)));
  fam.entries = std::move(sorted);
  if (kind == FamilyCase::ASemisimple && rs.ambient() > 4)
    fam.notes.push_back("product order interpolated over the remaining root pairs in canonical order");
  return fam;
}

// --- resolution ------------------------------------------------------------------------------------

namespace {

struct Resolver {
  const Workspace& ws;
  const RepModule<K>* M;
  AFamily& fam;
  UElem xa;
  std::optional<SparseMatrix<K>> Xa;

  const K& f() const { return ws.field(); }

  std::optional<UElem> prefix(const PrefixCandidate& c) const {
    UElem out = ws.U().one();
    for (const auto& x : c.factors) out = out * x;
    if (c.times_entry) {
      const auto* e = fam.find(*c.times_entry);
      if (!e || e->status == EntryStatus::Pending) return std::nullopt;
      out = out * e->element;
    }
    if (c.times_paren) {
      const auto* e = fam.find(*c.times_paren);
      if (!e || !e->has_paren || e->status == EntryStatus::Pending) return std::nullopt;
      out = out * e->paren;
    }
    return out;
  }

  Dense prefix_image(const PrefixCandidate& c) const {
    Dense out = Dense::identity(f(), M->dim());
    for (const auto& x : c.factors) out = out * image_of(x, *M);
    if (c.times_entry) out = out * image_of(fam.find(*c.times_entry)->element, *M);
    if (c.times_paren) out = out * image_of(fam.find(*c.times_paren)->paren, *M);
    return out;
  }

  UElem rest(const AEntry& e, const std::vector<int>& signs) const {
    UElem r = ws.U().zero();
    std::size_t k = 0;
    for (const auto& t : e.terms) {
      auto c = t.coeff;
      if (t.signed_term && signs[k++] < 0) c = f().neg(c);
      r = r + t.product.scaled(c);
    }
    return r;
  }

  static std::vector<std::vector<int>> sign_choices(std::size_t n) {
    std::vector<std::vector<int>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<int> s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
      out.push_back(std::move(s));
    }
    return out;
  }

  /// Solves c * A + B = 0 over UEA elements; nullopt when impossible, empty optional inside for "any c".
  static std::optional<std::optional<Scalar>> solve(const UElem& A, const UElem& B, const K& f) {
    if (A.is_zero()) return B.is_zero() ? std::optional<std::optional<Scalar>>(std::optional<Scalar>{}) : std::nullopt;
    const auto& [m, a] = *A.terms().begin();
    const Scalar c = f.neg(f.div(B.coefficient(m), a));
    if ((A.scaled(c) + B).is_zero()) return std::optional<Scalar>(c);
    return std::nullopt;
  }

  static std::optional<std::optional<Scalar>> solve(const Dense& A, const Dense& B, const K& f) {
    if (A.is_zero()) return B.is_zero() ? std::optional<std::optional<Scalar>>(std::optional<Scalar>{}) : std::nullopt;
    std::size_t i = 0, j = 0;
    for (bool found = false; i < A.rows() && !found; ++i)
      for (j = 0; j < A.cols(); ++j)
        if (!f.is_zero(A.at(i, j))) {
          found = true;
          break;
        }
    --i;
    const Scalar c = f.neg(f.div(B.at(i, j), A.at(i, j)));
    auto t = A.scaled(c) + B;
    if (t.is_zero()) return std::optional<Scalar>(c);
    return std::nullopt;
  }

  /// Picks or checks c: the parenthesis image must be invertible and the element image nonzero.
  std::optional<Scalar> settle_constant(const AEntry& e, std::optional<Scalar> forced, const Dense* P, const Dense* R,
                                        std::string& why) const {
    if (!e.has_constant) {
      if (M && P && R) {
        if ((*P * *R).is_zero()) {
          why = "acts by zero on the module";
          return std::nullopt;
        }
      }
      return f().zero();
    }
    if (!M) return forced ? forced : std::optional<Scalar>(f().one());
    auto good = [&](Scalar c) {
      const Dense paren = *R + Dense::scalar(f(), M->dim(), c);
      if (f().is_zero(det(paren))) return false;
      return !(*P * paren).is_zero();
    };
    if (forced) {
      if (good(*forced)) return forced;
      why = "the constant forced by commutation makes the parenthesis singular or the element zero";
      return std::nullopt;
    }
    for (std::uint32_t k = 0; k < f().characteristic(); ++k)
      if (good(f().from_int(k))) return f().from_int(k);
    for (std::uint64_t i = f().characteristic(); i < std::min<std::uint64_t>(f().size(), 4 * f().characteristic()); ++i)
      if (good(f().element_at(i))) return f().element_at(i);
    why = "no constant makes the parenthesis invertible";
    return std::nullopt;
  }

  void finish(AEntry& e, std::size_t cand, const std::vector<int>& signs, Scalar c, const std::string& level) {
    e.candidate = cand;
    e.signs = signs;
    e.c = e.has_constant ? std::optional<Scalar>(c) : std::nullopt;
    e.level = level;
    const auto pre = *prefix(e.candidates[cand]);
    e.paren = e.has_paren ? rest(e, signs) + (e.has_constant ? ws.U().scalar(c) : ws.U().zero()) : ws.U().one();
    e.element = e.has_paren ? pre * e.paren : pre;
  }

  bool attempt(AEntry& e, bool image_level, std::string& last_reason) {
    const auto signs_all = sign_choices(e.signed_count());
    for (std::size_t ci = 0; ci < e.candidates.size(); ++ci) {
      const auto pre = prefix(e.candidates[ci]);
      if (!pre) continue;
      std::optional<Dense> Pimg;
      if (M) Pimg = prefix_image(e.candidates[ci]);
      for (const auto& signs : signs_all) {
        const UElem R = e.has_paren ? rest(e, signs) : ws.U().zero();
        std::optional<std::optional<Scalar>> sol;
        std::optional<Dense> Rimg;
        if (M) Rimg = e.has_paren ? image_of(R, *M) : Dense(f(), M->dim(), M->dim());
        if (!image_level) {
          const UElem E0 = e.has_paren ? *pre * R : *pre;
          const UElem A = e.has_constant ? ws.U().commutator(xa, *pre) : ws.U().zero();
          sol = solve(A, ws.U().commutator(xa, E0), f());
        } else {
          const Dense E0 = e.has_paren ? *Pimg * *Rimg : *Pimg;
          const Dense A = e.has_constant ? commutator_with(*Xa, *Pimg) : Dense(f(), M->dim(), M->dim());
          sol = solve(A, commutator_with(*Xa, E0), f());
        }
        if (!sol) {
          last_reason = "does not commute with " + ws.x_label(fam.alpha) + " for any candidate, sign or constant";
          continue;
        }
        std::string why;
        const Dense one = M ? Dense::identity(f(), M->dim()) : Dense(f(), 0, 0);
        const auto c = settle_constant(e, *sol, M ? &*Pimg : nullptr, M ? (e.has_paren ? &*Rimg : &one) : nullptr, why);
        if (!c) {
          last_reason = why;
          continue;
        }
        finish(e, ci, signs, *c, image_level ? "image" : "formal");
        e.status = EntryStatus::Resolved;
        if (e.has_constant && !M) e.note = "constant fixed to 1; invertibility unchecked without a module";
        if (e.has_constant && !*sol && M) e.note = "constant chosen for invertibility";
        return true;
      }
    }
    return false;
  }

  void resolve(AEntry& e) {
    std::string reason;
    if (attempt(e, false, reason)) return;
    if (M && attempt(e, true, reason)) return;
    e.status = EntryStatus::Finding;
    e.level = "none";
    e.finding = e.name + " " + (reason.empty() ? "has no admissible candidate" : reason) +
                (M ? "" : " (formal level only; no module pinned)");
    // keep a concrete element: first candidate, all signs +, constant by invertibility when possible
    std::vector<int> signs(e.signed_count(), 1);
    if (!prefix(e.candidates[0])) return;
    Scalar c = f().one();
    if (M && e.has_constant) {
      std::string why;
      const auto P = prefix_image(e.candidates[0]);
      const auto R = image_of(rest(e, signs), *M);
      if (auto cc = settle_constant(e, std::nullopt, &P, &R, why)) c = *cc;
    }
    finish(e, 0, signs, c, "none");
    e.status = EntryStatus::Finding;
  }
};

}  // namespace

AFamily resolve_signs_constants(AFamily fam, const Workspace& ws, const RepModule<ExtensionField>* M) {
  if (M) {
    const auto check = verify_module(*M);
    if (!check.ok) throw DomainError("module fails verification: " + check.failures.front());
    if (!(M->field == ws.field())) throw DomainError("module and workspace use different scalar fields");
  }
  Resolver r{ws, M, fam, ws.x(fam.alpha), std::nullopt};
  if (M) r.Xa = M->actions[ws.basis().root_vector(fam.alpha)];
  // entries that only depend on the table first, then those built from other entries
  auto depends = [](const AEntry& e) {
    return std::any_of(e.candidates.begin(), e.candidates.end(),
                       [](const auto& c) { return c.times_entry.has_value() || c.times_paren.has_value(); });
  };
  for (auto& e : fam.entries)
    if (!depends(e)) r.resolve(e);
  for (auto& e : fam.entries)
    if (depends(e)) r.resolve(e);
  return fam;
}

// --- the product family ----------------------------------------------------------------------------

std::uint64_t BasisFamily::size() const {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) s *= cap + 1;
  return s;
}

BasisFamily build_basis_family(const AFamily& fam, const BForms& forms, const BasisOptions& opt) {
  std::size_t k = opt.max_factors == 0 ? fam.entries.size() : std::min(opt.max_factors, fam.entries.size());
  if (forms.elements.size() < k) throw ShapeError("fewer B forms than factors");
  BasisFamily out;
  out.cap = opt.cap;
  for (std::size_t j = 0; j < k; ++j) {
    const auto& e = fam.entries[j];
    if (e.status == EntryStatus::Pending) throw DomainError("family is unresolved at " + e.name);
    if (!e.defined()) {
      if (!opt.allow_provisional) throw DomainError("family is unresolved at " + e.name + ": " + e.finding);
      out.provisional = true;
    }
    out.factors.push_back(forms.elements[j] + e.element);
    out.names.push_back("B" + std::to_string(j + 1) + " + " + e.name);
  }
  return out;
}

std::vector<std::vector<std::size_t>> exponent_tuples(std::size_t factors, std::size_t cap) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t j = 0; j < factors; ++j) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& t : out)
      for (std::size_t e = 0; e <= cap; ++e) {
        auto u = t;
        u.push_back(e);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

RankReport check_independence_formal(const Workspace& ws, const BasisFamily& bf, std::size_t degree_cap,
                                     std::uint64_t budget, std::uint64_t max_work) {
  if (bf.size() > budget)
    throw InfeasibleError("family of " + std::to_string(bf.size()) + " products exceeds the budget of " + std::to_string(budget));
  RankReport r;
  r.mode = "formal";
  r.size = bf.size();
  r.target = static_cast<std::size_t>(bf.size());
  const auto tuples = exponent_tuples(bf.factors.size(), bf.cap);
  std::map<Monomial, std::uint32_t, MonomialOrder> column;
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> rows;
  std::uint64_t work = 0;
  for (const auto& t : tuples) {
    std::vector<UElem> seq;
    std::size_t deg = 0;
    for (std::size_t j = 0; j < t.size(); ++j)
      for (std::size_t k = 0; k < t[j]; ++k) {
        seq.push_back(bf.factors[j]);
        deg += bf.factors[j].degree();
      }
    if (deg > degree_cap) r.exact = false;
    // right-to-left with truncation after every step, as truncated_expand, but with a work cap
    const auto& U = ws.U();
    UElem prod = U.truncate(seq.empty() ? U.one() : seq.back(), degree_cap);
    for (std::size_t k = seq.size() > 0 ? seq.size() - 1 : 0; k-- > 0;) {
      work += static_cast<std::uint64_t>(seq[k].size()) * prod.size();
      if (work > max_work)
        throw InfeasibleError("formal expansion of the family exceeds the work limit of " + std::to_string(max_work) +
                              " term products (reached at a " + std::to_string(seq[k].size()) + " x " +
                              std::to_string(prod.size()) + " multiplication)");
      prod = U.truncate(U.multiply(seq[k], prod), degree_cap);
    }
    std::vector<std::pair<std::uint32_t, Scalar>> row;
    for (const auto& [m, c] : prod.terms()) {
      auto it = column.try_emplace(m, static_cast<std::uint32_t>(column.size())).first;
      row.emplace_back(it->second, c);
    }
    rows.push_back(std::move(row));
  }
  SparseMatrix<K> S(ws.field(), rows.size(), column.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, c] : rows[i]) S.add_to(i, j, c);
  r.rank = rank(S);
  return r;
}

RankReport check_independence_image(const BasisFamily& bf, const RepModule<ExtensionField>& M, std::uint64_t budget) {
  if (bf.size() > budget)
    throw InfeasibleError("family of " + std::to_string(bf.size()) + " products exceeds the budget of " + std::to_string(budget));
  const auto& f = M.field;
  const std::size_t d = M.dim();
  RankReport r;
  r.mode = "image";
  r.size = bf.size();
  r.target = d * d;
  std::vector<std::vector<Dense>> powers;
  for (const auto& x : bf.factors) {
    std::vector<Dense> pw{Dense::identity(f, d)};
    const auto X = image_of(x, M);
    for (std::size_t e = 1; e <= bf.cap; ++e) pw.push_back(pw.back() * X);
    powers.push_back(std::move(pw));
  }
  const auto tuples = exponent_tuples(bf.factors.size(), bf.cap);
  Dense stacked(f, tuples.size(), d * d);
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    Dense prod = Dense::identity(f, d);
    for (std::size_t j = 0; j < tuples[i].size(); ++j)
      if (tuples[i][j]) prod = prod * powers[j][tuples[i][j]];
    for (std::size_t a = 0; a < d * d; ++a) stacked.set(i, a, prod.data()[a]);
  }
  r.rank = rank(stacked);
  return r;
}

}  // namespace lielab
