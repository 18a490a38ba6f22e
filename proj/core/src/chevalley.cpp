#include "lielab/chevalley.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lielab/errors.hpp"
#include "lielab/matrix.hpp"
#include "lielab/prime_field.hpp"

namespace lielab {

namespace {

std::int64_t exact_div(std::int64_t num, std::int64_t den) {
  if (den == 0 || num % den != 0) throw DomainError("internal: non-integral structure constant");
  return num / den;
}

std::string root_label(const RootSystem& rs, const Root& r) { return "x(" + rs.label(r) + ")"; }

}  // namespace

ChevalleyBasis::ChevalleyBasis(RootSystem rs) : rs_(std::move(rs)) {
  compute_constants();
  fill_table();
}

std::size_t ChevalleyBasis::root_vector(std::size_t root_index) const {
  if (root_index >= rs_.size()) throw DomainError("root index out of range");
  if (root_index < m()) return m() + static_cast<std::size_t>(rank()) + root_index;
  return root_index - m();
}

std::size_t ChevalleyBasis::root_index_of(std::size_t b) const {
  if (!is_root_vector(b)) throw DomainError("basis element " + label(b) + " is not a root vector");
  if (b < m()) return b + m();
  return b - m() - static_cast<std::size_t>(rank());
}

const Root& ChevalleyBasis::root_of(std::size_t b) const { return rs_.root(root_index_of(b)); }

std::int64_t ChevalleyBasis::positive_N(std::size_t i, std::size_t j) const {
  auto it = npos_.find({i, j});
  if (it == npos_.end()) throw DomainError("internal: structure constant requested before it was fixed");
  return it->second;
}

std::int64_t ChevalleyBasis::N(const Root& a, const Root& b) const {
  const Root s = a + b;
  if (s.is_zero() || !rs_.contains(s)) return 0;
  const bool pa = rs_.is_positive(a), pb = rs_.is_positive(b);
  if (pa && pb) return positive_N(rs_.index_of(a), rs_.index_of(b));
  if (!pa && !pb) return -N(-a, -b);
  // a + b + c = 0 and N(a,b)/|c|^2 = N(b,c)/|a|^2 = N(c,a)/|b|^2
  const Root c = -s;
  if (rs_.is_positive(c) == pb) return exact_div(norm2(c) * N(b, c), norm2(a));
  return exact_div(norm2(c) * N(c, a), norm2(b));
}

void ChevalleyBasis::compute_constants() {
  const std::size_t mp = rs_.num_positive();
  for (std::size_t k = 0; k < mp; ++k) {
    const Root& xi = rs_.root(k);
    std::vector<std::pair<std::size_t, std::size_t>> special;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (rs_.root(i) + rs_.root(j) == xi) special.emplace_back(i, j);
    if (special.empty()) continue;

    const auto [i0, j0] = special.front();
    const Root& a0 = rs_.root(i0);
    const Root& b0 = rs_.root(j0);
    int q = 0;
    while (rs_.contains(b0 - a0.scaled(q + 1))) ++q;
    npos_[{i0, j0}] = q + 1;
    npos_[{j0, i0}] = -(q + 1);

    for (std::size_t s = 1; s < special.size(); ++s) {
      const auto [i, j] = special[s];
      const Root& a = rs_.root(i);
      const Root& b = rs_.root(j);
      // four-term relation on a, b, -a0, -b0
      std::int64_t sum = 0;
      const Root ba = b - a0;
      if (!ba.is_zero() && rs_.contains(ba)) sum += N(b, -a0) * N(a, -b0) * (4 / norm2(ba));
      const Root aa = a - a0;
      if (!aa.is_zero() && rs_.contains(aa)) sum += N(-a0, a) * N(b, -b0) * (4 / norm2(aa));
      const std::int64_t n = exact_div(norm2(xi) * sum, 4 * npos_.at({i0, j0}));
      npos_[{i, j}] = n;
      npos_[{j, i}] = -n;
    }
  }
}

std::vector<std::int64_t> ChevalleyBasis::coroot_coefficients(const Root& r) const {
  const auto k = rs_.simple_coefficients(r);
  std::vector<std::int64_t> out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i)
    out[i] = exact_div(static_cast<std::int64_t>(k[i]) * norm2(rs_.simple(static_cast<int>(i))), norm2(r));
  return out;
}

void ChevalleyBasis::fill_table() {
  const std::size_t n = dim();
  table_.algebra = rs_.name();
  table_.modulus = 0;
  table_.labels.resize(n);
  for (std::size_t b = 0; b < n; ++b) {
    table_.labels[b] = is_root_vector(b) ? root_label(rs_, root_of(b)) : "h" + std::to_string(b - m() + 1);
  }
  table_.entries.assign(n * n, {});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto& e = table_.entries[a * n + b];
      if (is_root_vector(a) && is_root_vector(b)) {
        const Root& ra = root_of(a);
        const Root& rb = root_of(b);
        const Root s = ra + rb;
        if (s.is_zero()) {
          const auto c = coroot_coefficients(ra);
          for (int i = 0; i < rank(); ++i)
            if (c[static_cast<std::size_t>(i)] != 0)
              e.push_back({static_cast<std::uint32_t>(coroot(i)), c[static_cast<std::size_t>(i)]});
        } else if (rs_.contains(s)) {
          e.push_back({static_cast<std::uint32_t>(root_vector(s)), N(ra, rb)});
        }
      } else if (is_cartan(a) && is_root_vector(b)) {
        const int c = cartan_integer(rs_.simple(static_cast<int>(a - m())), root_of(b));
        if (c != 0) e.push_back({static_cast<std::uint32_t>(b), c});
      } else if (is_root_vector(a) && is_cartan(b)) {
        const int c = cartan_integer(rs_.simple(static_cast<int>(b - m())), root_of(a));
        if (c != 0) e.push_back({static_cast<std::uint32_t>(a), -c});
      }
      std::sort(e.begin(), e.end(), [](const LieTerm& x, const LieTerm& y) { return x.index < y.index; });
    }
  }
}

std::optional<std::size_t> ChevalleyBasis::find_label(const std::string& label) const {
  for (std::size_t b = 0; b < table_.labels.size(); ++b)
    if (table_.labels[b] == label) return b;
  return std::nullopt;
}

ModularLieAlgebra::ModularLieAlgebra(std::shared_ptr<const ChevalleyBasis> basis, std::uint32_t p)
    : basis_(std::move(basis)), p_(p) {
  if (p < 7) throw DomainError("characteristic must be at least 7, got " + std::to_string(p));
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  table_ = basis_->table();
  table_.modulus = p;
  for (auto& e : table_.entries) {
    std::vector<LieTerm> r;
    for (const auto& t : e) {
      const std::int64_t c = ((t.coeff % p) + p) % p;
      if (c != 0) r.push_back({t.index, c});
    }
    e = std::move(r);
  }
  if (basis_->roots().family() == Family::A && (basis_->rank() + 1) % static_cast<int>(p) == 0) {
    warning_ = "p divides l+1: sl_{l+1} has a centre in this characteristic; no quotient is taken";
  }
}

std::vector<LieTerm> ModularLieAlgebra::p_map(std::size_t b) const {
  if (basis_->is_root_vector(b)) return {};
  return {{static_cast<std::uint32_t>(b), 1}};
}

std::shared_ptr<const ChevalleyBasis> structure_constants(const RootSystem& rs) {
  return std::make_shared<const ChevalleyBasis>(rs);
}

ModularLieAlgebra reduce_mod_p(std::shared_ptr<const ChevalleyBasis> basis, std::uint32_t p) {
  return ModularLieAlgebra(std::move(basis), p);
}

ModularLieAlgebra make_algebra(Family family, int rank, std::uint32_t p) {
  return reduce_mod_p(structure_constants(RootSystem(family, rank)), p);
}

namespace {

using SparseVec = std::map<std::uint32_t, std::int64_t>;

std::int64_t norm_coeff(std::int64_t c, std::uint32_t p) {
  if (p == 0) return c;
  c %= static_cast<std::int64_t>(p);
  return c < 0 ? c + p : c;
}

void accumulate(SparseVec& acc, const std::vector<LieTerm>& terms, std::int64_t scale, std::uint32_t p) {
  for (const auto& t : terms) {
    auto& x = acc[t.index];
    x = norm_coeff(x + norm_coeff(scale * t.coeff, p), p);
  }
}

SparseVec bracket_with(const StructureTable& t, std::size_t a, const std::vector<LieTerm>& v) {
  SparseVec acc;
  for (const auto& term : v) accumulate(acc, t.bracket(a, term.index), term.coeff, t.modulus);
  return acc;
}

}  // namespace

std::vector<JacobiViolation> verify_jacobi(const StructureTable& t) {
  std::vector<JacobiViolation> out;
  const std::size_t n = t.dim();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      SparseVec s;
      accumulate(s, t.bracket(a, b), 1, t.modulus);
      accumulate(s, t.bracket(b, a), 1, t.modulus);
      if (std::any_of(s.begin(), s.end(), [](const auto& kv) { return kv.second != 0; })) out.push_back({a, b, a});
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        SparseVec total;
        for (const auto& [x, y, z] : {std::tuple{a, b, c}, std::tuple{b, c, a}, std::tuple{c, a, b}}) {
          const SparseVec inner_v = [&] {
            SparseVec v;
            accumulate(v, t.bracket(y, z), 1, t.modulus);
            return v;
          }();
          std::vector<LieTerm> as_terms;
          for (const auto& [k, v] : inner_v)
            if (v != 0) as_terms.push_back({k, v});
          for (const auto& [k, v] : bracket_with(t, x, as_terms)) {
            auto& dst = total[k];
            dst = norm_coeff(dst + v, t.modulus);
          }
        }
        if (std::any_of(total.begin(), total.end(), [](const auto& kv) { return kv.second != 0; }))
          out.push_back({a, b, c});
      }
    }
  }
  return out;
}

std::vector<std::size_t> verify_restricted(const ModularLieAlgebra& alg) {
  const PrimeField f(alg.p());
  const std::size_t n = alg.n();
  auto ad = [&](const std::vector<LieTerm>& x) {
    Matrix<PrimeField> m(f, n, n);
    for (const auto& xt : x)
      for (std::size_t b = 0; b < n; ++b)
        for (const auto& t : alg.table().bracket(xt.index, b))
          m.add_to(t.index, b, f.mul(f.from_int(xt.coeff), f.from_int(t.coeff)));
    return m;
  };
  std::vector<std::size_t> bad;
  for (std::size_t b = 0; b < n; ++b) {
    const auto lhs = ad({{static_cast<std::uint32_t>(b), 1}}).power(alg.p());
    if (!(lhs == ad(alg.p_map(b)))) bad.push_back(b);
  }
  return bad;
}

namespace {

std::string format_terms(const StructureTable& t, const std::vector<LieTerm>& terms) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::int64_t c = terms[i].coeff;
    if (i == 0) {
      out += std::to_string(c);
    } else {
      out += c < 0 ? " - " : " + ";
      out += std::to_string(c < 0 ? -c : c);
    }
    out += " * " + t.labels[terms[i].index];
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void finish_import(StructureTable& t) {
  const std::size_t n = t.dim();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      auto& lower = t.entries[b * n + a];
      lower.clear();
      for (const auto& term : t.entries[a * n + b]) {
        std::int64_t c = -term.coeff;
        if (t.modulus) c = norm_coeff(c, t.modulus);
        lower.push_back({term.index, c});
      }
    }
  }
}

}  // namespace

std::string export_text(const StructureTable& t) {
  std::ostringstream os;
  os << "# lielab structure constants v1\n";
  os << "# algebra: " << t.algebra << "\n";
  os << "# modulus: " << t.modulus << "\n";
  os << "# convention: " << kSignConvention << "\n";
  os << "# basis:";
  for (const auto& l : t.labels) os << ' ' << l;
  os << "\n";
  const std::size_t n = t.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!t.bracket(a, b).empty())
        os << '[' << t.labels[a] << ", " << t.labels[b] << "] = " << format_terms(t, t.bracket(a, b)) << "\n";
  return os.str();
}

StructureTable import_text(const std::string& text) {
  StructureTable t;
  std::istringstream is(text);
  std::string line;
  std::map<std::string, std::uint32_t> index;
  bool have_basis = false;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = trim(line.substr(1, colon - 1));
      const std::string value = trim(line.substr(colon + 1));
      if (key == "algebra") {
        t.algebra = value;
      } else if (key == "modulus") {
        t.modulus = static_cast<std::uint32_t>(std::stoul(value));
      } else if (key == "basis") {
        std::istringstream ls(value);
        std::string lab;
        while (ls >> lab) {
          index[lab] = static_cast<std::uint32_t>(t.labels.size());
          t.labels.push_back(lab);
        }
        t.entries.assign(t.labels.size() * t.labels.size(), {});
        have_basis = true;
      }
      continue;
    }
    if (!have_basis) throw ParseError("bracket before basis header at line " + std::to_string(lineno));
    const auto close = line.find(']');
    const auto comma = line.find(", ");
    const auto eq = line.find(" = ", close == std::string::npos ? 0 : close);
    if (line[0] != '[' || close == std::string::npos || comma == std::string::npos || comma > close ||
        eq == std::string::npos)
      throw ParseError("malformed bracket at line " + std::to_string(lineno));
    const std::string la = line.substr(1, comma - 1);
    const std::string lb = line.substr(comma + 2, close - comma - 2);
    if (!index.count(la) || !index.count(lb)) throw ParseError("unknown label at line " + std::to_string(lineno));
    const std::size_t a = index[la], b = index[lb];
    if (a >= b) throw ParseError("brackets must be listed with the earlier basis element first");
    std::istringstream rhs(line.substr(eq + 3));
    std::vector<LieTerm> terms;
    std::string tok;
    std::int64_t sign = 1;
    bool first = true;
    while (rhs >> tok) {
      if (!first) {
        if (tok != "+" && tok != "-") throw ParseError("expected + or - at line " + std::to_string(lineno));
        sign = tok == "-" ? -1 : 1;
        if (!(rhs >> tok)) throw ParseError("dangling sign at line " + std::to_string(lineno));
      }
      std::int64_t c;
      try {
        c = std::stoll(tok);
      } catch (const std::exception&) {
        throw ParseError("bad coefficient '" + tok + "' at line " + std::to_string(lineno));
      }
      std::string star, lab;
      if (!(rhs >> star >> lab) || star != "*" || !index.count(lab))
        throw ParseError("bad term at line " + std::to_string(lineno));
      terms.push_back({index[lab], sign * c});
      first = false;
    }
    t.entries[a * t.dim() + b] = std::move(terms);
  }
  if (!have_basis) throw ParseError("missing basis header");
  finish_import(t);
  return t;
}

std::string export_json(const StructureTable& t) {
  nlohmann::ordered_json j;
  j["format"] = "lielab-structure-constants";
  j["version"] = 1;
  j["algebra"] = t.algebra;
  j["modulus"] = t.modulus;
  j["convention"] = kSignConvention;
  j["basis"] = t.labels;
  auto arr = nlohmann::ordered_json::array();
  const std::size_t n = t.dim();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (t.bracket(a, b).empty()) continue;
      auto terms = nlohmann::ordered_json::array();
      for (const auto& term : t.bracket(a, b)) terms.push_back({term.index, term.coeff});
      arr.push_back({{"a", a}, {"b", b}, {"terms", terms}});
    }
  }
  j["brackets"] = arr;
  return j.dump(1) + "\n";
}

StructureTable import_json(const std::string& text) {
  StructureTable t;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format") != "lielab-structure-constants") throw ParseError("not a structure-constant document");
    t.algebra = j.at("algebra").get<std::string>();
    t.modulus = j.at("modulus").get<std::uint32_t>();
    t.labels = j.at("basis").get<std::vector<std::string>>();
    t.entries.assign(t.dim() * t.dim(), {});
    for (const auto& br : j.at("brackets")) {
      const auto a = br.at("a").get<std::size_t>();
      const auto b = br.at("b").get<std::size_t>();
      if (a >= b || b >= t.dim()) throw ParseError("bracket indices out of order or range");
      for (const auto& term : br.at("terms"))
        t.entries[a * t.dim() + b].push_back({term.at(0).get<std::uint32_t>(), term.at(1).get<std::int64_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("structure-constant JSON: ") + e.what());
  }
  finish_import(t);
  return t;
}

}  // namespace lielab
