#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lielab/chevalley.hpp"
#include "lielab/errors.hpp"
#include "lielab/integer_ring.hpp"

namespace lielab {

/// Exponent vector over the ordered Lie basis.
using Monomial = std::vector<std::uint16_t>;

inline std::size_t degree(const Monomial& m) {
  std::size_t d = 0;
  for (auto e : m) d += e;
  return d;
}

/// Graded lexicographic: lower total degree first, then lexicographic on exponents.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const auto da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : m) {
      h ^= e;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

template <class R>
class Enveloping;

/// Element of U(L): a sparse combination of PBW monomials with no zero coefficients.
template <class R>
class UEAElement {
 public:
  using Coeff = typename R::Elem;
  using Terms = std::map<Monomial, Coeff, MonomialOrder>;

  UEAElement() = default;

  const Enveloping<R>* algebra() const { return alg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::size_t degree() const { return terms_.empty() ? 0 : lielab::degree(terms_.rbegin()->first); }

  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  UEAElement operator+(const UEAElement& o) const { return combine(o, false); }
  UEAElement operator-(const UEAElement& o) const { return combine(o, true); }
  UEAElement operator-() const {
    UEAElement r = *this;
    for (auto& [m, c] : r.terms_) c = alg_->ring().neg(c);
    return r;
  }
  UEAElement operator*(const UEAElement& o) const { return owner(o).multiply(*this, o); }
  UEAElement scaled(const Coeff& c) const {
    UEAElement r;
    r.alg_ = alg_;
    if (!alg_ || alg_->ring().is_zero(c)) return r;
    for (const auto& [m, x] : terms_) {
      auto v = alg_->ring().mul(x, c);
      if (!alg_->ring().is_zero(v)) r.terms_.emplace(m, v);
    }
    return r;
  }

  bool operator==(const UEAElement& o) const { return terms_ == o.terms_; }

 private:
  friend class Enveloping<R>;

  const Enveloping<R>& owner(const UEAElement& o) const {
    if (alg_ && o.alg_ && alg_ != o.alg_) throw DomainError("elements belong to different enveloping algebras");
    const auto* a = alg_ ? alg_ : o.alg_;
    if (!a) throw DomainError("operation on detached elements");
    return *a;
  }

  UEAElement combine(const UEAElement& o, bool subtract) const {
    const auto& alg = owner(o);
    UEAElement r = *this;
    r.alg_ = &alg;
    for (const auto& [m, c] : o.terms_) alg.add_term(r.terms_, m, subtract ? alg.ring().neg(c) : c);
    return r;
  }

  const Enveloping<R>* alg_ = nullptr;
  Terms terms_;
};

/// U(L) for the Lie algebra given by a structure table, with coefficients in R.
///
/// Multiplication straightens into PBW normal form with a memoised left action x_i * m. The memo
/// is mutable state: use one instance per thread.
template <class R>
class Enveloping {
 public:
  using Coeff = typename R::Elem;
  using Element = UEAElement<R>;
  using Terms = typename Element::Terms;

  Enveloping(R ring, const StructureTable& table) : ring_(std::move(ring)), labels_(table.labels) {
    const std::size_t n = table.dim();
    bracket_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (const auto& t : table.bracket(a, b)) {
          auto c = ring_.from_int(t.coeff);
          if (!ring_.is_zero(c)) bracket_[a * n + b].emplace_back(t.index, c);
        }
    for (std::size_t i = 0; i < n; ++i) label_index_[labels_[i]] = i;
  }

  Enveloping(const Enveloping&) = delete;
  Enveloping& operator=(const Enveloping&) = delete;

  const R& ring() const { return ring_; }
  std::size_t n() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t index_of(const std::string& label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end()) throw DomainError("unknown basis label '" + label + "'");
    return it->second;
  }

  Element zero() const { return make({}); }
  Element one() const { return scalar(ring_.one()); }
  Element scalar(const Coeff& c) const {
    Terms t;
    add_term(t, Monomial(n(), 0), c);
    return make(std::move(t));
  }
  Element gen(std::size_t i, std::uint16_t power = 1) const {
    Monomial m(n(), 0);
    m.at(i) = power;
    return monomial(m, ring_.one());
  }
  Element monomial(const Monomial& m, const Coeff& c) const {
    if (m.size() != n()) throw ShapeError("monomial length differs from the algebra dimension");
    Terms t;
    add_term(t, m, c);
    return make(std::move(t));
  }
  Element from_terms(Terms t) const {
    for (auto it = t.begin(); it != t.end();) it = ring_.is_zero(it->second) ? t.erase(it) : std::next(it);
    return make(std::move(t));
  }
  /// Degree-one element sum c_k b_k of the Lie algebra.
  Element from_lie(const std::vector<std::pair<std::size_t, Coeff>>& v) const {
    Terms t;
    for (const auto& [k, c] : v) {
      Monomial m(n(), 0);
      m.at(k) = 1;
      add_term(t, m, c);
    }
    return make(std::move(t));
  }

  Element multiply(const Element& u, const Element& v) const {
    check(u);
    check(v);
    Terms out;
    if (u.terms_.empty() || v.terms_.empty()) return make({});
    for (const auto& [a, ca] : u.terms_) {
      Terms cur = v.terms_;
      for (std::size_t idx = n(); idx-- > 0;) {
        for (std::uint16_t r = 0; r < a[idx]; ++r) {
          Terms nxt;
          for (const auto& [mon, c] : cur) leftmul_acc(idx, mon, c, nxt);
          cur = std::move(nxt);
        }
      }
      for (const auto& [mon, c] : cur) add_term(out, mon, ring_.mul(ca, c));
    }
    return make(std::move(out));
  }

  Element commutator(const Element& u, const Element& v) const { return multiply(u, v) - multiply(v, u); }

  Element power(const Element& u, std::uint32_t k) const {
    Element r = one();
    for (std::uint32_t i = 0; i < k; ++i) r = multiply(u, r);
    return r;
  }

  /// Drops every term of degree above cap.
  Element truncate(const Element& u, std::size_t cap) const {
    check(u);
    Terms t;
    for (const auto& [m, c] : u.terms_)
      if (lielab::degree(m) <= cap) t.emplace(m, c);
    return make(std::move(t));
  }

  /// Right-to-left product of the factors, truncating to degree <= cap after every multiplication.
  /// Equals the truncation of the full product when cap is at least the total degree or when there is
  /// a single multiplication; in general straightening can move high-degree mass below the cap.
  Element truncated_expand(const std::vector<Element>& factors, std::size_t cap) const {
    if (factors.empty()) return truncate(one(), cap);
    Element acc = truncate(factors.back(), cap);
    for (std::size_t k = factors.size() - 1; k-- > 0;) acc = truncate(multiply(factors[k], acc), cap);
    return acc;
  }

  /// Homogeneous part of maximal degree.
  Element top_degree_part(const Element& u) const {
    check(u);
    Terms t;
    const auto d = u.degree();
    for (const auto& [m, c] : u.terms_)
      if (lielab::degree(m) == d) t.emplace(m, c);
    return make(std::move(t));
  }

  /// `c * b1^e1 b2^e2 + ...` in term order; "0" for zero and "1" for the empty monomial.
  std::string format(const Element& u) const {
    check(u);
    if (u.terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : u.terms_) {
      if (!out.empty()) out += " + ";
      out += ring_.to_string(c) + " * ";
      bool any = false;
      for (std::size_t i = 0; i < n(); ++i) {
        if (m[i] == 0) continue;
        if (any) out += ' ';
        out += labels_[i];
        if (m[i] != 1) out += '^' + std::to_string(m[i]);
        any = true;
      }
      if (!any) out += '1';
    }
    return out;
  }

  /// Accepts the format() grammar. Factors may come in any order; they are multiplied out.
  Element parse(const std::string& text) const {
    const std::string s = trim(text);
    if (s == "0") return zero();
    Element result = zero();
    std::size_t start = 0;
    while (start <= s.size()) {
      std::size_t end = s.find(" + ", start);
      const std::string term = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
      result = result + parse_term(term);
      if (end == std::string::npos) break;
      start = end + 3;
    }
    return result;
  }

  std::size_t cache_size() const { return memo_.size(); }
  void clear_cache() const { memo_.clear(); }

  void add_term(Terms& t, const Monomial& m, const Coeff& c) const {
    if (ring_.is_zero(c)) return;
    auto [it, inserted] = t.emplace(m, c);
    if (!inserted) {
      it->second = ring_.add(it->second, c);
      if (ring_.is_zero(it->second)) t.erase(it);
    }
  }

 private:
  friend class UEAElement<R>;

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\n\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\n\r") - b + 1);
  }

  Element parse_term(const std::string& raw) const {
    const std::string term = trim(raw);
    const auto star = term.find(" * ");
    if (star == std::string::npos) throw ParseError("term without ' * ': '" + term + "'");
    const Coeff c = ring_.parse(term.substr(0, star));
    std::istringstream fs(term.substr(star + 3));
    std::string tok;
    Element acc = scalar(c);
    std::vector<Element> factors;
    bool saw_one = false;
    while (fs >> tok) {
      if (tok == "1") {
        saw_one = true;
        continue;
      }
      std::uint16_t e = 1;
      const auto caret = tok.find('^');
      std::string lab = tok;
      if (caret != std::string::npos) {
        lab = tok.substr(0, caret);
        try {
          e = static_cast<std::uint16_t>(std::stoul(tok.substr(caret + 1)));
        } catch (const std::exception&) {
          throw ParseError("bad exponent in '" + tok + "'");
        }
      }
      auto it = label_index_.find(lab);
      if (it == label_index_.end()) throw ParseError("unknown basis label '" + lab + "'");
      factors.push_back(gen(it->second, e));
    }
    if (factors.empty() && !saw_one) throw ParseError("empty monomial in '" + term + "'");
    for (const auto& f : factors) acc = multiply(acc, f);
    return acc;
  }

  Element make(Terms t) const {
    Element e;
    e.alg_ = this;
    e.terms_ = std::move(t);
    return e;
  }

  void check(const Element& u) const {
    if (u.alg_ && u.alg_ != this) throw DomainError("element belongs to a different enveloping algebra");
  }

  /// out += scale * (x_i * m), straightened.
  void leftmul_acc(std::size_t i, const Monomial& m, const Coeff& scale, Terms& out) const {
    std::size_t j = 0;
    while (j < m.size() && m[j] == 0) ++j;
    if (i <= j) {
      Monomial r = m;
      ++r[i];
      add_term(out, r, scale);
      return;
    }
    for (const auto& [mon, c] : leftmul(i, j, m)) add_term(out, mon, ring_.mul(scale, c));
  }

  /// x_i * m for i after the first factor x_j of m: x_i x_j m' = x_j (x_i m') + [x_i, x_j] m'.
  const std::vector<std::pair<Monomial, Coeff>>& leftmul(std::size_t i, std::size_t j, const Monomial& m) const {
    Monomial key = m;
    key.push_back(static_cast<std::uint16_t>(i));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Monomial rest = m;
    --rest[j];
    Terms inner;
    leftmul_acc(i, rest, ring_.one(), inner);
    Terms res;
    for (const auto& [mon, c] : inner) leftmul_acc(j, mon, c, res);
    for (const auto& [k, ck] : bracket_[i * n() + j]) leftmul_acc(k, rest, ck, res);
    std::vector<std::pair<Monomial, Coeff>> flat(res.begin(), res.end());
    return memo_.emplace(std::move(key), std::move(flat)).first->second;
  }

  R ring_;
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> label_index_;
  std::vector<std::vector<std::pair<std::size_t, Coeff>>> bracket_;
  mutable std::unordered_map<Monomial, std::vector<std::pair<Monomial, Coeff>>, MonomialHash> memo_;
};

/// Coefficient-wise image of an element under a ring map into another enveloping algebra on the same basis.
template <class R1, class R2, class Map>
UEAElement<R2> map_coefficients(const UEAElement<R1>& u, const Enveloping<R2>& target, Map f) {
  typename UEAElement<R2>::Terms t;
  for (const auto& [m, c] : u.terms()) target.add_term(t, m, f(c));
  return target.from_terms(std::move(t));
}

/// Reduction of an integral element mod the characteristic of a prime-field algebra.
template <class F>
UEAElement<F> reduce_integral(const UEAElement<IntegerRing>& u, const Enveloping<F>& target) {
  const auto p = static_cast<std::int64_t>(target.ring().characteristic());
  return map_coefficients(u, target, [&](const IntegerRing::Elem& c) {
    IntegerRing::Elem r = c % p;
    if (r < 0) r += p;
    return target.ring().from_int(static_cast<std::int64_t>(r));
  });
}

}  // namespace lielab
