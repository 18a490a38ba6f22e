#include "lielab/roots.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "lielab/errors.hpp"

namespace lielab {

char family_letter(Family f) { return f == Family::A ? 'A' : 'C'; }

Family parse_family(const std::string& s) {
  if (s == "A" || s == "a") return Family::A;
  if (s == "C" || s == "c") return Family::C;
  throw DomainError("unsupported root system family '" + s + "' (A or C)");
}

Root Root::operator+(const Root& o) const {
  Root r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
  return r;
}

Root Root::operator-(const Root& o) const {
  Root r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
  return r;
}

Root Root::operator-() const { return scaled(-1); }

Root Root::scaled(int k) const {
  Root r = *this;
  for (auto& c : r.coords) c *= k;
  return r;
}

bool Root::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
}

int inner(const Root& a, const Root& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) s += a.coords[i] * b.coords[i];
  return s;
}

int norm2(const Root& a) { return inner(a, a); }

int cartan_integer(const Root& alpha, const Root& beta) {
  const int n = norm2(alpha);
  if (n == 0) throw DomainError("cartan_integer: zero root");
  return 2 * inner(beta, alpha) / n;
}

Root reflect(const Root& alpha, const Root& beta) { return beta - alpha.scaled(cartan_integer(alpha, beta)); }

RootSystem::RootSystem(Family family, int rank) : family_(family), rank_(rank) {
  if (family == Family::A && (rank < 1 || rank > 12)) throw DomainError("A_l needs 1 <= l <= 12");
  if (family == Family::C && (rank < 2 || rank > 12)) throw DomainError("C_l needs 2 <= l <= 12");

  std::vector<Root> pos;
  for (int i = 1; i < ambient(); ++i) {
    for (int j = i + 1; j <= ambient(); ++j) {
      pos.push_back(diff(i, j));
      if (family == Family::C) pos.push_back(sum(i, j));
    }
  }
  if (family == Family::C)
    for (int i = 1; i <= rank; ++i) pos.push_back(twice(i));

  for (int i = 1; i < (family == Family::A ? rank + 1 : rank); ++i) simple_.push_back(diff(i, i + 1));
  if (family == Family::C) simple_.push_back(twice(rank));

  std::sort(pos.begin(), pos.end(), [&](const Root& a, const Root& b) {
    const int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a.coords > b.coords;
  });
  roots_ = pos;
  for (const auto& r : pos) roots_.push_back(-r);
}

std::optional<std::size_t> RootSystem::find(const Root& r) const {
  if (static_cast<int>(r.coords.size()) != ambient()) return std::nullopt;
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (roots_[i] == r) return i;
  return std::nullopt;
}

std::size_t RootSystem::index_of(const Root& r) const {
  auto i = find(r);
  if (!i) throw DomainError("not a root of " + name());
  return *i;
}

std::vector<int> RootSystem::simple_coefficients(const Root& r) const {
  std::vector<int> k(static_cast<std::size_t>(rank_), 0);
  int partial = 0;
  for (int i = 0; i < rank_; ++i) {
    partial += r.coords[static_cast<std::size_t>(i)];
    k[static_cast<std::size_t>(i)] = partial;
  }
  if (family_ == Family::C) k.back() /= 2;
  return k;
}

int RootSystem::height(const Root& r) const {
  int h = 0;
  for (int c : simple_coefficients(r)) h += c;
  return h;
}

bool RootSystem::is_positive(const Root& r) const { return height(r) > 0; }

bool RootSystem::is_long(const Root& r) const { return family_ == Family::C && norm2(r) == 4; }

Root RootSystem::epsilon(int i) const {
  if (i < 1 || i > ambient()) throw DomainError("epsilon index out of range");
  Root r{std::vector<int>(static_cast<std::size_t>(ambient()), 0)};
  r.coords[static_cast<std::size_t>(i - 1)] = 1;
  return r;
}

Root RootSystem::diff(int i, int j) const { return epsilon(i) - epsilon(j); }
Root RootSystem::sum(int i, int j) const { return epsilon(i) + epsilon(j); }
Root RootSystem::twice(int i) const { return epsilon(i).scaled(2); }

std::string RootSystem::label(const Root& r) const {
  std::string out;
  auto term = [&](int c, std::size_t i) {
    if (c > 0 && !out.empty()) out += '+';
    if (c < 0) out += '-';
    if (std::abs(c) != 1) out += std::to_string(std::abs(c));
    out += 'e' + std::to_string(i + 1);
  };
  for (std::size_t i = 0; i < r.coords.size(); ++i)
    if (r.coords[i] > 0) term(r.coords[i], i);
  for (std::size_t i = 0; i < r.coords.size(); ++i)
    if (r.coords[i] < 0) term(r.coords[i], i);
  return out.empty() ? "0" : out;
}

Root RootSystem::parse(const std::string& text) const {
  Root r{std::vector<int>(static_cast<std::size_t>(ambient()), 0)};
  std::size_t pos = 0;
  bool any = false;
  while (pos < text.size()) {
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') sign = text[pos++] == '-' ? -1 : 1;
    int coef = 0;
    bool digits = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coef = coef * 10 + (text[pos++] - '0');
      digits = true;
    }
    if (!digits) coef = 1;
    if (pos >= text.size() || text[pos] != 'e') throw ParseError("bad root label '" + text + "'");
    ++pos;
    int idx = 0;
    bool idx_digits = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      idx = idx * 10 + (text[pos++] - '0');
      idx_digits = true;
    }
    if (!idx_digits || idx < 1 || idx > ambient()) throw ParseError("bad epsilon index in '" + text + "'");
    r.coords[static_cast<std::size_t>(idx - 1)] += sign * coef;
    any = true;
  }
  if (!any) throw ParseError("empty root label");
  if (!contains(r)) throw DomainError("'" + text + "' is not a root of " + name());
  return r;
}

std::string RootSystem::name() const { return std::string(1, family_letter(family_)) + std::to_string(rank_); }

Root apply_word(const RootSystem& rs, const std::vector<int>& word, const Root& r) {
  Root x = r;
  for (int i : word) x = reflect(rs.simple(i), x);
  return x;
}

std::optional<std::vector<int>> weyl_conjugate(const RootSystem& rs, const Root& source, const Root& target) {
  const std::size_t s = rs.index_of(source);
  const std::size_t t = rs.index_of(target);
  if (norm2(source) != norm2(target)) return std::nullopt;

  // BFS over the orbit; FIFO order plus increasing reflection index keeps words lexicographically minimal.
  std::vector<int> parent(rs.size(), -1);
  std::vector<int> via(rs.size(), -1);
  std::vector<bool> seen(rs.size(), false);
  std::deque<std::size_t> queue{s};
  seen[s] = true;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    if (cur == t) break;
    for (int i = 0; i < rs.rank(); ++i) {
      const std::size_t nxt = rs.index_of(reflect(rs.simple(i), rs.root(cur)));
      if (seen[nxt]) continue;
      seen[nxt] = true;
      parent[nxt] = static_cast<int>(cur);
      via[nxt] = i;
      queue.push_back(nxt);
    }
  }
  if (!seen[t]) return std::nullopt;
  std::vector<int> word;
  for (std::size_t cur = t; cur != s; cur = static_cast<std::size_t>(parent[cur])) word.push_back(via[cur]);
  std::reverse(word.begin(), word.end());
  if (apply_word(rs, word, source) != target) throw DomainError("internal: Weyl word does not conjugate");
  return word;
}

}  // namespace lielab
