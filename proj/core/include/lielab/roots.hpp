#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace lielab {

enum class Family { A, C };

char family_letter(Family f);
Family parse_family(const std::string& s);

/// A vector in the orthonormal epsilon basis. Length l+1 for A_l, l for C_l.
struct Root {
  std::vector<int> coords;

  Root operator+(const Root& o) const;
  Root operator-(const Root& o) const;
  Root operator-() const;
  Root scaled(int k) const;
  bool is_zero() const;
  auto operator<=>(const Root&) const = default;
};

int inner(const Root& a, const Root& b);
int norm2(const Root& a);
/// 2(beta, alpha)/(alpha, alpha).
int cartan_integer(const Root& alpha, const Root& beta);
/// s_alpha(beta).
Root reflect(const Root& alpha, const Root& beta);

class RootSystem {
 public:
  RootSystem(Family family, int rank);

  Family family() const { return family_; }
  int rank() const { return rank_; }
  /// Length of coordinate vectors.
  int ambient() const { return family_ == Family::A ? rank_ + 1 : rank_; }
  std::size_t size() const { return roots_.size(); }
  /// Number of positive roots.
  std::size_t num_positive() const { return roots_.size() / 2; }

  /// Canonical order: positives by height then descending coordinates, then their negatives in the same order.
  const std::vector<Root>& roots() const { return roots_; }
  const Root& root(std::size_t i) const { return roots_[i]; }
  const std::vector<Root>& simple() const { return simple_; }
  const Root& simple(int i) const { return simple_[static_cast<std::size_t>(i)]; }

  std::optional<std::size_t> find(const Root& r) const;
  std::size_t index_of(const Root& r) const;  // throws DomainError
  bool contains(const Root& r) const { return find(r).has_value(); }
  bool is_positive(const Root& r) const;
  /// Coefficients of r in the base.
  std::vector<int> simple_coefficients(const Root& r) const;
  int height(const Root& r) const;
  bool is_long(const Root& r) const;
  /// Index of the negative of root i.
  std::size_t negative_index(std::size_t i) const { return i < num_positive() ? i + num_positive() : i - num_positive(); }

  Root epsilon(int i) const;  // 1-based
  /// e_i - e_j, e_i + e_j, 2e_i with 1-based indices.
  Root diff(int i, int j) const;
  Root sum(int i, int j) const;
  Root twice(int i) const;

  /// Text form such as "e1-e2", "2e3", "-e1-e2", "e2-e1".
  std::string label(const Root& r) const;
  Root parse(const std::string& label) const;  // throws ParseError / DomainError

  std::string name() const;

 private:
  Family family_;
  int rank_;
  std::vector<Root> roots_;
  std::vector<Root> simple_;
};

/// Shortest word in simple reflections taking source to target, lexicographically first among ties.
/// The word lists reflection indices (0-based) in the order they are applied.
/// Absent when the lengths differ; throws DomainError for roots outside the system.
std::optional<std::vector<int>> weyl_conjugate(const RootSystem& rs, const Root& source, const Root& target);

Root apply_word(const RootSystem& rs, const std::vector<int>& word, const Root& r);

}  // namespace lielab
