#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lielab/roots.hpp"

namespace lielab {

/// One term c * b_k of a bracket.
struct LieTerm {
  std::uint32_t index;
  std::int64_t coeff;
  bool operator==(const LieTerm&) const = default;
};

/// Bracket table on an ordered basis: entry (a, b) holds [b_a, b_b] as a sparse combination.
/// With modulus > 0 the coefficients are residues in [0, modulus).
struct StructureTable {
  std::string algebra;
  std::uint32_t modulus = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<LieTerm>> entries;

  std::size_t dim() const { return labels.size(); }
  const std::vector<LieTerm>& bracket(std::size_t a, std::size_t b) const { return entries[a * dim() + b]; }
  std::vector<LieTerm>& bracket(std::size_t a, std::size_t b) { return entries[a * dim() + b]; }
  bool operator==(const StructureTable&) const = default;
};

/// Sign convention recorded in every export.
inline constexpr const char* kSignConvention =
    "extraspecial pairs positive; N(-a,-b) = -N(a,b); root order by height then descending coordinates";

/// Integral Chevalley basis.
///
/// Basis order (also the PBW order): negative root vectors, then h_1..h_l, then positive root vectors,
/// each block following the canonical root order.
class ChevalleyBasis {
 public:
  explicit ChevalleyBasis(RootSystem rs);

  const RootSystem& roots() const { return rs_; }
  std::size_t dim() const { return rs_.size() + static_cast<std::size_t>(rs_.rank()); }
  int rank() const { return rs_.rank(); }
  std::size_t m() const { return rs_.num_positive(); }
  std::string name() const { return rs_.name(); }

  /// Basis index of x_r for the root with index i in rs.roots().
  std::size_t root_vector(std::size_t root_index) const;
  std::size_t root_vector(const Root& r) const { return root_vector(rs_.index_of(r)); }
  /// Basis index of h_i, i 0-based.
  std::size_t coroot(int i) const { return m() + static_cast<std::size_t>(i); }
  bool is_root_vector(std::size_t b) const { return b < m() || b >= m() + static_cast<std::size_t>(rank()); }
  bool is_cartan(std::size_t b) const { return !is_root_vector(b); }
  bool is_negative(std::size_t b) const { return b < m(); }
  bool is_positive(std::size_t b) const { return b >= m() + static_cast<std::size_t>(rank()); }
  /// Root of a root-vector basis element.
  const Root& root_of(std::size_t b) const;
  std::size_t root_index_of(std::size_t b) const;

  /// N_{a,b}; zero when a + b is not a root.
  std::int64_t N(const Root& a, const Root& b) const;
  /// h_r in terms of h_1..h_l.
  std::vector<std::int64_t> coroot_coefficients(const Root& r) const;

  const std::vector<std::string>& labels() const { return table_.labels; }
  std::string label(std::size_t b) const { return table_.labels[b]; }
  std::optional<std::size_t> find_label(const std::string& label) const;

  const StructureTable& table() const { return table_; }

 private:
  std::int64_t positive_N(std::size_t i, std::size_t j) const;
  void compute_constants();
  void fill_table();

  RootSystem rs_;
  // keyed by (root index, root index) of positive roots
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> npos_;
  StructureTable table_;
};

/// Restricted Lie algebra over GF(p): the Chevalley basis reduced mod p, with x^[p] = 0 on root vectors
/// and h^[p] = h on coroots.
class ModularLieAlgebra {
 public:
  ModularLieAlgebra(std::shared_ptr<const ChevalleyBasis> basis, std::uint32_t p);

  const ChevalleyBasis& basis() const { return *basis_; }
  std::shared_ptr<const ChevalleyBasis> basis_ptr() const { return basis_; }
  const RootSystem& roots() const { return basis_->roots(); }
  std::uint32_t p() const { return p_; }
  std::size_t n() const { return basis_->dim(); }
  int l() const { return basis_->rank(); }
  std::size_t m() const { return basis_->m(); }
  const StructureTable& table() const { return table_; }
  std::string name() const { return basis_->name(); }
  /// Non-empty when p divides l+1 for type A (the algebra then has a centre).
  const std::string& warning() const { return warning_; }

  /// b^[p] for a basis element, as a sparse combination (empty for root vectors).
  std::vector<LieTerm> p_map(std::size_t b) const;

 private:
  std::shared_ptr<const ChevalleyBasis> basis_;
  std::uint32_t p_;
  StructureTable table_;
  std::string warning_;
};

std::shared_ptr<const ChevalleyBasis> structure_constants(const RootSystem& rs);
/// Throws DomainError for p < 7 or composite p.
ModularLieAlgebra reduce_mod_p(std::shared_ptr<const ChevalleyBasis> basis, std::uint32_t p);
ModularLieAlgebra make_algebra(Family family, int rank, std::uint32_t p);

struct JacobiViolation {
  std::size_t a, b, c;
};

/// All basis triples a < b < c where [a,[b,c]] + [b,[c,a]] + [c,[a,b]] != 0. Also checks antisymmetry
/// (reported with c == a).
std::vector<JacobiViolation> verify_jacobi(const StructureTable& t);

/// ad(b)^[p] == ad(b)^p for every basis element (mod p). Returns failing basis indices.
std::vector<std::size_t> verify_restricted(const ModularLieAlgebra& alg);

std::string export_text(const StructureTable& t);
StructureTable import_text(const std::string& text);
std::string export_json(const StructureTable& t);
StructureTable import_json(const std::string& text);

}  // namespace lielab
