#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lielab/chevalley.hpp"
#include "lielab/extension_field.hpp"
#include "lielab/module.hpp"
#include "lielab/pbw.hpp"
#include "lielab/roots.hpp"

namespace lielab {

using UElem = UEAElement<ExtensionField>;
using Scalar = ExtensionField::Elem;

/// U(L) over a scalar field with helpers for root vectors and coroots. Owns its enveloping algebra.
class Workspace {
 public:
  Workspace(std::shared_ptr<const ChevalleyBasis> basis, ExtensionField field);
  Workspace(Family family, int rank, ExtensionField field);

  const ChevalleyBasis& basis() const { return *basis_; }
  std::shared_ptr<const ChevalleyBasis> basis_ptr() const { return basis_; }
  const RootSystem& roots() const { return basis_->roots(); }
  const ExtensionField& field() const { return field_; }
  const Enveloping<ExtensionField>& U() const { return *U_; }
  std::uint32_t p() const { return field_.characteristic(); }

  bool is_root(const Root& r) const { return roots().contains(r); }
  UElem x(const Root& r) const;
  /// h_r = [x_r, x_{-r}] written in h_1..h_l.
  UElem h(const Root& r) const;
  UElem scalar(Scalar c) const { return U_->scalar(c); }
  Scalar frac(std::int64_t num, std::int64_t den = 1) const;
  std::string x_label(const Root& r) const;
  std::string h_label(const Root& r) const;

 private:
  std::shared_ptr<const ChevalleyBasis> basis_;
  ExtensionField field_;
  std::unique_ptr<Enveloping<ExtensionField>> U_;
};

struct GW {
  Root alpha;
  UElem g;  // x_alpha^{p-1} - x_{-alpha}
  UElem w;  // (h_alpha + 1)^2 + k x_{-alpha} x_alpha, k = 4 unless mutated
};

GW make_g_w(const Workspace& ws, const Root& alpha, std::int64_t w_coefficient = 4);

struct CommutatorCheck {
  std::string with;
  bool zero = false;
  std::size_t terms = 0;
};

struct WCentrality {
  bool pass = false;                     // all commutators with the sl_2-triple vanish
  std::vector<CommutatorCheck> triple;   // x_alpha, x_{-alpha}, h_alpha
  std::vector<CommutatorCheck> outside;  // every other root vector
};

WCentrality check_w_central(const Workspace& ws, const Root& alpha, std::int64_t w_coefficient = 4);

struct GIdentities {
  bool bracket = false;      // [h_alpha, g_alpha] = -2 g_alpha in U(L)
  bool invertible = false;   // det image(g) != 0
  bool pth_scalar = false;   // image(g)^p = c I
  bool conjugation = false;  // image(g) image(h) image(g)^{-1} = image(h) + 2 I
  std::string c;             // the scalar of image(g)^p when it is one
  bool pass() const { return bracket && invertible && pth_scalar && conjugation; }
};

/// Requires chi(x_alpha) = chi(x_{-alpha}) = 0 on the module (DomainError otherwise).
GIdentities check_g_identities(const Workspace& ws, const Root& alpha, const RepModule<ExtensionField>& M);

struct BForms {
  std::vector<Scalar> params;             // t_i
  std::vector<std::vector<Scalar>> rows;  // b_i = (t_i, t_i^2, ..., t_i^l) + shift
  std::vector<Scalar> shift;              // constant offset moving alpha's zeros off the parameters
  std::vector<UElem> elements;            // B_i = sum_k b_ik h_k
  bool general_position = false;          // every (l+1)-subset of the lifts (1, b_i) is independent
  bool general_position_checked = false;  // exhaustive check done (l <= 4)
  bool alpha_nonzero = false;             // alpha(B_i) != 0 for all i
};

/// Rows on a shifted moment curve at distinct parameters, shuffled by the seed, skipping alpha(B) = 0.
/// The shift keeps every lift (1, b_i) Vandermonde-equivalent and is chosen to admit the most parameters.
BForms build_B_forms(const Workspace& ws, const Root& alpha, std::size_t count, std::uint64_t seed);

enum class FamilyCase { ASemisimple, CShort, CLong, CSemisimple };

std::string case_name(FamilyCase c);
FamilyCase parse_case(const std::string& s);
/// Distinguished root of a case: e1-e2, or 2e1 for the long-root case.
Root distinguished_root(const RootSystem& rs, FamilyCase c);

struct PrefixCandidate {
  std::string text;
  std::vector<UElem> factors;
  std::optional<Root> times_entry;  // right-multiply by that entry's element
  std::optional<Root> times_paren;  // right-multiply by that entry's resolved parenthesis
};

struct ParenTerm {
  Scalar coeff = 0;
  UElem product;
  std::string text;
  bool signed_term = false;  // sign to be chosen
};

enum class EntryStatus { Pending, Resolved, Finding };

std::string to_string(EntryStatus s);

struct AEntry {
  Root beta;
  std::string name;     // "A(e2-e1)"
  std::string formula;  // transcription; c and +- mark the open choices
  std::string repair;   // transcription repair applied, empty if none
  std::vector<PrefixCandidate> candidates;
  bool has_paren = false;
  bool has_constant = false;
  std::vector<ParenTerm> terms;  // parenthesis without the constant
  bool interpolated = false;     // filled in by the catch-all rule for remaining roots

  EntryStatus status = EntryStatus::Pending;
  std::size_t candidate = 0;
  std::vector<int> signs;  // +1 / -1 per signed term, in order
  std::optional<Scalar> c;
  std::string level;  // "formal", "image" or "none"
  std::string note;
  std::string finding;
  UElem paren;    // resolved parenthesis (c + terms), or 1
  UElem element;  // resolved element

  std::size_t signed_count() const;
  bool has_choices() const { return candidates.size() > 1 || signed_count() > 0; }
  /// Element fixed by the formula alone or by a successful resolution.
  bool defined() const { return status == EntryStatus::Resolved || (status == EntryStatus::Finding && !has_choices()); }
};

struct AFamily {
  FamilyCase kind;
  Root alpha;
  std::vector<AEntry> entries;  // in product order
  std::vector<std::string> notes;

  const AEntry* find(const Root& r) const;
  AEntry* find(const Root& r);
  bool fully_resolved() const;
  std::size_t findings() const;
};

struct TranscriptionRepair {
  std::string where;
  std::string as_printed;
  std::string repaired;
};

/// Every repair made while transcribing the formula tables, in one place.
const std::vector<TranscriptionRepair>& transcription_repairs();

/// Builds the table of the given case. DomainError if the case does not fit the root system type.
AFamily build_A_family(const Workspace& ws, FamilyCase kind);

/// Chooses candidates, signs and constants: commutation with x_alpha formally in U(L) first, then on the
/// images in M; constants so that the parenthesis image is invertible and A_beta acts nonzero.
/// Entries with no valid assignment become findings with the reason recorded.
AFamily resolve_signs_constants(AFamily fam, const Workspace& ws, const RepModule<ExtensionField>* M);

struct BasisFamily {
  std::vector<UElem> factors;  // B_j + A_{beta_j}
  std::vector<std::string> names;
  std::size_t cap = 0;
  bool provisional = false;  // some factor uses an unresolved choice
  std::uint64_t size() const;
};

struct BasisOptions {
  std::size_t cap = 0;
  std::size_t max_factors = 0;  // 0: all 2m factors
  bool allow_provisional = false;
};

BasisFamily build_basis_family(const AFamily& fam, const BForms& forms, const BasisOptions& opt);

struct RankReport {
  std::string mode;
  std::uint64_t size = 0;
  std::size_t rank = 0;
  std::size_t target = 0;  // family size (formal) or d^2 (image)
  bool exact = true;       // formal: no product was truncated
};

/// Exponent tuples in lexicographic order, first factor slowest.
std::vector<std::vector<std::size_t>> exponent_tuples(std::size_t factors, std::size_t cap);

/// Expansion work (terms of factor times terms of partial product, summed over every multiplication of
/// the family) is capped by max_work; an over-budget family or expansion throws InfeasibleError.
inline constexpr std::uint64_t kFormalWorkLimit = 300'000;
RankReport check_independence_formal(const Workspace& ws, const BasisFamily& bf, std::size_t degree_cap,
                                     std::uint64_t budget, std::uint64_t max_work = kFormalWorkLimit);
RankReport check_independence_image(const BasisFamily& bf, const RepModule<ExtensionField>& M, std::uint64_t budget);

}  // namespace lielab
