#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "lielab/chevalley.hpp"
#include "lielab/errors.hpp"

namespace lielab {

/// Linear form chi on L, one value per Chevalley basis element, with values in the scalar field F.
template <class F>
class Character {
 public:
  using Elem = typename F::Elem;

  Character(std::shared_ptr<const ChevalleyBasis> basis, F field)
      : basis_(std::move(basis)), field_(std::move(field)), values_(basis_->dim(), field_.zero()) {}

  const ChevalleyBasis& basis() const { return *basis_; }
  std::shared_ptr<const ChevalleyBasis> basis_ptr() const { return basis_; }
  const F& field() const { return field_; }
  std::uint32_t p() const { return field_.characteristic(); }
  std::size_t size() const { return values_.size(); }

  Elem value(std::size_t b) const { return values_.at(b); }
  void set(std::size_t b, Elem v) { values_.at(b) = v; }
  /// chi(b)^p, the scalar replacing the central element b^p - b^[p].
  Elem pth_power(std::size_t b) const { return field_.pow(values_.at(b), p()); }

  bool is_zero() const {
    for (auto v : values_)
      if (!field_.is_zero(v)) return false;
    return true;
  }
  /// Supported on root vectors.
  bool is_nilpotent_type() const {
    for (std::size_t b = 0; b < values_.size(); ++b)
      if (basis_->is_cartan(b) && !field_.is_zero(values_[b])) return false;
    return true;
  }
  /// Supported on coroots.
  bool is_semisimple_type() const {
    for (std::size_t b = 0; b < values_.size(); ++b)
      if (basis_->is_root_vector(b) && !field_.is_zero(values_[b])) return false;
    return true;
  }
  /// Vanishes on all positive root vectors.
  bool in_standard_position() const {
    for (std::size_t b = 0; b < values_.size(); ++b)
      if (basis_->is_positive(b) && !field_.is_zero(values_[b])) return false;
    return true;
  }

  /// "label=value,label=value" over nonzero entries in basis order; "0" for the zero form.
  std::string to_string() const {
    std::string out;
    for (std::size_t b = 0; b < values_.size(); ++b) {
      if (field_.is_zero(values_[b])) continue;
      if (!out.empty()) out += ',';
      out += basis_->label(b) + "=" + field_.to_string(values_[b]);
    }
    return out.empty() ? "0" : out;
  }

  bool operator==(const Character& o) const {
    return basis_->table() == o.basis_->table() && field_ == o.field_ && values_ == o.values_;
  }

  /// Parses "h1=1,x(e2-e1)=1". For rank-one type A the aliases e, f, h are accepted.
  static Character parse(std::shared_ptr<const ChevalleyBasis> basis, F field, const std::string& text) {
    Character chi(basis, field);
    if (text.empty() || text == "0") return chi;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("character entry without '=': '" + item + "'");
      std::string lab = item.substr(0, eq);
      const std::string val = item.substr(eq + 1);
      if (basis->roots().family() == Family::A && basis->rank() == 1) {
        if (lab == "e") lab = basis->label(basis->root_vector(basis->roots().simple(0)));
        if (lab == "f") lab = basis->label(basis->root_vector(-basis->roots().simple(0)));
        if (lab == "h") lab = "h1";
      }
      const auto idx = basis->find_label(lab);
      if (!idx) throw ParseError("unknown basis label in character: '" + lab + "'");
      chi.set(*idx, field.parse(val));
    }
    return chi;
  }

 private:
  std::shared_ptr<const ChevalleyBasis> basis_;
  F field_;
  std::vector<Elem> values_;
};

}  // namespace lielab
