#pragma once

// Library structure constants against the matrix realization, with the sign of each root vector solved
// along positive pairs by height.

#include <cstdlib>
#include <string>
#include <vector>

#include "lielab/chevalley.hpp"
#include "matrix_oracle.hpp"

namespace oracle {

struct SignMatch {
  std::vector<int> sign;              // per basis element
  std::vector<std::string> problems;  // magnitude disagreements met while solving
};

// x_r = s_r * X_r (matrix), s_{-r} = s_r.
inline SignMatch solve_signs(const lielab::ChevalleyBasis& cb, char fam) {
  const auto& rs = cb.roots();
  const auto plain = build_table(fam, cb.rank(), cb.labels(), std::vector<int>(cb.dim(), 1));
  SignMatch out;
  std::vector<int> root_sign(rs.size(), 0);
  for (const auto& s : rs.simple()) {
    root_sign[rs.index_of(s)] = 1;
    root_sign[rs.index_of(-s)] = 1;
  }
  for (std::size_t k = 0; k < rs.num_positive(); ++k) {
    if (root_sign[k] != 0) continue;
    for (std::size_t i = 0; i < k && root_sign[k] == 0; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (rs.root(i) + rs.root(j) != rs.root(k) || root_sign[i] == 0 || root_sign[j] == 0) continue;
        const auto a = cb.root_vector(i), b = cb.root_vector(j), c = cb.root_vector(k);
        const long long lib = cb.table().bracket(a, b).at(0).coeff;
        const long long mat = plain.at(a, b).at(static_cast<int>(c));
        if (std::llabs(lib) != std::llabs(mat)) out.problems.push_back(cb.label(a) + ", " + cb.label(b));
        // lib = s_i s_j s_k * mat
        root_sign[k] = root_sign[i] * root_sign[j] * static_cast<int>(lib / mat);
        break;
      }
    }
    root_sign[rs.negative_index(k)] = root_sign[k];
  }
  out.sign.assign(cb.dim(), 1);
  for (std::size_t b = 0; b < cb.dim(); ++b)
    if (cb.is_root_vector(b)) out.sign[b] = root_sign[cb.root_index_of(b)];
  return out;
}

// Labels of every bracket where library and signed matrix realization disagree.
inline std::vector<std::string> chevalley_mismatches(const lielab::ChevalleyBasis& cb) {
  const char fam = cb.roots().family() == lielab::Family::A ? 'A' : 'C';
  auto match = solve_signs(cb, fam);
  const auto mat = build_table(fam, cb.rank(), cb.labels(), match.sign);
  auto out = std::move(match.problems);
  for (std::size_t a = 0; a < cb.dim(); ++a)
    for (std::size_t b = 0; b < cb.dim(); ++b) {
      std::map<int, long long> lib;
      for (const auto& t : cb.table().bracket(a, b)) lib[static_cast<int>(t.index)] = t.coeff;
      if (lib != mat.at(a, b)) out.push_back("[" + cb.label(a) + ", " + cb.label(b) + "]");
    }
  return out;
}

}  // namespace oracle
