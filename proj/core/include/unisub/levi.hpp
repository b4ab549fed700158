#pragma once

// Levi reduction for compact groups G = R * S with R a central torus, and the
// noncompact block group {[[A, B], [0, A]]} where the reduction breaks down.

#include "unisub/lie_group.hpp"
#include "unisub/representation.hpp"
#include "unisub/universality.hpp"

#include <vector>

namespace unisub {

struct LeviBlock {
  Weight central_weight;  // empty when R is trivial
  std::vector<int> indices;
  int v_dimension = 0;  // dim of V meet U_alpha
  Verdict verdict;      // S acting on U_alpha
};

struct LeviReport {
  GroupSpec levi_factor;
  std::vector<LeviBlock> blocks;
  bool blocks_all_universal = false;
  Verdict levi_verdict;   // S on the whole of U
  Verdict group_verdict;  // G on the whole of U
  /// The S verdict on U. Blockwise universality alone is necessary but not
  /// sufficient: one g must move every block into V at once.
  VerdictKind overall = VerdictKind::Inconclusive;
  /// S and G verdicts coincide; meaningful only when both are conclusive.
  bool agrees = false;
};

/// G must be compact with a torus as its (optional) first product factor.
/// Throws NotCentral for noncompact groups or when sampled R-elements fail to
/// commute with G, NotBlockwise when V is not the sum of its intersections
/// with the R-weight spaces.
LeviReport levi_restriction_check(const Representation& rep, const Subspace& v, const SearchConfig& cfg);

/// Semisimple part S of a compact catalog group, and its embedding into G.
GroupSpec levi_factor(const GroupSpec& g);
Eigen::MatrixXcd embed_levi(const GroupSpec& g, const Eigen::MatrixXcd& s);
/// Restriction of `rep` to levi_factor(rep.group()).
Representation restrict_to_levi(const Representation& rep);

/// G = {[[A, B], [0, A]] : A in SU(2), B in gl(2, C)} acting on C^4 = C^2 + C^2.
GroupSpec block_extension_group();
Representation block_extension_representation();
/// Its Levi factor SU(2), embedded as A -> diag(A, A).
Representation block_extension_levi_representation();

}  // namespace unisub
