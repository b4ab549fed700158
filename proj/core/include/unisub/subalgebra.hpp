#pragma once

// Lie subalgebras of catalog algebras: normalizers, rank via generic
// centralizers, Borel containment for T-stable subalgebras, and the
// closedness test dim N_g(h) == dim h.

#include "unisub/exact.hpp"
#include "unisub/lie_group.hpp"
#include "unisub/obstruction.hpp"
#include "unisub/random.hpp"
#include "unisub/root_system.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace unisub {

class SubalgebraSpec {
 public:
  /// Real span of `basis` inside the real Lie algebra of `ambient`; with
  /// `complex_span` the span is over C (a subalgebra of g_C viewed as a real
  /// algebra). Throws InvalidArgument on dependent or non-closed bases.
  static SubalgebraSpec from_basis(GroupSpec ambient, std::vector<Eigen::MatrixXcd> basis, bool complex_span = false,
                                   std::string name = {});
  static SubalgebraSpec from_exact(GroupSpec ambient, std::vector<MatrixXg> basis, bool complex_span = false,
                                   std::string name = {});
  [[nodiscard]] SubalgebraSpec with_root_set(std::vector<Weight> roots) const;

  [[nodiscard]] const GroupSpec& ambient() const { return ambient_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<Eigen::MatrixXcd>& basis() const { return basis_; }
  [[nodiscard]] const std::optional<std::vector<MatrixXg>>& exact_basis() const { return exact_; }
  [[nodiscard]] bool complex_span() const { return complex_; }
  [[nodiscard]] const std::optional<std::vector<Weight>>& t_stable_root_set() const { return roots_; }
  /// Basis over R: the given basis, followed by i times it for complex spans.
  [[nodiscard]] std::vector<Eigen::MatrixXcd> real_basis() const;
  [[nodiscard]] std::optional<std::vector<MatrixXg>> exact_real_basis() const;
  [[nodiscard]] int real_dimension() const { return static_cast<int>(real_basis().size()); }
  /// Largest distance of a bracket of basis elements from the span (0 in exact mode when closed).
  [[nodiscard]] double bracket_residual() const;

 private:
  SubalgebraSpec() = default;
  GroupSpec ambient_;
  std::string name_;
  std::vector<Eigen::MatrixXcd> basis_;
  std::optional<std::vector<MatrixXg>> exact_;
  std::optional<std::vector<Weight>> roots_;
  bool complex_ = false;
};

/// {X in g : [X, h] in h} for g spanned over R by `g_basis`; exact when both
/// bases are exact.
SubalgebraSpec normalizer_subalgebra(const std::vector<Eigen::MatrixXcd>& g_basis, const SubalgebraSpec& h);
SubalgebraSpec normalizer_subalgebra(const std::vector<MatrixXg>& g_basis, const SubalgebraSpec& h);
/// Normalizer inside the real Lie algebra of h.ambient().
SubalgebraSpec normalizer_subalgebra(const SubalgebraSpec& h);

/// Dimension of the centralizer in h of a generic rational combination of its
/// basis; three draws must agree, with up to eight rounds.
int rank_of_compact_subalgebra(const SubalgebraSpec& h, std::uint64_t seed = kDefaultSeed);
bool is_maximal_rank(const GroupSpec& g, const SubalgebraSpec& h, std::uint64_t seed = kDefaultSeed);

/// Whether some Weyl image of the standard positive system lies in `root_set`.
bool contains_positive_system(const RootSystem& rs, const std::vector<Weight>& root_set);

bool closedness_criterion(const GroupSpec& g, const SubalgebraSpec& h);

/// Real coordinates of x in the basis of real_algebra_basis(g).
Eigen::VectorXd algebra_coordinates(const GroupSpec& g, const Eigen::MatrixXcd& x);

struct CatalogEntry {
  SubalgebraSpec algebra;
  SubgroupDescriptor subgroup;  // the closed subgroup with Lie algebra `algebra`
};

/// Subalgebras of su(2), su(2)+su(2) and su(3) with their subgroups.
std::vector<CatalogEntry> compact_subalgebra_catalog();
std::vector<CatalogEntry> compact_subalgebra_catalog(const GroupSpec& g);

/// Line through (1, alpha) in the Lie algebra of U(1)^2 with alpha = sqrt 2.
SubalgebraSpec irrational_torus_line();
/// Upper-triangular traceless matrices in sl(2, C), as a real algebra.
SubalgebraSpec borel_sl2();

struct NamedRootSet {
  std::string name;
  std::vector<Weight> roots;
};

/// Root subsets of A2 used for Borel-containment checks on sl(3, C).
std::vector<NamedRootSet> sl3_root_subsets();

}  // namespace unisub
