#pragma once

// Catalog of matrix Lie groups: SU(2), SU(3), tori, finite products, the
// upper-triangular solvable groups, SL(2,C)/SL(3,C), and connected matrix
// groups generated by an explicit Lie algebra basis.

#include "unisub/exact.hpp"
#include "unisub/linalg.hpp"
#include "unisub/random.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace unisub {

enum class GroupKind { SU2, SU3, Torus, Product, UpperTriangular, Complexified, Generated };

/// Bounded parameter box used to sample and search noncompact groups.
struct SearchBox {
  double log_diagonal = 1.0;  // |log |d_jj|| bound for upper-triangular diagonals
  double entry = 2.0;         // bound on |Re| and |Im| of non-diagonal entries
};

class GroupSpec {
 public:
  /// SU(2).
  GroupSpec();
  static GroupSpec su2();
  static GroupSpec su3();
  static GroupSpec torus(int k);
  static GroupSpec product(std::vector<GroupSpec> factors);
  static GroupSpec upper_triangular(int n);
  static GroupSpec complexified(const GroupSpec& compact);
  /// Connected matrix group generated by exp of the real span of `algebra_basis`.
  static GroupSpec generated(std::string label, std::vector<Eigen::MatrixXcd> algebra_basis, bool compact);

  [[nodiscard]] GroupKind kind() const { return kind_; }
  /// k for Torus(k), n for UpperTriangular(n), 0 otherwise.
  [[nodiscard]] int parameter() const { return param_; }
  /// Product factors, or the single compact form for Complexified.
  [[nodiscard]] const std::vector<GroupSpec>& factors() const { return factors_; }
  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] int matrix_size() const;
  [[nodiscard]] bool is_compact() const;
  [[nodiscard]] int real_dimension() const;
  [[nodiscard]] const std::vector<Eigen::MatrixXcd>& generators() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b);
  friend bool operator!=(const GroupSpec& a, const GroupSpec& b) { return !(a == b); }

 private:
  GroupSpec(GroupKind kind, int param, std::vector<GroupSpec> factors, std::string label);

  GroupKind kind_ = GroupKind::SU2;
  int param_ = 0;
  std::vector<GroupSpec> factors_;
  std::string label_ = "SU(2)";
  std::shared_ptr<const std::vector<Eigen::MatrixXcd>> generators_;
  bool generated_compact_ = false;
};

struct GroupElement {
  Eigen::MatrixXcd matrix;
  GroupSpec parent;

  /// Checks the membership invariants of the parent group (unitarity and
  /// determinant for SU(n), diagonal unitary for tori, upper triangular with
  /// nonzero diagonal for the solvable groups).
  [[nodiscard]] bool is_valid(double tol = 1e-12) const;
};

struct AlgebraElement {
  Eigen::MatrixXcd matrix;
  GroupSpec parent;
  bool real_form = true;  // true: element of g, false: element of g_C

  [[nodiscard]] bool is_valid(double tol = 1e-12) const;
};

GroupElement identity_element(const GroupSpec& spec);
GroupElement sample_group_element(const GroupSpec& spec, Rng& rng, const SearchBox& box = {});

/// Real basis of the Lie algebra, as matrices of the defining model.
std::vector<Eigen::MatrixXcd> real_algebra_basis(const GroupSpec& spec);
/// Same basis with exact Gaussian-rational entries; empty for Generated groups.
std::vector<MatrixXg> exact_algebra_basis(const GroupSpec& spec);

AlgebraElement adjoint_action(const GroupElement& g, const AlgebraElement& x);
GroupElement exp_map(const AlgebraElement& x);

/// g * exp(sum_k coords[k] * basis[k]); the local chart used by the orbit search.
GroupElement retract(const GroupElement& g, const std::vector<Eigen::MatrixXcd>& basis, const Eigen::VectorXd& coords);

bool within_box(const GroupElement& g, const SearchBox& box);
/// Amount by which each box coordinate of g exceeds its bound (zero inside);
/// the length depends only on the group.
std::vector<double> box_excess(const GroupElement& g, const SearchBox& box);

/// Block of a product element belonging to factor `k`.
GroupElement factor_component(const GroupElement& g, std::size_t k);
/// Block-diagonal product element from factor elements.
GroupElement product_element(const GroupSpec& product, const std::vector<GroupElement>& parts);

/// diag(t, conj t) in SU(2).
GroupElement su2_torus_element(Complex t);
/// The Weyl representative x -> y -> -x, i.e. [[0,-1],[1,0]].
GroupElement su2_weyl_element();
MatrixXg su2_weyl_element_exact();
/// Rational point ((1-s^2) + 2si)/(1+s^2) of the unit circle, as diag(t, conj t).
MatrixXg su2_torus_element_exact(const Rational& s);

}  // namespace unisub
