#pragma once

// Matrix representations of catalog groups and subspaces of their model spaces.

#include "unisub/exact.hpp"
#include "unisub/lie_group.hpp"
#include "unisub/root_system.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace unisub {

class Representation {
 public:
  /// Group matrix (defining model) to representation matrix.
  using Realizer = std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>;
  using ExactRealizer = std::function<MatrixXg(const MatrixXg&)>;
  /// Lie algebra matrix (defining model) to the derived action.
  using Differential = std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>;

  Representation(GroupSpec group, std::vector<std::string> basis_labels, Realizer realize,
                 Eigen::MatrixXcd inner_product);

  [[nodiscard]] Representation with_weights(std::vector<Weight> weights) const;
  [[nodiscard]] Representation with_exact(ExactRealizer exact) const;
  [[nodiscard]] Representation with_differential(Differential differential) const;
  /// Marks the model as real: every realize(g) has real entries.
  [[nodiscard]] Representation with_real_structure(bool real) const;
  [[nodiscard]] Representation with_name(std::string name) const;

  [[nodiscard]] const GroupSpec& group() const { return group_; }
  [[nodiscard]] int dimension() const { return static_cast<int>(labels_.size()); }
  [[nodiscard]] const std::vector<std::string>& basis_labels() const { return labels_; }
  [[nodiscard]] const std::string& name() const { return name_; }

  /// Throws ParentMismatch unless g belongs to group().
  [[nodiscard]] Eigen::MatrixXcd realize(const GroupElement& g) const;
  /// Unchecked variant on a raw group matrix.
  [[nodiscard]] Eigen::MatrixXcd realize_matrix(const Eigen::MatrixXcd& g) const { return realize_(g); }

  [[nodiscard]] bool has_exact() const { return static_cast<bool>(exact_); }
  [[nodiscard]] MatrixXg realize_exact(const MatrixXg& g) const;
  [[nodiscard]] bool has_differential() const { return static_cast<bool>(differential_); }
  [[nodiscard]] Eigen::MatrixXcd differential(const Eigen::MatrixXcd& x) const;

  [[nodiscard]] const std::optional<std::vector<Weight>>& weights() const { return weights_; }
  [[nodiscard]] const Eigen::MatrixXcd& inner_product() const { return inner_; }
  [[nodiscard]] bool is_real() const { return real_; }

 private:
  GroupSpec group_;
  std::vector<std::string> labels_;
  std::string name_;
  Realizer realize_;
  ExactRealizer exact_;
  Differential differential_;
  std::optional<std::vector<Weight>> weights_;
  Eigen::MatrixXcd inner_;
  bool real_ = false;
};

/// Matrix of g = [[a,b],[c,d]] on degree-n polynomials in the monomial basis
/// x^i y^(n-i), i = 0..n, under (g.f)(v) = f(g^T v): column i holds the
/// coefficients of (a x + c y)^i (b x + d y)^(n-i).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> su2_polynomial_matrix(int n, const Scalar& a, const Scalar& b,
                                                                           const Scalar& c, const Scalar& d) {
  using Poly = std::vector<Scalar>;  // coefficient of x^k
  auto mul = [](const Poly& p, const Poly& q) {
    Poly out(p.size() + q.size() - 1, Scalar(0));
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = 0; j < q.size(); ++j) out[i + j] = out[i + j] + p[i] * q[j];
    return out;
  };
  // Powers of (a x + c y) and (b x + d y) as polynomials in x (y implicit).
  std::vector<Poly> pa{Poly{Scalar(1)}}, pb{Poly{Scalar(1)}};
  for (int k = 1; k <= n; ++k) {
    pa.push_back(mul(pa.back(), Poly{c, a}));
    pb.push_back(mul(pb.back(), Poly{d, b}));
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Constant(n + 1, n + 1, Scalar(0));
  for (int i = 0; i <= n; ++i) {
    Poly col = mul(pa[static_cast<size_t>(i)], pb[static_cast<size_t>(n - i)]);
    for (int k = 0; k <= n; ++k) m(k, i) = col[static_cast<size_t>(k)];
  }
  return m;
}

Representation su2_irrep(int n);
/// Identity realization on C^n, with weights where the group has a standard torus.
Representation defining_representation(const GroupSpec& spec);
/// Adjoint action on the real Lie algebra of a compact group, in the real
/// basis of `real_algebra_basis`; a real model with the trace-form Gram matrix.
Representation adjoint_representation(const GroupSpec& spec);
/// Conjugation on g_C in the weight basis: root vectors E_jk and Cartan elements.
Representation complexified_adjoint(const GroupSpec& spec);
Representation trivial_representation(const GroupSpec& spec, int dimension = 1);
Representation zero_representation(const GroupSpec& spec);

/// Block-diagonal sum of representations of one group.
Representation direct_sum(const std::vector<Representation>& reps);
/// Pullback of a representation of factor `k` along the projection of `product`.
Representation lift_to_product(const Representation& rep, const GroupSpec& product, std::size_t k);
/// Sum of representations of distinct factors, acting on the product group.
Representation external_direct_sum(const std::vector<Representation>& reps);
/// Restriction along a group homomorphism given on matrices.
Representation restrict_representation(const Representation& rep, const GroupSpec& subgroup,
                                       std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)> embed,
                                       std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)> embed_algebra = {});
/// Representation of U(1) x S: sum over blocks of t^q (x) rep.
Representation torus_twisted_sum(const std::vector<std::pair<int, Representation>>& blocks);

/// Induced action on U / span(invariant) modelled on the orthogonal complement
/// of the invariant subspace; columns of `complement` (returned) are its basis.
struct QuotientModel {
  Eigen::MatrixXcd complement;  // d x (d - k), orthonormal for the inner product
  Eigen::MatrixXcd coordinates;  // (d - k) x d, quotient coordinates; kills the invariant subspace
  std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)> project;  // rep matrix -> induced matrix
};
QuotientModel quotient_model(const Representation& rep, const Eigen::MatrixXcd& invariant_basis);
Representation quotient_representation(const Representation& rep, const Eigen::MatrixXcd& invariant_basis);

/// Number of weight coordinates carried by the standard torus of `spec`.
int weight_rank(const GroupSpec& spec);

class Subspace {
 public:
  enum class Kind { BasisSpan, WeightComplement };

  /// Span of the columns of `basis`; real span when `complex_span` is false.
  static Subspace span(std::shared_ptr<const Representation> ambient, Eigen::MatrixXcd basis,
                       bool complex_span = true);
  static Subspace span_exact(std::shared_ptr<const Representation> ambient, MatrixXg basis, bool complex_span = true);
  /// Vectors whose coefficients at `indices` vanish.
  static Subspace weight_complement(std::shared_ptr<const Representation> ambient, std::vector<int> indices,
                                    bool complex_span = true);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const Representation& ambient() const { return *ambient_; }
  [[nodiscard]] const std::shared_ptr<const Representation>& ambient_ptr() const { return ambient_; }
  [[nodiscard]] bool complex_span() const { return complex_; }
  /// Dimension over C for complex spans, over R otherwise.
  [[nodiscard]] int dimension() const { return static_cast<int>(basis_.cols()); }
  [[nodiscard]] const Eigen::MatrixXcd& basis() const { return basis_; }
  [[nodiscard]] const std::optional<MatrixXg>& exact_basis() const { return exact_; }
  [[nodiscard]] const std::vector<int>& removed_indices() const { return removed_; }
  [[nodiscard]] bool is_proper() const;
  [[nodiscard]] bool contains(const Eigen::VectorXcd& u, double tol = 1e-10) const;
  /// Exact membership; requires an exact basis or a weight complement.
  [[nodiscard]] bool contains_exact(const VectorXg& u) const;

 private:
  Subspace() = default;
  Kind kind_ = Kind::BasisSpan;
  std::shared_ptr<const Representation> ambient_;
  Eigen::MatrixXcd basis_;
  std::optional<MatrixXg> exact_;
  std::vector<int> removed_;
  bool complex_ = true;
};

struct WeightBlock {
  Weight weight;
  std::vector<int> indices;
};

struct WeightDecomposition {
  std::vector<WeightBlock> blocks;  // sorted by weight
};

/// Groups basis indices by torus weight. `torus` is either the maximal torus
/// (Torus(weight_rank)) or, for a product whose first factor is a torus, that
/// central factor.
WeightDecomposition weight_decomposition(const Representation& rep, const GroupSpec& torus);

struct Hyperplane {
  Subspace subspace;
  int index = 0;            // removed monomial x^i y^(n-i)
  int quotient_weight = 0;  // 2i - n
};

/// The n+1 torus-invariant hyperplanes of su2_irrep(n).
std::vector<Hyperplane> t_invariant_hyperplanes(int n);

/// Weights of the removed basis vectors of a weight complement (the weights of U/V).
std::vector<Weight> quotient_weights(const Subspace& v);

}  // namespace unisub
