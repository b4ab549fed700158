#pragma once

// Lie's theorem made constructive: invariant flags for solvable matrix
// algebras, and non-universality witnesses for connected solvable groups.

#include "unisub/exact.hpp"
#include "unisub/lie_group.hpp"
#include "unisub/representation.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <vector>

namespace unisub {

struct SolvableFlag {
  /// Columns f_1..f_n with U_j = span(f_1..f_j); orthonormal in floating mode.
  Eigen::MatrixXcd basis;
  std::optional<MatrixXg> exact_basis;
  /// characters[j][k]: eigenvalue of generator k on U_{j+1}/U_j.
  std::vector<std::vector<Complex>> characters;

  [[nodiscard]] int size() const { return static_cast<int>(basis.cols()); }
  /// Basis of U_j.
  [[nodiscard]] Eigen::MatrixXcd subspace(int j) const { return basis.leftCols(j); }
};

/// Floating mode. At each quotient level a common eigenvector is taken inside
/// the common kernel of the derived algebra, by successive eigenspace
/// restriction; ties go to the eigenspace with the smallest leading
/// coordinate, and the vector is the first row of its reduced echelon form.
SolvableFlag solvable_flag(const std::vector<Eigen::MatrixXcd>& generators, double tol = 1e-10);
SolvableFlag solvable_flag(const std::vector<AlgebraElement>& generators, double tol = 1e-10);
/// Exact mode over Q(i); eigenvalues are located numerically, rationalized
/// and then verified exactly.
SolvableFlag solvable_flag_exact(const std::vector<MatrixXg>& generators);

/// Largest |A f_j - (U_j component)| over generators and steps; zero for an invariant flag.
double flag_invariance_residual(const SolvableFlag& flag, const std::vector<Eigen::MatrixXcd>& generators);

struct SolvableWitness {
  Eigen::VectorXcd u;  // f_{depth+1}
  int depth = 0;       // U_depth is contained in V, U_{depth+1} is not
  /// Normalized distance from the line of u to V, measured in U / U_depth;
  /// constant along the orbit.
  double certificate = 0.0;
  std::shared_ptr<const Representation> quotient;  // U / U_depth
  std::optional<Subspace> quotient_subspace;       // V / U_depth
  Eigen::VectorXcd quotient_u;
  SolvableFlag flag;
};

/// Requires a proper complex subspace; throws NotProper otherwise. The flag is
/// built from the differential of `rep` on the real Lie algebra basis.
SolvableWitness solvable_witness(const Representation& rep, const Subspace& v, double tol = 1e-10);

}  // namespace unisub
