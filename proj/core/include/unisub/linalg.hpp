#pragma once

// Small dense linear-algebra toolkit shared by every module. Floating-point
// routines are SVD based; exact routines use row reduction over Q or Q(i).

#include "unisub/exact.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace unisub {

using Complex = std::complex<double>;

inline bool is_zero_entry(double x, double tol) { return std::abs(x) <= tol; }
inline bool is_zero_entry(const Complex& x, double tol) { return std::abs(x) <= tol; }
inline bool is_zero_entry(const Rational& x, double /*tol*/) { return x.is_zero(); }
inline bool is_zero_entry(const GaussRational& x, double /*tol*/) { return x.is_zero(); }

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Complex& x) { return std::abs(x); }
inline double magnitude(const Rational& x) { return x.is_zero() ? 0.0 : 1.0; }
inline double magnitude(const GaussRational& x) { return x.is_zero() ? 0.0 : 1.0; }

template <typename Scalar>
struct RowEchelon {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> reduced;
  std::vector<Eigen::Index> pivots;
};

/// Reduced row echelon form. Floating scalars use partial pivoting with an
/// absolute threshold `tol`; exact scalars ignore `tol`.
template <typename Scalar>
RowEchelon<Scalar> rref(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m, double tol = 1e-10) {
  RowEchelon<Scalar> out;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index best = -1;
    double best_mag = 0.0;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (is_zero_entry(m(i, c), tol)) continue;
      double mag = magnitude(m(i, c));
      if (best < 0 || mag > best_mag) {
        best = i;
        best_mag = mag;
        if constexpr (!std::is_floating_point_v<Scalar> && !std::is_same_v<Scalar, Complex>) break;
      }
    }
    if (best < 0) {
      for (Eigen::Index i = r; i < rows; ++i) m(i, c) = Scalar(0);
      continue;
    }
    if (best != r) m.row(best).swap(m.row(r));
    Scalar inv = Scalar(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || is_zero_entry(m(i, c), 0.0)) continue;
      Scalar f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

/// Exact nullspace: columns form a basis of {x : m x = 0}.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> exact_nullspace(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
  auto ech = rref<Scalar>(m);
  const Eigen::Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (auto p : ech.pivots) is_pivot[static_cast<size_t>(p)] = true;
  const auto nfree = cols - static_cast<Eigen::Index>(ech.pivots.size());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> basis =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Constant(cols, nfree, Scalar(0));
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    basis(f, k) = Scalar(1);
    for (size_t r = 0; r < ech.pivots.size(); ++r)
      basis(ech.pivots[r], k) = -ech.reduced(static_cast<Eigen::Index>(r), f);
    ++k;
  }
  return basis;
}

template <typename Scalar>
Eigen::Index exact_rank(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
  return static_cast<Eigen::Index>(rref<Scalar>(m).pivots.size());
}

/// Inverse of a square matrix over an exact field; nullopt when singular.
template <typename Scalar>
std::optional<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> exact_inverse(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
  const Eigen::Index n = m.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> aug =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, 2 * n, Scalar(0));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar(1);
  }
  auto ech = rref<Scalar>(aug);
  if (static_cast<Eigen::Index>(ech.pivots.size()) < n || ech.pivots[static_cast<size_t>(n - 1)] != n - 1)
    return std::nullopt;
  return Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(ech.reduced.rightCols(n));
}

/// Orthonormal basis of {x : m x = 0}; singular values at or below
/// `tol * max(1, sigma_max)` count as zero.
Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& m, double tol = 1e-10);
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double tol = 1e-10);
inline MatrixXq nullspace(const MatrixXq& m) { return exact_nullspace<Rational>(m); }
inline MatrixXg nullspace(const MatrixXg& m) { return exact_nullspace<GaussRational>(m); }

Eigen::Index numerical_rank(const Eigen::MatrixXcd& m, double tol = 1e-10);
Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double tol = 1e-10);

/// Orthonormal basis of the column space.
Eigen::MatrixXcd orthonormal_basis(const Eigen::MatrixXcd& m, double tol = 1e-10);
/// Orthonormal basis of the orthogonal complement of the column space in C^rows.
Eigen::MatrixXcd orthonormal_complement(const Eigen::MatrixXcd& m, double tol = 1e-10);

/// Matrix exponential (Pade approximant with scaling and squaring).
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m);

/// Column-stacked real coordinates (real parts then imaginary parts) of a complex matrix.
Eigen::VectorXd realify(const Eigen::MatrixXcd& m);
VectorXq realify(const MatrixXg& m);

inline Eigen::MatrixXcd bracket(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return a * b - b * a; }
inline MatrixXg bracket(const MatrixXg& a, const MatrixXg& b) {
  MatrixXg ab = a * b;
  MatrixXg ba = b * a;
  return ab - ba;
}

/// Largest entry magnitude.
inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace unisub
