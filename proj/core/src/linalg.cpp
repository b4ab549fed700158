#include "unisub/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>

namespace unisub {

namespace {

template <typename Mat>
Mat svd_nullspace(const Mat& m, double tol) {
  const Eigen::Index n = m.cols();
  if (n == 0) return Mat(0, 0);
  if (m.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++r;
  return svd.matrixV().rightCols(n - r);
}

template <typename Mat>
Eigen::Index svd_rank(const Mat& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  const double thresh = tol * std::max(1.0, sv(0));
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++r;
  return r;
}

}  // namespace

Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& m, double tol) { return svd_nullspace(m, tol); }
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double tol) { return svd_nullspace(m, tol); }

Eigen::Index numerical_rank(const Eigen::MatrixXcd& m, double tol) { return svd_rank(m, tol); }
Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double tol) { return svd_rank(m, tol); }

Eigen::MatrixXcd orthonormal_basis(const Eigen::MatrixXcd& m, double tol) {
  if (m.cols() == 0 || m.rows() == 0) return Eigen::MatrixXcd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double thresh = tol * std::max(1.0, sv(0));
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++r;
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXcd orthonormal_complement(const Eigen::MatrixXcd& m, double tol) {
  const Eigen::Index n = m.rows();
  if (m.cols() == 0) return Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd adj = m.adjoint();
  return svd_nullspace(adj, tol);
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd out = m.exp();
  return out;
}

Eigen::VectorXd realify(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.size();
  Eigen::VectorXd v(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    v(k) = m(k).real();
    v(n + k) = m(k).imag();
  }
  return v;
}

VectorXq realify(const MatrixXg& m) {
  const Eigen::Index n = m.size();
  VectorXq v(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    v(k) = m(k).re;
    v(n + k) = m(k).im;
  }
  return v;
}

}  // namespace unisub
