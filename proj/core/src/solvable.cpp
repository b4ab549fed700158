#include "unisub/solvable.hpp"

#include "unisub/error.hpp"
#include "unisub/linalg.hpp"
#include "unisub/universality.hpp"

#include <algorithm>

namespace unisub {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

constexpr double kEigenTol = 1e-7;
constexpr double kResidualTol = 1e-8;

struct FloatField {
  using S = Complex;
  double tol;

  [[nodiscard]] Index rank(const MatrixXcd& m) const { return numerical_rank(m, tol); }
  [[nodiscard]] MatrixXcd kernel(const MatrixXcd& m) const { return nullspace(m, tol); }
  [[nodiscard]] MatrixXcd eigenspace(const MatrixXcd& c, Complex lambda) const {
    return nullspace(MatrixXcd(c - lambda * MatrixXcd::Identity(c.rows(), c.cols())), kEigenTol);
  }
  // Columns of `b` are orthonormal.
  [[nodiscard]] MatrixXcd restrict_to(const MatrixXcd& b, const MatrixXcd& a) const { return b.adjoint() * a * b; }
  [[nodiscard]] std::vector<Complex> eigenvalues(const MatrixXcd& c) const {
    Eigen::ComplexEigenSolver<MatrixXcd> es(c, false);
    std::vector<Complex> raw(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(raw.begin(), raw.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    const double scale = std::max(1.0, max_abs(c));
    std::vector<Complex> out;
    for (auto z : raw) {
      bool seen = false;
      for (auto w : out) seen = seen || std::abs(z - w) <= 1e-6 * scale;
      if (!seen) out.push_back(z);
    }
    return out;
  }
  [[nodiscard]] bool is_zero(const MatrixXcd& m) const { return max_abs(m) <= tol; }
};

struct ExactField {
  using S = GaussRational;

  [[nodiscard]] Index rank(const MatrixXg& m) const { return exact_rank<GaussRational>(m); }
  [[nodiscard]] MatrixXg kernel(const MatrixXg& m) const { return exact_nullspace<GaussRational>(m); }
  [[nodiscard]] MatrixXg eigenspace(const MatrixXg& c, const GaussRational& lambda) const {
    MatrixXg shifted = c;
    for (Index i = 0; i < c.rows(); ++i) shifted(i, i) -= lambda;
    return exact_nullspace<GaussRational>(shifted);
  }
  [[nodiscard]] MatrixXg restrict_to(const MatrixXg& b, const MatrixXg& a) const {
    MatrixXg bs = conjugate_transpose(b);
    MatrixXg gram = bs * b;
    auto inv = exact_inverse<GaussRational>(gram);
    require(inv.has_value(), ErrorCode::Internal, "dependent basis in exact restriction");
    MatrixXg ab = a * b;
    MatrixXg rhs = bs * ab;
    return MatrixXg(*inv * rhs);
  }
  // Located numerically, then kept only if the exact eigenspace is nonzero.
  [[nodiscard]] std::vector<GaussRational> eigenvalues(const MatrixXg& c) const {
    std::vector<Complex> approx = FloatField{1e-10}.eigenvalues(to_complex(c));
    std::vector<GaussRational> out;
    for (auto z : approx) {
      GaussRational q = rationalize(z, 1000000);
      if (eigenspace(c, q).cols() == 0) continue;
      if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
    return out;
  }
  [[nodiscard]] bool is_zero(const MatrixXg& m) const {
    for (Index i = 0; i < m.size(); ++i)
      if (!m(i).is_zero()) return false;
    return true;
  }
};

template <typename S>
Mat<S> vectorize(const std::vector<Mat<S>>& mats) {
  if (mats.empty()) return Mat<S>(0, 0);
  const Index n = mats.front().size();
  Mat<S> out(n, static_cast<Index>(mats.size()));
  for (size_t k = 0; k < mats.size(); ++k) out.col(static_cast<Index>(k)) = mats[k].reshaped();
  return out;
}

/// Linearly independent subset spanning the same complex space.
template <typename Field>
std::vector<Mat<typename Field::S>> independent(const Field& f, const std::vector<Mat<typename Field::S>>& mats) {
  std::vector<Mat<typename Field::S>> out;
  for (const auto& m : mats) {
    if (f.is_zero(m)) continue;
    auto trial = out;
    trial.push_back(m);
    if (f.rank(vectorize(trial)) == static_cast<Index>(trial.size())) out = std::move(trial);
  }
  return out;
}

template <typename Field>
std::vector<Mat<typename Field::S>> lie_closure(const Field& f, const std::vector<Mat<typename Field::S>>& gens) {
  auto basis = independent(f, gens);
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      auto trial = basis;
      trial.push_back(bracket(basis[i], basis[j]));
      auto next = independent(f, trial);
      if (next.size() > basis.size()) basis = std::move(next);
    }
  }
  return basis;
}

template <typename Field>
std::vector<Mat<typename Field::S>> derived(const Field& f, const std::vector<Mat<typename Field::S>>& alg) {
  std::vector<Mat<typename Field::S>> brackets;
  for (size_t i = 0; i < alg.size(); ++i)
    for (size_t j = 0; j < i; ++j) brackets.push_back(bracket(alg[i], alg[j]));
  return independent(f, brackets);
}

template <typename Field>
void check_solvable(const Field& f, const std::vector<Mat<typename Field::S>>& gens) {
  auto current = lie_closure(f, gens);
  const size_t bound = current.size() + 1;
  for (size_t depth = 0; depth <= bound; ++depth) {
    if (current.empty()) return;
    auto next = derived(f, current);
    if (next.size() == current.size())
      fail(ErrorCode::NotSolvable, "derived series stabilizes at dimension " + std::to_string(next.size()));
    current = std::move(next);
  }
  fail(ErrorCode::NotSolvable, "derived series does not terminate");
}

template <typename S>
Index leading_index(const Mat<S>& subspace) {
  Mat<S> rows = subspace.transpose();
  auto ech = rref<S>(rows, 1e-9);
  return ech.pivots.empty() ? subspace.rows() : ech.pivots.front();
}

template <typename S>
Eigen::Matrix<S, Eigen::Dynamic, 1> first_echelon_vector(const Mat<S>& subspace) {
  Mat<S> rows = subspace.transpose();
  auto ech = rref<S>(rows, 1e-9);
  require(!ech.pivots.empty(), ErrorCode::EigenvectorFailure, "empty common eigenspace");
  return ech.reduced.row(0).transpose();
}

/// Common eigenvector of a solvable family acting on S^m.
template <typename Field>
Eigen::Matrix<typename Field::S, Eigen::Dynamic, 1> common_eigenvector(const Field& f,
                                                                       const std::vector<Mat<typename Field::S>>& gens,
                                                                       Index m) {
  using S = typename Field::S;
  auto alg = lie_closure(f, gens);
  auto der = derived(f, alg);
  Mat<S> kernel_basis = Mat<S>::Identity(m, m);
  if (!der.empty()) {
    Mat<S> stacked(m * static_cast<Index>(der.size()), m);
    for (size_t k = 0; k < der.size(); ++k) stacked.middleRows(static_cast<Index>(k) * m, m) = der[k];
    kernel_basis = f.kernel(stacked);
  }
  require(kernel_basis.cols() > 0, ErrorCode::EigenvectorFailure, "derived algebra has no common kernel");
  // The family acts on this kernel through commuting operators.
  Mat<S> e = Mat<S>::Identity(kernel_basis.cols(), kernel_basis.cols());
  for (const auto& a : gens) {
    Mat<S> b = f.restrict_to(kernel_basis, a);
    Mat<S> c = f.restrict_to(e, b);
    Mat<S> best;
    Index best_lead = m + 1;
    for (const auto& lambda : f.eigenvalues(c)) {
      Mat<S> n = f.eigenspace(c, lambda);
      if (n.cols() == 0) continue;
      Mat<S> en = e * n;
      Mat<S> full = kernel_basis * en;
      Index lead = leading_index<S>(full);
      if (lead < best_lead) {
        best_lead = lead;
        best = std::move(en);
      }
    }
    require(best.size() > 0, ErrorCode::EigenvectorFailure, "no eigenspace found on the common kernel");
    e = std::move(best);
  }
  Mat<S> span = kernel_basis * e;
  return first_echelon_vector<S>(span);
}

double eigen_residual(const MatrixXcd& a, const VectorXcd& v) {
  Complex lambda = v.dot(a * v) / v.squaredNorm();
  return (a * v - lambda * v).norm() / (v.norm() * std::max(1.0, a.norm()));
}

SolvableFlag float_flag(const std::vector<MatrixXcd>& gens, double tol) {
  require(!gens.empty(), ErrorCode::InvalidArgument, "no generators");
  const Index d = gens.front().rows();
  for (const auto& a : gens)
    require(a.rows() == d && a.cols() == d, ErrorCode::InvalidArgument, "generators must be square of one size");
  const FloatField field{tol};
  check_solvable(field, gens);

  SolvableFlag flag;
  flag.basis = MatrixXcd(d, 0);
  for (Index j = 0; j < d; ++j) {
    MatrixXcd comp = j == 0 ? MatrixXcd(MatrixXcd::Identity(d, d)) : orthonormal_complement(flag.basis, tol);
    require(comp.cols() == d - j, ErrorCode::EigenvectorFailure, "flag lost rank");
    std::vector<MatrixXcd> induced;
    for (const auto& a : gens) induced.push_back(comp.adjoint() * a * comp);
    VectorXcd v = common_eigenvector(field, induced, d - j);
    v.normalize();
    std::vector<Complex> chars;
    for (const auto& a : induced) {
      require(eigen_residual(a, v) <= kResidualTol, ErrorCode::EigenvectorFailure,
              "common eigenvector residual " + std::to_string(eigen_residual(a, v)) + " at step " +
                  std::to_string(j + 1));
      chars.push_back(v.dot(a * v));
    }
    flag.characters.push_back(std::move(chars));
    flag.basis.conservativeResize(d, j + 1);
    flag.basis.col(j) = comp * v;
  }
  return flag;
}

bool rational_family(const std::vector<MatrixXcd>& gens, std::vector<MatrixXg>& out) {
  out.clear();
  for (const auto& a : gens) {
    MatrixXg q(a.rows(), a.cols());
    for (Index i = 0; i < a.size(); ++i) {
      q(i) = rationalize(a(i), 1000000);
      if (std::abs(q(i).to_complex() - a(i)) > 1e-12) return false;
    }
    out.push_back(std::move(q));
  }
  return true;
}

}  // namespace

SolvableFlag solvable_flag_exact(const std::vector<MatrixXg>& gens) {
  require(!gens.empty(), ErrorCode::InvalidArgument, "no generators");
  const Index d = gens.front().rows();
  for (const auto& a : gens)
    require(a.rows() == d && a.cols() == d, ErrorCode::InvalidArgument, "generators must be square of one size");
  const ExactField field;
  check_solvable(field, gens);

  MatrixXg basis(d, 0);
  std::vector<std::vector<Complex>> characters;
  for (Index j = 0; j < d; ++j) {
    // Complete the flag basis by standard vectors outside its span.
    MatrixXg p = basis;
    for (Index e = 0; e < d && p.cols() < d; ++e) {
      MatrixXg trial(d, p.cols() + 1);
      trial << p, identity_g(d).col(e);
      if (exact_rank<GaussRational>(trial) == trial.cols()) p = std::move(trial);
    }
    auto pinv = exact_inverse<GaussRational>(p);
    require(pinv.has_value(), ErrorCode::Internal, "flag completion is singular");
    std::vector<MatrixXg> induced;
    for (const auto& a : gens) {
      MatrixXg ap = a * p;
      MatrixXg conj = *pinv * ap;
      induced.push_back(conj.bottomRightCorner(d - j, d - j));
    }
    VectorXg v = common_eigenvector(field, induced, d - j);
    std::vector<Complex> chars;
    Index nz = 0;
    while (v(nz).is_zero()) ++nz;
    for (const auto& a : induced) {
      VectorXg av = a * v;
      GaussRational lambda = av(nz) / v(nz);
      VectorXg r = av - v * lambda;
      for (Index i = 0; i < r.size(); ++i)
        require(r(i).is_zero(), ErrorCode::EigenvectorFailure, "exact common eigenvector check failed");
      chars.push_back(lambda.to_complex());
    }
    characters.push_back(std::move(chars));
    VectorXg lifted = p.rightCols(d - j) * v;
    basis.conservativeResize(d, j + 1);
    basis.col(j) = lifted;
  }
  SolvableFlag flag;
  flag.exact_basis = basis;
  flag.characters = std::move(characters);
  // Orthonormalize without changing the nested spans.
  MatrixXcd approx = to_complex(basis);
  Eigen::HouseholderQR<MatrixXcd> qr(approx);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(d, d);
  flag.basis = q;
  return flag;
}

SolvableFlag solvable_flag(const std::vector<MatrixXcd>& gens, double tol) {
  try {
    return float_flag(gens, tol);
  } catch (const Error& e) {
    std::vector<MatrixXg> exact;
    if (e.code() != ErrorCode::EigenvectorFailure || !rational_family(gens, exact)) throw;
    return solvable_flag_exact(exact);
  }
}

SolvableFlag solvable_flag(const std::vector<AlgebraElement>& gens, double tol) {
  std::vector<MatrixXcd> mats;
  for (const auto& x : gens) mats.push_back(x.matrix);
  return solvable_flag(mats, tol);
}

double flag_invariance_residual(const SolvableFlag& flag, const std::vector<MatrixXcd>& gens) {
  double worst = 0.0;
  for (Index j = 1; j <= flag.basis.cols(); ++j) {
    MatrixXcd q = orthonormal_basis(flag.basis.leftCols(j));
    for (const auto& a : gens) {
      MatrixXcd img = a * q;
      MatrixXcd off = img - q * (q.adjoint() * img);
      worst = std::max(worst, off.norm() / std::max(1.0, a.norm()));
    }
  }
  return worst;
}

SolvableWitness solvable_witness(const Representation& rep, const Subspace& v, double tol) {
  require(v.ambient().dimension() == rep.dimension(), ErrorCode::InvalidArgument,
          "subspace lives in a different model space");
  require(v.complex_span(), ErrorCode::InvalidArgument, "solvable witnesses need a complex subspace");
  require(v.is_proper(), ErrorCode::NotProper, "V is the whole space");
  require(rep.has_differential(), ErrorCode::InvalidArgument, "representation has no differential");
  std::vector<MatrixXcd> gens;
  for (const auto& x : real_algebra_basis(rep.group())) gens.push_back(rep.differential(x));

  SolvableWitness w;
  w.flag = solvable_flag(gens, tol);
  const int n = w.flag.size();
  int depth = 0;
  while (depth < n && v.contains(w.flag.basis.col(depth), 1e-9)) ++depth;
  require(depth < n, ErrorCode::NotProper, "V contains the whole flag");
  w.depth = depth;
  w.u = w.flag.basis.col(depth);

  if (depth == 0) {
    w.quotient = std::make_shared<const Representation>(rep);
    w.quotient_subspace = Subspace::span(w.quotient, v.basis(), true);
    w.quotient_u = w.u;
  } else {
    MatrixXcd invariant = w.flag.subspace(depth);
    QuotientModel qm = quotient_model(rep, invariant);
    w.quotient = std::make_shared<const Representation>(quotient_representation(rep, invariant));
    MatrixXcd image = qm.coordinates * v.basis();
    MatrixXcd vbar = image.cols() == 0 ? image : orthonormal_basis(image, 1e-9);
    w.quotient_subspace = Subspace::span(w.quotient, vbar, true);
    w.quotient_u = qm.coordinates * w.u;
  }
  w.certificate = normalized_distance(*w.quotient, w.quotient_u, *w.quotient_subspace);
  require(w.certificate > 0.0, ErrorCode::Internal, "witness line lies in V");
  return w;
}

}  // namespace unisub
