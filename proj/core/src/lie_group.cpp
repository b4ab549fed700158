#include "unisub/lie_group.hpp"

#include "unisub/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace unisub {

namespace {

using Eigen::MatrixXcd;

const Complex kI(0.0, 1.0);

MatrixXg unit_g(int n, int r, int c, GaussRational value = GaussRational(1)) {
  MatrixXg m = MatrixXg::Constant(n, n, GaussRational(0));
  m(r, c) = std::move(value);
  return m;
}

const GaussRational kIg(Rational(0), Rational(1));

std::vector<MatrixXg> compact_su_basis_exact(int n) {
  std::vector<MatrixXg> out;
  for (int j = 0; j + 1 < n; ++j) {
    MatrixXg h = unit_g(n, j, j, kIg);
    h(j + 1, j + 1) = -kIg;
    out.push_back(h);
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      MatrixXg a = unit_g(n, j, k, GaussRational(1));
      a(k, j) = GaussRational(-1);
      out.push_back(a);
      MatrixXg s = unit_g(n, j, k, kIg);
      s(k, j) = kIg;
      out.push_back(s);
    }
  }
  return out;
}

MatrixXcd block_embed(const MatrixXcd& block, int offset, int n) {
  MatrixXcd m = MatrixXcd::Zero(n, n);
  m.block(offset, offset, block.rows(), block.cols()) = block;
  return m;
}

MatrixXg block_embed(const MatrixXg& block, int offset, int n) {
  MatrixXg m = MatrixXg::Constant(n, n, GaussRational(0));
  for (Eigen::Index r = 0; r < block.rows(); ++r)
    for (Eigen::Index c = 0; c < block.cols(); ++c) m(offset + r, offset + c) = block(r, c);
  return m;
}

bool blocks_only(const MatrixXcd& m, const GroupSpec& spec, double tol) {
  int offset = 0;
  MatrixXcd rest = m;
  for (const auto& f : spec.factors()) {
    int s = f.matrix_size();
    rest.block(offset, offset, s, s).setZero();
    offset += s;
  }
  return max_abs(rest) <= tol;
}

MatrixXcd haar_su2(Rng& rng) {
  std::normal_distribution<double> normal;
  double q[4];
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : q) {
      x = normal(rng);
      norm += x * x;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  for (double& x : q) x /= norm;
  Complex a(q[0], q[3]);
  Complex b(q[2], q[1]);
  MatrixXcd m(2, 2);
  m << a, -std::conj(b), b, std::conj(a);
  return m;
}

MatrixXcd haar_su3(Rng& rng) {
  std::normal_distribution<double> normal;
  MatrixXcd z(3, 3);
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<MatrixXcd> qr(z);
  MatrixXcd q = qr.householderQ();
  MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 3; ++j) {
    Complex d = r(j, j);
    Complex phase = std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0);
    q.col(j) *= phase;
  }
  Complex det = q.determinant();
  q *= std::exp(-kI * std::arg(det) / 3.0);
  return q;
}

}  // namespace

GroupSpec::GroupSpec(GroupKind kind, int param, std::vector<GroupSpec> factors, std::string label)
    : kind_(kind), param_(param), factors_(std::move(factors)), label_(std::move(label)) {}

GroupSpec::GroupSpec() = default;

GroupSpec GroupSpec::su2() { return {GroupKind::SU2, 0, {}, "SU(2)"}; }
GroupSpec GroupSpec::su3() { return {GroupKind::SU3, 0, {}, "SU(3)"}; }

GroupSpec GroupSpec::torus(int k) {
  require(k >= 1, ErrorCode::InvalidArgument, "torus rank must be at least 1");
  return {GroupKind::Torus, k, {}, k == 1 ? "U(1)" : "U(1)^" + std::to_string(k)};
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors) {
  require(!factors.empty(), ErrorCode::InvalidArgument, "product needs at least one factor");
  std::string label;
  for (const auto& f : factors) label += (label.empty() ? "" : "x") + f.label();
  return {GroupKind::Product, 0, std::move(factors), label};
}

GroupSpec GroupSpec::upper_triangular(int n) {
  require(n >= 2, ErrorCode::InvalidArgument, "upper-triangular group needs n >= 2");
  return {GroupKind::UpperTriangular, n, {}, "B(" + std::to_string(n) + ",C)"};
}

GroupSpec GroupSpec::complexified(const GroupSpec& compact) {
  require(compact.kind() == GroupKind::SU2 || compact.kind() == GroupKind::SU3, ErrorCode::UnsupportedGroup,
          "complexification is only defined for SU(2) and SU(3)");
  return {GroupKind::Complexified, 0, {compact}, compact.kind() == GroupKind::SU2 ? "SL(2,C)" : "SL(3,C)"};
}

GroupSpec GroupSpec::generated(std::string label, std::vector<MatrixXcd> algebra_basis, bool compact) {
  require(!algebra_basis.empty(), ErrorCode::InvalidArgument, "generated group needs a nonempty algebra basis");
  const auto n = algebra_basis.front().rows();
  for (const auto& x : algebra_basis)
    require(x.rows() == n && x.cols() == n, ErrorCode::InvalidArgument, "generator sizes differ");
  GroupSpec g(GroupKind::Generated, 0, {}, std::move(label));
  g.generators_ = std::make_shared<const std::vector<MatrixXcd>>(std::move(algebra_basis));
  g.generated_compact_ = compact;
  return g;
}

int GroupSpec::matrix_size() const {
  switch (kind_) {
    case GroupKind::SU2: return 2;
    case GroupKind::SU3: return 3;
    case GroupKind::Torus: return param_;
    case GroupKind::UpperTriangular: return param_;
    case GroupKind::Complexified: return factors_.front().matrix_size();
    case GroupKind::Product: {
      int n = 0;
      for (const auto& f : factors_) n += f.matrix_size();
      return n;
    }
    case GroupKind::Generated: return static_cast<int>(generators_->front().rows());
  }
  return 0;
}

bool GroupSpec::is_compact() const {
  switch (kind_) {
    case GroupKind::SU2:
    case GroupKind::SU3:
    case GroupKind::Torus: return true;
    case GroupKind::UpperTriangular:
    case GroupKind::Complexified: return false;
    case GroupKind::Product:
      for (const auto& f : factors_)
        if (!f.is_compact()) return false;
      return true;
    case GroupKind::Generated: return generated_compact_;
  }
  return false;
}

int GroupSpec::real_dimension() const { return static_cast<int>(real_algebra_basis(*this).size()); }

const std::vector<MatrixXcd>& GroupSpec::generators() const {
  require(kind_ == GroupKind::Generated, ErrorCode::UnsupportedGroup, "only generated groups carry generators");
  return *generators_;
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
  if (a.kind_ != b.kind_ || a.param_ != b.param_ || a.factors_ != b.factors_) return false;
  if (a.kind_ != GroupKind::Generated) return true;
  if (a.label_ != b.label_ || a.generated_compact_ != b.generated_compact_) return false;
  if (a.generators_ == b.generators_) return true;
  const auto& ga = *a.generators_;
  const auto& gb = *b.generators_;
  if (ga.size() != gb.size()) return false;
  for (size_t k = 0; k < ga.size(); ++k)
    if (ga[k].rows() != gb[k].rows() || max_abs(ga[k] - gb[k]) > 0.0) return false;
  return true;
}

bool GroupElement::is_valid(double tol) const {
  const int n = parent.matrix_size();
  if (matrix.rows() != n || matrix.cols() != n) return false;
  switch (parent.kind()) {
    case GroupKind::SU2:
    case GroupKind::SU3: {
      MatrixXcd gram = matrix.adjoint() * matrix - MatrixXcd::Identity(n, n);
      return max_abs(gram) <= tol && std::abs(matrix.determinant() - 1.0) <= tol;
    }
    case GroupKind::Torus:
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          if (r == c ? std::abs(std::abs(matrix(r, c)) - 1.0) > tol : std::abs(matrix(r, c)) > tol) return false;
        }
      return true;
    case GroupKind::UpperTriangular:
      for (int r = 0; r < n; ++r) {
        if (std::abs(matrix(r, r)) <= tol) return false;
        for (int c = 0; c < r; ++c)
          if (std::abs(matrix(r, c)) > tol) return false;
      }
      return true;
    case GroupKind::Complexified: {
      double scale = std::pow(std::max(1.0, matrix.norm()), n);
      return std::abs(matrix.determinant() - 1.0) <= tol * scale;
    }
    case GroupKind::Product: {
      if (!blocks_only(matrix, parent, tol)) return false;
      for (size_t k = 0; k < parent.factors().size(); ++k)
        if (!factor_component(*this, k).is_valid(tol)) return false;
      return true;
    }
    case GroupKind::Generated: return std::abs(matrix.determinant()) > tol;
  }
  return false;
}

bool AlgebraElement::is_valid(double tol) const {
  const int n = parent.matrix_size();
  if (matrix.rows() != n || matrix.cols() != n) return false;
  switch (parent.kind()) {
    case GroupKind::SU2:
    case GroupKind::SU3: {
      if (std::abs(matrix.trace()) > tol) return false;
      return !real_form || max_abs(matrix + matrix.adjoint()) <= tol;
    }
    case GroupKind::Complexified: return std::abs(matrix.trace()) <= tol;
    case GroupKind::Torus:
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          if (r != c && std::abs(matrix(r, c)) > tol) return false;
          if (r == c && real_form && std::abs(matrix(r, c).real()) > tol) return false;
        }
      return true;
    case GroupKind::UpperTriangular:
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < r; ++c)
          if (std::abs(matrix(r, c)) > tol) return false;
      return true;
    case GroupKind::Product: {
      if (!blocks_only(matrix, parent, tol)) return false;
      int offset = 0;
      for (const auto& f : parent.factors()) {
        int s = f.matrix_size();
        AlgebraElement part{matrix.block(offset, offset, s, s), f, real_form};
        if (!part.is_valid(tol)) return false;
        offset += s;
      }
      return true;
    }
    case GroupKind::Generated: {
      const auto& gens = parent.generators();
      if (real_form) {
        Eigen::MatrixXd a(2 * n * n, static_cast<Eigen::Index>(gens.size()));
        for (size_t k = 0; k < gens.size(); ++k) a.col(static_cast<Eigen::Index>(k)) = realify(gens[k]);
        Eigen::VectorXd b = realify(matrix);
        Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(b);
        return (a * x - b).norm() <= tol * std::max(1.0, b.norm());
      }
      MatrixXcd a(n * n, static_cast<Eigen::Index>(gens.size()));
      for (size_t k = 0; k < gens.size(); ++k)
        a.col(static_cast<Eigen::Index>(k)) = gens[k].reshaped();
      Eigen::VectorXcd b = matrix.reshaped();
      Eigen::VectorXcd x = a.completeOrthogonalDecomposition().solve(b);
      return (a * x - b).norm() <= tol * std::max(1.0, b.norm());
    }
  }
  return false;
}

GroupElement identity_element(const GroupSpec& spec) {
  const int n = spec.matrix_size();
  return {MatrixXcd::Identity(n, n), spec};
}

GroupElement sample_group_element(const GroupSpec& spec, Rng& rng, const SearchBox& box) {
  std::uniform_real_distribution<double> unit01(0.0, 1.0);
  const int n = spec.matrix_size();
  switch (spec.kind()) {
    case GroupKind::SU2: return {haar_su2(rng), spec};
    case GroupKind::SU3: return {haar_su3(rng), spec};
    case GroupKind::Torus: {
      MatrixXcd m = MatrixXcd::Zero(n, n);
      for (int j = 0; j < n; ++j) m(j, j) = std::exp(kI * (2.0 * std::numbers::pi * unit01(rng)));
      return {m, spec};
    }
    case GroupKind::Product: {
      std::vector<GroupElement> parts;
      for (const auto& f : spec.factors()) parts.push_back(sample_group_element(f, rng, box));
      return product_element(spec, parts);
    }
    case GroupKind::UpperTriangular: {
      std::uniform_real_distribution<double> logd(-box.log_diagonal, box.log_diagonal);
      std::uniform_real_distribution<double> entry(-box.entry, box.entry);
      MatrixXcd m = MatrixXcd::Zero(n, n);
      for (int r = 0; r < n; ++r) {
        double a = logd(rng);
        double b = 2.0 * std::numbers::pi * unit01(rng);
        m(r, r) = std::exp(Complex(a, b));
        for (int c = r + 1; c < n; ++c) {
          double re = entry(rng);
          double im = entry(rng);
          m(r, c) = Complex(re, im);
        }
      }
      return {m, spec};
    }
    case GroupKind::Complexified: {
      const GroupSpec& k = spec.factors().front();
      MatrixXcd kpart = sample_group_element(k, rng, box).matrix;
      std::uniform_real_distribution<double> y(-box.log_diagonal, box.log_diagonal);
      MatrixXcd herm = MatrixXcd::Zero(n, n);
      for (const auto& t : real_algebra_basis(k)) herm += y(rng) * (kI * t);
      return {kpart * expm(herm), spec};
    }
    case GroupKind::Generated: {
      const auto& gens = spec.generators();
      std::uniform_real_distribution<double> theta(-std::numbers::pi, std::numbers::pi);
      double scale = 1.0;
      for (int attempt = 0; attempt < 256; ++attempt) {
        MatrixXcd m = MatrixXcd::Identity(n, n);
        for (int pass = 0; pass < 2; ++pass)
          for (const auto& x : gens) m = m * expm((scale * theta(rng)) * x);
        GroupElement g{m, spec};
        if (spec.is_compact() || within_box(g, box)) return g;
        if (attempt % 16 == 15) scale *= 0.5;
      }
      return identity_element(spec);
    }
  }
  fail(ErrorCode::UnsupportedGroup, "cannot sample " + spec.label());
}

std::vector<MatrixXcd> real_algebra_basis(const GroupSpec& spec) {
  if (spec.kind() == GroupKind::Generated) return spec.generators();
  std::vector<MatrixXcd> out;
  for (const auto& b : exact_algebra_basis(spec)) out.push_back(to_complex(b));
  return out;
}

std::vector<MatrixXg> exact_algebra_basis(const GroupSpec& spec) {
  const int n = spec.matrix_size();
  switch (spec.kind()) {
    case GroupKind::SU2: return compact_su_basis_exact(2);
    case GroupKind::SU3: return compact_su_basis_exact(3);
    case GroupKind::Torus: {
      std::vector<MatrixXg> out;
      for (int j = 0; j < n; ++j) out.push_back(unit_g(n, j, j, kIg));
      return out;
    }
    case GroupKind::UpperTriangular: {
      std::vector<MatrixXg> out;
      for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c) {
          out.push_back(unit_g(n, r, c, GaussRational(1)));
          out.push_back(unit_g(n, r, c, kIg));
        }
      return out;
    }
    case GroupKind::Complexified: {
      auto out = exact_algebra_basis(spec.factors().front());
      const auto m = out.size();
      for (size_t k = 0; k < m; ++k) {
        MatrixXg scaled = out[k];
        for (Eigen::Index i = 0; i < scaled.size(); ++i) scaled(i) = scaled(i) * kIg;
        out.push_back(scaled);
      }
      return out;
    }
    case GroupKind::Product: {
      std::vector<MatrixXg> out;
      int offset = 0;
      for (const auto& f : spec.factors()) {
        for (const auto& b : exact_algebra_basis(f)) out.push_back(block_embed(b, offset, n));
        offset += f.matrix_size();
      }
      return out;
    }
    case GroupKind::Generated: return {};
  }
  return {};
}

AlgebraElement adjoint_action(const GroupElement& g, const AlgebraElement& x) {
  const bool same = g.parent == x.parent;
  const bool into_complex = x.parent.kind() == GroupKind::Complexified && x.parent.factors().front() == g.parent;
  const bool from_complex = g.parent.kind() == GroupKind::Complexified && g.parent.factors().front() == x.parent;
  require(same || into_complex || from_complex, ErrorCode::ParentMismatch,
          "cannot act by " + g.parent.label() + " on the algebra of " + x.parent.label());
  MatrixXcd inv = g.parent.is_compact() ? MatrixXcd(g.matrix.adjoint()) : MatrixXcd(g.matrix.inverse());
  MatrixXcd out = g.matrix * x.matrix * inv;
  return {out, x.parent, x.real_form && !from_complex};
}

GroupElement exp_map(const AlgebraElement& x) {
  GroupSpec parent = x.parent;
  if (!x.real_form && (parent.kind() == GroupKind::SU2 || parent.kind() == GroupKind::SU3))
    parent = GroupSpec::complexified(parent);
  return {expm(x.matrix), parent};
}

GroupElement retract(const GroupElement& g, const std::vector<MatrixXcd>& basis, const Eigen::VectorXd& coords) {
  const auto n = g.matrix.rows();
  MatrixXcd x = MatrixXcd::Zero(n, n);
  for (size_t k = 0; k < basis.size(); ++k) x += coords(static_cast<Eigen::Index>(k)) * basis[k];
  return {g.matrix * expm(x), g.parent};
}

std::vector<double> box_excess(const GroupElement& g, const SearchBox& box) {
  const auto& spec = g.parent;
  std::vector<double> out;
  auto push = [&out](double v) { out.push_back(std::max(0.0, v)); };
  switch (spec.kind()) {
    case GroupKind::SU2:
    case GroupKind::SU3:
    case GroupKind::Torus: break;
    case GroupKind::Product:
      for (size_t k = 0; k < spec.factors().size(); ++k) {
        auto part = box_excess(factor_component(g, k), box);
        out.insert(out.end(), part.begin(), part.end());
      }
      break;
    case GroupKind::UpperTriangular: {
      const auto n = g.matrix.rows();
      for (Eigen::Index r = 0; r < n; ++r) {
        double d = std::abs(g.matrix(r, r));
        push(d == 0.0 ? std::numeric_limits<double>::infinity() : std::abs(std::log(d)) - box.log_diagonal);
        for (Eigen::Index c = r + 1; c < n; ++c) {
          push(std::abs(g.matrix(r, c).real()) - box.entry);
          push(std::abs(g.matrix(r, c).imag()) - box.entry);
        }
      }
      break;
    }
    case GroupKind::Complexified: {
      // |g| = exp(|Y|) for g = k exp(iY); bound the top singular value.
      Eigen::JacobiSVD<MatrixXcd> svd(g.matrix);
      push(std::log(svd.singularValues()(0)) - box.log_diagonal * static_cast<double>(g.matrix.rows()));
      break;
    }
    case GroupKind::Generated:
      if (spec.is_compact()) break;
      for (Eigen::Index i = 0; i < g.matrix.size(); ++i) {
        push(std::abs(g.matrix(i).real()) - box.entry);
        push(std::abs(g.matrix(i).imag()) - box.entry);
      }
      break;
  }
  return out;
}

bool within_box(const GroupElement& g, const SearchBox& box) {
  for (double e : box_excess(g, box))
    if (e > 1e-12) return false;
  return true;
}

GroupElement factor_component(const GroupElement& g, std::size_t k) {
  require(g.parent.kind() == GroupKind::Product, ErrorCode::InvalidArgument, "factor_component needs a product element");
  const auto& fs = g.parent.factors();
  require(k < fs.size(), ErrorCode::IndexOutOfRange, "factor index out of range");
  int offset = 0;
  for (size_t j = 0; j < k; ++j) offset += fs[j].matrix_size();
  const int s = fs[k].matrix_size();
  return {g.matrix.block(offset, offset, s, s), fs[k]};
}

GroupElement product_element(const GroupSpec& product, const std::vector<GroupElement>& parts) {
  require(product.kind() == GroupKind::Product && parts.size() == product.factors().size(), ErrorCode::GroupMismatch,
          "parts do not match the product factors");
  const int n = product.matrix_size();
  MatrixXcd m = MatrixXcd::Zero(n, n);
  int offset = 0;
  for (size_t k = 0; k < parts.size(); ++k) {
    require(parts[k].parent == product.factors()[k], ErrorCode::GroupMismatch, "factor parent mismatch");
    m += block_embed(parts[k].matrix, offset, n);
    offset += product.factors()[k].matrix_size();
  }
  return {m, product};
}

GroupElement su2_torus_element(Complex t) {
  MatrixXcd m = MatrixXcd::Zero(2, 2);
  m(0, 0) = t;
  m(1, 1) = std::conj(t);
  return {m, GroupSpec::su2()};
}

GroupElement su2_weyl_element() { return {to_complex(su2_weyl_element_exact()), GroupSpec::su2()}; }

MatrixXg su2_weyl_element_exact() {
  MatrixXg w = MatrixXg::Constant(2, 2, GaussRational(0));
  w(0, 1) = GaussRational(-1);
  w(1, 0) = GaussRational(1);
  return w;
}

MatrixXg su2_torus_element_exact(const Rational& s) {
  Rational den = Rational(1) + s * s;
  GaussRational t((Rational(1) - s * s) / den, (Rational(2) * s) / den);
  MatrixXg m = MatrixXg::Constant(2, 2, GaussRational(0));
  m(0, 0) = t;
  m(1, 1) = conj(t);
  return m;
}

}  // namespace unisub
