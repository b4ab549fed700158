#include "unisub/subalgebra.hpp"

#include "unisub/error.hpp"
#include "unisub/linalg.hpp"
#include "unisub/representation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace unisub {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;

const GaussRational kI(Rational(0), Rational(1));

template <typename V>
auto stack(const std::vector<V>& cols) {
  using Mat = Eigen::Matrix<typename V::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Index rows = cols.empty() ? 0 : cols.front().size();
  Mat out(rows, static_cast<Index>(cols.size()));
  for (size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Index>(k)) = cols[k];
  return out;
}

MatrixXd kernel(const MatrixXd& m) { return nullspace(m, 1e-10); }
MatrixXq kernel(const MatrixXq& m) { return exact_nullspace<Rational>(m); }
Index rank_of(const MatrixXd& m) { return numerical_rank(m, 1e-10); }
Index rank_of(const MatrixXq& m) { return exact_rank<Rational>(m); }

/// Coefficients c (columns) with sum_k c_k [g_k, h_j] in span(h) for every j.
template <typename CMat>
auto normalizer_coefficients(const std::vector<CMat>& g, const std::vector<CMat>& h) {
  using RVec = decltype(realify(std::declval<CMat>()));
  using RMat = Eigen::Matrix<typename RVec::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const auto K = static_cast<Index>(g.size());
  const auto L = static_cast<Index>(h.size());
  const auto J = L;
  if (K == 0) return RMat(0, 0);
  const Index block = realify(g.front()).size();
  std::vector<RVec> hr;
  for (const auto& b : h) hr.push_back(realify(b));
  RMat sys = RMat::Constant(J * block, K + J * L, typename RVec::Scalar(0));
  for (Index j = 0; j < J; ++j) {
    for (Index k = 0; k < K; ++k) sys.block(j * block, k, block, 1) = realify(CMat(bracket(g[static_cast<size_t>(k)], h[static_cast<size_t>(j)])));
    for (Index l = 0; l < L; ++l) sys.block(j * block, K + j * L + l, block, 1) = -hr[static_cast<size_t>(l)];
  }
  RMat ker = J == 0 ? RMat(RMat::Identity(K, K)) : kernel(sys);
  return RMat(ker.topRows(K));
}

template <typename CMat, typename RMat>
std::vector<CMat> combine(const std::vector<CMat>& g, const RMat& coeffs) {
  std::vector<CMat> out;
  for (Index c = 0; c < coeffs.cols(); ++c) {
    CMat x = CMat::Zero(g.front().rows(), g.front().cols());
    for (Index k = 0; k < coeffs.rows(); ++k) {
      if constexpr (std::is_same_v<CMat, MatrixXg>) {
        if (!coeffs(k, c).is_zero()) x += g[static_cast<size_t>(k)] * GaussRational(coeffs(k, c));
      } else {
        x += coeffs(k, c) * g[static_cast<size_t>(k)];
      }
    }
    out.push_back(std::move(x));
  }
  return out;
}

template <typename CMat>
Index centralizer_dimension(const CMat& x, const std::vector<CMat>& h) {
  using RVec = decltype(realify(std::declval<CMat>()));
  std::vector<RVec> cols;
  for (const auto& b : h) cols.push_back(realify(CMat(bracket(x, b))));
  auto m = stack(cols);
  return static_cast<Index>(h.size()) - rank_of(m);
}

std::vector<Weight> normalized_roots(const RootSystem& rs, const std::vector<Weight>& set) {
  std::vector<Weight> out;
  for (const auto& r : set) {
    require(static_cast<int>(r.size()) == rs.rank && is_root(rs, r), ErrorCode::InvalidRoots,
            "not a root of the system");
    out.push_back(r);
  }
  return out;
}

MatrixXg block2(const MatrixXg& a, const MatrixXg& b) {
  MatrixXg m = MatrixXg::Constant(4, 4, GaussRational(0));
  m.topLeftCorner(2, 2) = a;
  m.bottomRightCorner(2, 2) = b;
  return m;
}

MatrixXg zero_g(Index n) { return MatrixXg::Constant(n, n, GaussRational(0)); }

}  // namespace

SubalgebraSpec SubalgebraSpec::from_basis(GroupSpec ambient, std::vector<MatrixXcd> basis, bool complex_span,
                                          std::string name) {
  SubalgebraSpec s;
  s.ambient_ = std::move(ambient);
  s.basis_ = std::move(basis);
  s.complex_ = complex_span;
  s.name_ = std::move(name);
  const int n = s.ambient_.matrix_size();
  for (const auto& b : s.basis_)
    require(b.rows() == n && b.cols() == n, ErrorCode::InvalidArgument, "basis matrix has the wrong size");
  auto rb = s.real_basis();
  std::vector<Eigen::VectorXd> cols;
  for (const auto& b : rb) cols.push_back(realify(b));
  if (!cols.empty())
    require(numerical_rank(stack(cols), 1e-10) == static_cast<Index>(cols.size()), ErrorCode::InvalidArgument,
            "subalgebra basis is linearly dependent");
  require(s.bracket_residual() < 1e-10, ErrorCode::InvalidArgument, "basis does not span a subalgebra");
  return s;
}

SubalgebraSpec SubalgebraSpec::from_exact(GroupSpec ambient, std::vector<MatrixXg> basis, bool complex_span,
                                          std::string name) {
  std::vector<MatrixXcd> approx;
  for (const auto& b : basis) approx.push_back(to_complex(b));
  SubalgebraSpec s = from_basis(std::move(ambient), std::move(approx), complex_span, std::move(name));
  s.exact_ = std::move(basis);
  return s;
}

SubalgebraSpec SubalgebraSpec::with_root_set(std::vector<Weight> roots) const {
  SubalgebraSpec s = *this;
  s.roots_ = std::move(roots);
  return s;
}

std::vector<MatrixXcd> SubalgebraSpec::real_basis() const {
  std::vector<MatrixXcd> out = basis_;
  if (complex_)
    for (const auto& b : basis_) out.push_back(Complex(0, 1) * b);
  return out;
}

std::optional<std::vector<MatrixXg>> SubalgebraSpec::exact_real_basis() const {
  if (!exact_) return std::nullopt;
  std::vector<MatrixXg> out = *exact_;
  if (complex_)
    for (const auto& b : *exact_) out.push_back(b * kI);
  return out;
}

double SubalgebraSpec::bracket_residual() const {
  const auto rb = real_basis();
  if (rb.empty()) return 0.0;
  std::vector<Eigen::VectorXd> cols;
  for (const auto& b : rb) cols.push_back(realify(b));
  MatrixXd span = stack(cols);
  auto qr = span.colPivHouseholderQr();
  double worst = 0.0;
  for (size_t i = 0; i < rb.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      Eigen::VectorXd v = realify(MatrixXcd(bracket(rb[i], rb[j])));
      Eigen::VectorXd x = qr.solve(v);
      worst = std::max(worst, (span * x - v).norm() / std::max(1.0, v.norm()));
    }
  }
  return worst;
}

SubalgebraSpec normalizer_subalgebra(const std::vector<MatrixXcd>& g_basis, const SubalgebraSpec& h) {
  const auto coeffs = normalizer_coefficients(g_basis, h.real_basis());
  return SubalgebraSpec::from_basis(h.ambient(), combine(g_basis, coeffs), false, "N(" + h.name() + ")");
}

SubalgebraSpec normalizer_subalgebra(const std::vector<MatrixXg>& g_basis, const SubalgebraSpec& h) {
  const auto hb = h.exact_real_basis();
  require(hb.has_value(), ErrorCode::InvalidArgument, "exact normalizer needs an exact subalgebra basis");
  const auto coeffs = normalizer_coefficients(g_basis, *hb);
  return SubalgebraSpec::from_exact(h.ambient(), combine(g_basis, coeffs), false, "N(" + h.name() + ")");
}

SubalgebraSpec normalizer_subalgebra(const SubalgebraSpec& h) {
  if (h.exact_basis() && h.ambient().kind() != GroupKind::Generated)
    return normalizer_subalgebra(exact_algebra_basis(h.ambient()), h);
  return normalizer_subalgebra(real_algebra_basis(h.ambient()), h);
}

int rank_of_compact_subalgebra(const SubalgebraSpec& h, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0x2A4C);
  std::uniform_int_distribution<long long> num(-97, 97);
  std::uniform_int_distribution<long long> den(1, 31);
  const auto exact = h.exact_real_basis();
  const auto fl = h.real_basis();
  if (fl.empty()) return 0;
  constexpr int kRounds = 8;
  for (int round = 0; round < kRounds; ++round) {
    std::vector<Index> dims;
    for (int draw = 0; draw < 3; ++draw) {
      std::vector<Rational> q;
      for (size_t k = 0; k < fl.size(); ++k) q.emplace_back(num(rng), den(rng));
      if (exact) {
        MatrixXg x = zero_g(exact->front().rows());
        for (size_t k = 0; k < q.size(); ++k) x += (*exact)[k] * GaussRational(q[k]);
        dims.push_back(centralizer_dimension(x, *exact));
      } else {
        MatrixXcd x = MatrixXcd::Zero(fl.front().rows(), fl.front().cols());
        for (size_t k = 0; k < q.size(); ++k) x += q[k].to_double() * fl[k];
        dims.push_back(centralizer_dimension(x, fl));
      }
    }
    if (dims[0] == dims[1] && dims[1] == dims[2]) return static_cast<int>(dims[0]);
  }
  fail(ErrorCode::DegenerateDraws, "generic centralizer dimensions disagree across draws");
}

bool is_maximal_rank(const GroupSpec& g, const SubalgebraSpec& h, std::uint64_t seed) {
  return rank_of_compact_subalgebra(h, seed) == weight_rank(g);
}

bool contains_positive_system(const RootSystem& rs, const std::vector<Weight>& root_set) {
  const auto roots = normalized_roots(rs, root_set);
  const std::set<Weight> have(roots.begin(), roots.end());
  for (const auto& w : weyl_group(rs).elements) {
    bool inside = true;
    for (const auto& a : rs.positive_roots) inside = inside && have.count(act(w, a)) > 0;
    if (inside) return true;
  }
  return false;
}

bool closedness_criterion(const GroupSpec& g, const SubalgebraSpec& h) {
  require(h.ambient() == g, ErrorCode::GroupMismatch, "subalgebra lives in a different algebra");
  return normalizer_subalgebra(h).real_dimension() == h.real_dimension();
}

Eigen::VectorXd algebra_coordinates(const GroupSpec& g, const MatrixXcd& x) {
  const auto basis = real_algebra_basis(g);
  std::vector<Eigen::VectorXd> cols;
  for (const auto& b : basis) cols.push_back(realify(b));
  MatrixXd m = stack(cols);
  Eigen::VectorXd rhs = realify(x);
  Eigen::VectorXd c = m.colPivHouseholderQr().solve(rhs);
  require((m * c - rhs).norm() <= 1e-9 * std::max(1.0, rhs.norm()), ErrorCode::InvalidArgument,
          "matrix does not lie in the Lie algebra of " + g.label());
  return c;
}

std::vector<CatalogEntry> compact_subalgebra_catalog(const GroupSpec& g) {
  std::vector<CatalogEntry> out;
  if (g.kind() == GroupKind::SU2) {
    const auto b = exact_algebra_basis(g);
    out.push_back({SubalgebraSpec::from_exact(g, {b[0]}, false, "t"), maximal_torus_subgroup(g)});
    out.push_back({SubalgebraSpec::from_exact(g, {b[0]}, false, "n(t)"), torus_normalizer_subgroup(g)});
    out.push_back({SubalgebraSpec::from_exact(g, b, false, "su(2)"), whole_group_subgroup(g)});
    return out;
  }
  if (g.kind() == GroupKind::SU3) {
    const auto b = exact_algebra_basis(g);
    // Order: i(E11-E22), i(E22-E33), then E_jk - E_kj and i(E_jk + E_kj) for (0,1), (0,2), (1,2).
    std::vector<MatrixXg> su2_block{b[0], b[2], b[3]};
    MatrixXg center = zero_g(3);
    center(0, 0) = kI;
    center(1, 1) = kI;
    center(2, 2) = GaussRational(-2) * kI;
    std::vector<MatrixXg> u2_block = su2_block;
    u2_block.push_back(center);
    out.push_back({SubalgebraSpec::from_exact(g, {b[0], b[1]}, false, "t"), maximal_torus_subgroup(g)});
    out.push_back({SubalgebraSpec::from_exact(g, {b[0], b[1]}, false, "n(t)"), torus_normalizer_subgroup(g)});
    out.push_back({SubalgebraSpec::from_exact(g, u2_block, false, "u(2)"), subgroup_by_name(g, "U(2)")});
    out.push_back({SubalgebraSpec::from_exact(g, su2_block, false, "su(2)"), subgroup_by_name(g, "SU(2)")});
    out.push_back({SubalgebraSpec::from_exact(g, {b[2], b[4], b[6]}, false, "so(3)"), subgroup_by_name(g, "SO(3)")});
    out.push_back({SubalgebraSpec::from_exact(g, b, false, "su(3)"), whole_group_subgroup(g)});
    return out;
  }
  if (g == GroupSpec::product({GroupSpec::su2(), GroupSpec::su2()})) {
    const auto s = exact_algebra_basis(GroupSpec::su2());
    const MatrixXg z = zero_g(2);
    const MatrixXg t1 = block2(s[0], z), t2 = block2(z, s[0]);
    std::vector<MatrixXg> first, diag, full;
    for (const auto& x : s) {
      first.push_back(block2(x, z));
      diag.push_back(block2(x, x));
      full.push_back(block2(x, z));
    }
    for (const auto& x : s) full.push_back(block2(z, x));
    std::vector<MatrixXg> first_t = first;
    first_t.push_back(t2);
    out.push_back({SubalgebraSpec::from_exact(g, {t1, t2}, false, "t+t"), maximal_torus_subgroup(g)});
    out.push_back({SubalgebraSpec::from_exact(g, {t1, t2}, false, "n(t)"), torus_normalizer_subgroup(g)});
    out.push_back({SubalgebraSpec::from_exact(g, diag, false, "diag su(2)"), subgroup_by_name(g, "diag")});
    out.push_back({SubalgebraSpec::from_exact(g, first_t, false, "su(2)+t"), subgroup_by_name(g, "SU(2)xT")});
    out.push_back({SubalgebraSpec::from_exact(g, first, false, "su(2)+0"), subgroup_by_name(g, "SU(2)x1")});
    out.push_back({SubalgebraSpec::from_exact(g, {t1}, false, "t+0"), subgroup_by_name(g, "Tx1")});
    out.push_back({SubalgebraSpec::from_exact(g, full, false, "su(2)+su(2)"), whole_group_subgroup(g)});
    return out;
  }
  fail(ErrorCode::UnsupportedGroup, "no subalgebra catalog for " + g.label());
}

std::vector<CatalogEntry> compact_subalgebra_catalog() {
  std::vector<CatalogEntry> out;
  for (const auto& g : {GroupSpec::su2(), GroupSpec::product({GroupSpec::su2(), GroupSpec::su2()}), GroupSpec::su3()}) {
    auto part = compact_subalgebra_catalog(g);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

SubalgebraSpec irrational_torus_line() {
  MatrixXcd x = MatrixXcd::Zero(2, 2);
  x(0, 0) = Complex(0, 1);
  x(1, 1) = Complex(0, std::sqrt(2.0));
  return SubalgebraSpec::from_basis(GroupSpec::torus(2), {x}, false, "line (1, sqrt 2)");
}

SubalgebraSpec borel_sl2() {
  MatrixXg h = zero_g(2), e = zero_g(2);
  h(0, 0) = GaussRational(1);
  h(1, 1) = GaussRational(-1);
  e(0, 1) = GaussRational(1);
  return SubalgebraSpec::from_exact(GroupSpec::complexified(GroupSpec::su2()), {h, e}, true, "b");
}

std::vector<NamedRootSet> sl3_root_subsets() {
  const Weight a1{2, -1}, a2{-1, 2}, a12{1, 1};
  const Weight m1 = {-2, 1}, m2 = {1, -2}, m12 = {-1, -1};
  return {
      {"empty", {}},
      {"{a1,-a1}", {a1, m1}},
      {"B+", {a1, a2, a12}},
      {"B-", {m1, m2, m12}},
      {"P1", {a1, a2, a12, m1}},
      {"P2", {a1, a2, a12, m2}},
      {"all", {a1, a2, a12, m1, m2, m12}},
      {"{a1,a1+a2}", {a1, a12}},
      {"{a2,a1+a2}", {a2, a12}},
      {"s1(B+)", {m1, a12, a2}},
  };
}

}  // namespace unisub
