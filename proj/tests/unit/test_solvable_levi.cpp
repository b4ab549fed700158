#include "unisub/error.hpp"
#include "unisub/levi.hpp"
#include "unisub/solvable.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>

using namespace unisub;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

MatrixXcd unit(int n, int i, int j) {
  MatrixXcd m = MatrixXcd::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

// Column spaces of a and b coincide.
bool same_span(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd ab(a.rows(), a.cols() + b.cols());
  ab << a, b;
  const auto r = numerical_rank(ab, 1e-9);
  return r == numerical_rank(a, 1e-9) && r == numerical_rank(b, 1e-9);
}

MatrixXcd stack(const std::vector<MatrixXcd>& ms) {
  MatrixXcd s(ms.size() * static_cast<size_t>(ms[0].rows()), ms[0].cols());
  for (size_t k = 0; k < ms.size(); ++k) s.middleRows(static_cast<Eigen::Index>(k) * ms[0].rows(), ms[0].rows()) = ms[k];
  return s;
}

std::shared_ptr<const Representation> share(Representation r) {
  return std::make_shared<const Representation>(std::move(r));
}

VectorXcd e(int d, int k) {
  VectorXcd v = VectorXcd::Zero(d);
  v(k) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("upper-triangular 2x2 algebra fixes Ce1") {
  const std::vector<MatrixXcd> gens{unit(2, 0, 0), unit(2, 1, 1), unit(2, 0, 1)};
  const SolvableFlag f = solvable_flag(gens);
  REQUIRE(f.size() == 2);
  CHECK(same_span(f.subspace(1), e(2, 0)));
  CHECK(flag_invariance_residual(f, gens) < 1e-10);
}

TEST_CASE("Heisenberg flag from simultaneous kernels") {
  const std::vector<MatrixXcd> gens{unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)};
  const SolvableFlag f = solvable_flag(gens);
  REQUIRE(f.size() == 3);

  // U_1 = common kernel; U_2 = vectors sent into U_1 by every generator.
  const MatrixXcd k1 = nullspace(stack(gens));
  MatrixXcd kill_u1 = MatrixXcd::Identity(3, 3) - k1 * k1.adjoint();
  std::vector<MatrixXcd> pushed;
  for (const auto& g : gens) pushed.push_back(kill_u1 * g);
  const MatrixXcd k2 = nullspace(stack(pushed));
  CHECK(k1.cols() == 1);
  CHECK(k2.cols() == 2);
  CHECK(same_span(f.subspace(1), k1));
  CHECK(same_span(f.subspace(2), k2));
  CHECK(same_span(k2, (MatrixXcd(3, 2) << 1, 0, 0, 1, 0, 0).finished()));
  CHECK(flag_invariance_residual(f, gens) < 1e-10);

  std::vector<MatrixXg> exact;
  for (const auto& g : gens) {
    MatrixXg x = MatrixXg::Constant(3, 3, GaussRational(0));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (g(i, j) != Complex(0.0)) x(i, j) = GaussRational(1);
    exact.push_back(x);
  }
  const SolvableFlag fe = solvable_flag_exact(exact);
  REQUIRE(fe.exact_basis.has_value());
  CHECK(same_span(fe.subspace(1), k1));
  CHECK(same_span(fe.subspace(2), k2));
}

TEST_CASE("abelian diagonal algebra gives the coordinate flag") {
  const std::vector<MatrixXcd> gens{unit(2, 0, 0), unit(2, 1, 1)};
  const SolvableFlag f = solvable_flag(gens);
  CHECK(same_span(f.subspace(1), e(2, 0)));
}

TEST_CASE("non-solvable algebras are rejected") {
  try {
    (void)solvable_flag(real_algebra_basis(GroupSpec::su2()));
    FAIL("expected NotSolvable");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotSolvable);
  }
}

TEST_CASE("upper-triangular 2x2 witnesses") {
  const auto r = share(defining_representation(GroupSpec::upper_triangular(2)));

  const SolvableWitness w0 = solvable_witness(*r, Subspace::span(r, e(2, 1)));
  CHECK(w0.depth == 0);
  CHECK(same_span(w0.u, e(2, 0)));
  CHECK(std::abs(w0.certificate - 1.0) < 1e-12);

  const Subspace ce1 = Subspace::span(r, e(2, 0));
  const SolvableWitness w1 = solvable_witness(*r, ce1);
  CHECK(w1.depth == 1);
  CHECK_FALSE(ce1.contains(w1.u));
  CHECK(std::abs(w1.u(1)) > 0.5);
  // rho(g) e2 = b e1 + d e2 with d != 0: never inside Ce1.
  Rng rng = make_rng(41);
  for (int s = 0; s < 100; ++s) {
    const GroupElement g = sample_group_element(r->group(), rng);
    const VectorXcd x = g.matrix * e(2, 1);
    CHECK(std::abs(x(1)) > 1e-3);
    CHECK_FALSE(ce1.contains(x));
  }

  try {
    (void)solvable_witness(*r, Subspace::span(r, MatrixXcd::Identity(2, 2)));
    FAIL("expected NotProper");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotProper);
  }
}

TEST_CASE("depth-zero certificates are constant on the orbit") {
  const auto r = share(defining_representation(GroupSpec::upper_triangular(3)));
  Rng rng = make_rng(43);
  std::normal_distribution<double> nd;
  int checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    VectorXcd normal(3);
    for (int k = 0; k < 3; ++k) normal(k) = Complex(nd(rng), nd(rng));
    const Subspace v = Subspace::span(r, nullspace(MatrixXcd(normal.adjoint())));
    const SolvableWitness w = solvable_witness(*r, v);
    if (w.depth != 0) continue;
    ++checked;
    double lo = 1.0, hi = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const GroupElement g = sample_group_element(r->group(), rng);
      const double d = normalized_distance(*r, r->realize(g) * w.u, v);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    CHECK(hi - lo < 1e-10);
    CHECK(std::abs(lo - w.certificate) < 1e-10);
  }
  CHECK(checked > 0);
}

TEST_CASE("hyperplanes through e1 need a deeper witness") {
  const auto r = share(defining_representation(GroupSpec::upper_triangular(3)));
  Rng rng = make_rng(47);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 5; ++trial) {
    // Normal vector orthogonal to e1, so e1 lies in V.
    VectorXcd normal(3);
    normal << 0.0, Complex(nd(rng), nd(rng)), Complex(nd(rng), nd(rng));
    const Subspace v = Subspace::span(r, nullspace(MatrixXcd(normal.adjoint())));
    REQUIRE(v.contains(e(3, 0)));
    const SolvableWitness w = solvable_witness(*r, v);
    CHECK(w.depth >= 1);
    CHECK(w.certificate > 0.0);
    REQUIRE(w.quotient_subspace.has_value());
    SearchConfig cfg;
    const OrbitSearchResult res =
        normalized_orbit_distance(*w.quotient, w.quotient_u, *w.quotient_subspace, cfg, static_cast<std::uint64_t>(trial));
    CHECK(res.restarts_used == 64);
    CHECK(res.min_normalized_distance >= w.certificate / 2);
  }
}

TEST_CASE("Levi reduction on U(1) x SU(2)") {
  const Representation u1 = su2_irrep(1);
  const auto rep = share(torus_twisted_sum({{1, u1}, {2, u1}}));
  SearchConfig cfg;
  cfg.samples = 20;

  // A line in each block: every block is universal for S, yet one element of
  // S cannot move both blocks at once.
  const LeviReport both = levi_restriction_check(*rep, Subspace::weight_complement(rep, {0, 2}), cfg);
  REQUIRE(both.blocks.size() == 2);
  CHECK(both.blocks_all_universal);
  for (const auto& b : both.blocks) CHECK(b.v_dimension == 1);
  CHECK(both.levi_verdict.kind == VerdictKind::NotUniversal);
  CHECK(both.group_verdict.kind == VerdictKind::NotUniversal);
  CHECK(both.overall == both.group_verdict.kind);
  CHECK(both.agrees);

  const LeviReport one = levi_restriction_check(*rep, Subspace::weight_complement(rep, {0}), cfg);
  CHECK(one.blocks_all_universal);
  CHECK(one.levi_verdict.kind == VerdictKind::Universal);
  CHECK(one.group_verdict.kind == VerdictKind::Universal);
  CHECK(one.overall == VerdictKind::Universal);
  CHECK(one.agrees);
}

TEST_CASE("trivial central torus reduces to a single block") {
  const auto rep = share(su2_irrep(3));
  SearchConfig cfg;
  cfg.samples = 20;
  const Subspace v = Subspace::weight_complement(rep, {1});
  const LeviReport r = levi_restriction_check(*rep, v, cfg);
  REQUIRE(r.blocks.size() == 1);
  CHECK(r.blocks[0].central_weight.empty());
  CHECK(r.overall == universality_verdict(*rep, v, cfg).kind);
}

TEST_CASE("Levi reduction hypotheses") {
  const auto block = share(block_extension_representation());
  MatrixXcd b = MatrixXcd::Zero(4, 2);
  b(0, 0) = 1.0;
  b(2, 1) = 1.0;
  try {
    (void)levi_restriction_check(*block, Subspace::span(block, b), SearchConfig{});
    FAIL("expected NotCentral");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotCentral);
  }

  const Representation u1 = su2_irrep(1);
  const auto rep = share(torus_twisted_sum({{1, u1}, {2, u1}}));
  try {
    (void)levi_restriction_check(*rep, Subspace::span(rep, e(4, 0) + e(4, 2)), SearchConfig{});
    FAIL("expected NotBlockwise");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotBlockwise);
  }
}

TEST_CASE("block group elements") {
  const GroupSpec g = block_extension_group();
  Rng rng = make_rng(53);
  for (int s = 0; s < 50; ++s) {
    const GroupElement x = sample_group_element(g, rng);
    CHECK(x.matrix.block(2, 0, 2, 2).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((x.matrix.block(0, 0, 2, 2) - x.matrix.block(2, 2, 2, 2)).cwiseAbs().maxCoeff() < 1e-10);
    const MatrixXcd a = x.matrix.block(0, 0, 2, 2);
    CHECK((a.adjoint() * a - MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
  }
}
