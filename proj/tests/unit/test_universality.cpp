#include "unisub/error.hpp"
#include "unisub/levi.hpp"
#include "unisub/universality.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>

using namespace unisub;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

std::shared_ptr<const Representation> share(Representation r) {
  return std::make_shared<const Representation>(std::move(r));
}

VectorXcd gaussian(Rng& rng, int d) {
  std::normal_distribution<double> nd;
  VectorXcd v(d);
  for (int k = 0; k < d; ++k) v(k) = Complex(nd(rng), nd(rng));
  return v;
}

VectorXcd basis_vector(int d, int k) {
  VectorXcd e = VectorXcd::Zero(d);
  e(k) = 1.0;
  return e;
}

SearchConfig quick(int samples = 20) {
  SearchConfig cfg;
  cfg.samples = samples;
  cfg.restarts = 16;
  return cfg;
}

// Minimum over a grid of unit quaternions (a, b, c, d) of the normalized
// distance of diag(A, A)(e1, e2) to span(e1, e1'), computed from A directly.
double levi_grid_minimum(int steps) {
  const double pi = 3.141592653589793;
  double best = 1.0;
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; j <= steps; ++j)
      for (int k = 0; k < 2 * steps; ++k) {
        const double psi = pi / 2 * i / steps, th = pi * j / steps, ph = pi * k / steps;
        const double a = std::cos(psi), b = std::sin(psi) * std::cos(th);
        const double c = std::sin(psi) * std::sin(th) * std::cos(ph), d = std::sin(psi) * std::sin(th) * std::sin(ph);
        const Complex alpha(a, b), beta(c, d);
        // A = [[alpha, -conj beta], [beta, conj alpha]].
        const Complex a11 = alpha, a12 = -std::conj(beta), a21 = beta, a22 = std::conj(alpha);
        const double num = std::norm(a21) + std::norm(a22);
        const double den = std::norm(a11) + std::norm(a21) + std::norm(a12) + std::norm(a22);
        best = std::min(best, std::sqrt(num / den));
      }
  return best;
}

}  // namespace

TEST_CASE("vectors of V sit at distance zero") {
  const auto r = share(su2_irrep(4));
  const Subspace v = Subspace::weight_complement(r, {2});
  VectorXcd u = VectorXcd::Zero(5);
  u(0) = 1.0;
  u(4) = Complex(0.0, 2.0);
  const OrbitSearchResult res = normalized_orbit_distance(*r, u, v, quick());
  CHECK(res.min_normalized_distance < 1e-15);
  CHECK(normalized_distance(*r, u, v) < 1e-15);
  CHECK_THROWS_AS(normalized_orbit_distance(*r, VectorXcd::Zero(5), v, quick()), Error);
}

TEST_CASE("objective is scale invariant") {
  const Representation r = su2_irrep(4);
  const Subspace v = Subspace::weight_complement(std::make_shared<const Representation>(r), {1, 3});
  Rng rng = make_rng(23);
  const VectorXcd u = gaussian(rng, 5);
  const OrbitObjective base(r, u, v);
  for (const Complex lambda : {Complex(3.0, 0.0), Complex(-0.25, 1.5), Complex(0.0, -7.0)}) {
    const OrbitObjective scaled(r, lambda * u, v);
    for (int s = 0; s < 20; ++s) {
      const GroupElement g = sample_group_element(GroupSpec::su2(), rng);
      CHECK(std::abs(scaled.value(g.matrix) - base.value(g.matrix)) < 1e-15);
    }
  }
}

TEST_CASE("hyperplane of U_4 is universal") {
  const auto r = share(su2_irrep(4));
  const Subspace v = Subspace::weight_complement(r, {2});
  SearchConfig cfg;
  cfg.samples = 100;
  const Verdict verdict = universality_verdict(*r, v, cfg);
  CHECK(verdict.kind == VerdictKind::Universal);
  CHECK(verdict.max_min_distance < 1e-6);
  CHECK(verdict.samples >= 100);
  CHECK(verdict.evidence == "numerical evidence");
}

TEST_CASE("best-so-far traces never increase") {
  const auto r = share(su2_irrep(3));
  const Subspace v = Subspace::weight_complement(r, {0, 1});
  Rng rng = make_rng(29);
  for (int s = 0; s < 5; ++s) {
    const OrbitSearchResult res = normalized_orbit_distance(*r, gaussian(rng, 4), v, quick(), s);
    REQUIRE(!res.trace.empty());
    for (const auto& t : res.trace)
      for (size_t k = 1; k < t.size(); ++k) CHECK(t[k] <= t[k - 1]);
  }
}

TEST_CASE("Levi factor keeps (e1, e2) at 1/sqrt(2)") {
  const double grid = levi_grid_minimum(40);
  CHECK(std::abs(grid - 1.0 / std::sqrt(2.0)) < 1e-12);

  const auto s = share(block_extension_levi_representation());
  const Subspace v = Subspace::span(s, [] {
    MatrixXcd b = MatrixXcd::Zero(4, 2);
    b(0, 0) = 1.0;
    b(2, 1) = 1.0;
    return b;
  }());
  const VectorXcd u = basis_vector(4, 0) + basis_vector(4, 3);
  SearchConfig cfg;
  const OrbitSearchResult res = normalized_orbit_distance(*s, u, v, cfg);
  CHECK(res.restarts_used == 64);
  CHECK(std::abs(res.min_normalized_distance - grid) < 1e-4);

  // Orbit invariance: a translate of u has the same minimum.
  Rng rng = make_rng(31);
  const GroupElement g0 = sample_group_element(s->group(), rng);
  const OrbitSearchResult moved = normalized_orbit_distance(*s, s->realize(g0) * u, v, cfg);
  CHECK(std::abs(moved.min_normalized_distance - res.min_normalized_distance) < 2 * cfg.tolerance);
}

TEST_CASE("orbit invariance on a universal pair") {
  const auto r = share(su2_irrep(3));
  const Subspace v = Subspace::weight_complement(r, {1});
  Rng rng = make_rng(37);
  SearchConfig cfg;
  for (int s = 0; s < 3; ++s) {
    const VectorXcd u = gaussian(rng, 4);
    const GroupElement g0 = sample_group_element(GroupSpec::su2(), rng);
    const double a = normalized_orbit_distance(*r, u, v, cfg).min_normalized_distance;
    const double b = normalized_orbit_distance(*r, r->realize(g0) * u, v, cfg).min_normalized_distance;
    CHECK(std::abs(a - b) < 2 * cfg.tolerance);
  }
}

TEST_CASE("Borel subalgebra of sl(2,C) is universal") {
  const auto ad = share(complexified_adjoint(GroupSpec::su2()));
  const Subspace b = Subspace::weight_complement(ad, {2});
  const Verdict v = universality_verdict(*ad, b, quick(100));
  CHECK(v.kind == VerdictKind::Universal);
  CHECK(v.max_min_distance < 1e-6);
}

TEST_CASE("b + zero-diagonal is universal under SU(2) x SU(2)") {
  const Representation sl2 = complexified_adjoint(GroupSpec::su2());
  const auto u = share(external_direct_sum({sl2, sl2}));
  // Basis E, H, F on each factor: drop F on the first, H on the second.
  const Subspace v = Subspace::weight_complement(u, {2, 4});
  const Verdict verdict = universality_verdict(*u, v, quick(40));
  CHECK(verdict.kind == VerdictKind::Universal);
}

TEST_CASE("trivial actions only have non-universal proper subspaces") {
  const auto ad = share(adjoint_representation(GroupSpec::torus(2)));
  MatrixXcd line(2, 1);
  line << 1.0, 0.5;
  const Subspace v = Subspace::span(ad, line, false);
  SearchConfig cfg = quick();
  cfg.restarts = kWitnessRestarts;
  const Verdict verdict = universality_verdict(*ad, v, cfg);
  CHECK(verdict.kind == VerdictKind::NotUniversal);
  REQUIRE(verdict.witness.has_value());
  CHECK_FALSE(v.contains(*verdict.witness));
  CHECK(verdict.witness_lower_bound > 0.0);

  // Too few restarts cannot back a negative verdict.
  CHECK(universality_verdict(*ad, v, quick()).kind == VerdictKind::Inconclusive);
}

TEST_CASE("verdicts are independent of the thread count") {
  const auto r = share(su2_irrep(2));
  const Subspace v = Subspace::weight_complement(r, {0, 1});
  SearchConfig one = quick(12);
  one.threads = 1;
  SearchConfig many = one;
  many.threads = 4;
  const Verdict a = universality_verdict(*r, v, one);
  const Verdict b = universality_verdict(*r, v, many);
  CHECK(a.kind == b.kind);
  CHECK(a.per_sample == b.per_sample);
}

TEST_CASE("parallel_for reports the lowest failing index") {
  try {
    parallel_for(10, 3, [](std::size_t k) {
      if (k == 4 || k == 7) fail(ErrorCode::Internal, std::to_string(k));
    });
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find('4') != std::string::npos);
  }
}
