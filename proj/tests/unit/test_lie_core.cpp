#include "unisub/error.hpp"
#include "unisub/lie_group.hpp"
#include "unisub/root_system.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

using namespace unisub;
using Eigen::MatrixXcd;

namespace {

const Complex I1{0.0, 1.0};

MatrixXcd m2(Complex a, Complex b, Complex c, Complex d) {
  MatrixXcd m(2, 2);
  m << a, b, c, d;
  return m;
}

GroupSpec a1_power(int k) {
  std::vector<GroupSpec> f(static_cast<size_t>(k), GroupSpec::su2());
  return k == 1 ? GroupSpec::su2() : GroupSpec::product(f);
}

}  // namespace

TEST_CASE("root systems of the catalog") {
  const RootSystem a1 = build_root_system(GroupSpec::su2());
  CHECK(a1.rank == 1);
  CHECK(a1.roots.size() == 2);
  CHECK(a1.positive_roots.size() == 1);
  CHECK(a1.positive_roots[0] == Weight{2});

  const RootSystem a2 = build_root_system(GroupSpec::su3());
  CHECK(a2.rank == 2);
  CHECK(a2.roots.size() == 6);
  CHECK(a2.positive_roots.size() == 3);

  const RootSystem a1a1 = build_root_system(a1_power(2));
  CHECK(a1a1.rank == 2);
  CHECK(a1a1.roots.size() == 4);
  CHECK(a1a1.positive_roots.size() == 2);

  CHECK_THROWS_AS(build_root_system(GroupSpec::upper_triangular(3)), Error);
}

TEST_CASE("A2 roots from two simple roots closed under reflection") {
  // Independent construction: simple roots in Dynkin labels are the rows of the
  // Cartan matrix; s_i(l) = l - l_i * alpha_i.
  const std::vector<Weight> simple{{2, -1}, {-1, 2}};
  std::set<Weight> closure(simple.begin(), simple.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Weight> current(closure.begin(), closure.end());
    for (const auto& l : current)
      for (size_t i = 0; i < 2; ++i) {
        Weight r{l[0] - l[i] * simple[i][0], l[1] - l[i] * simple[i][1]};
        grew = closure.insert(r).second || grew;
      }
  }
  const RootSystem a2 = build_root_system(GroupSpec::su3());
  CHECK(std::set<Weight>(a2.roots.begin(), a2.roots.end()) == closure);
}

TEST_CASE("Weyl group orders") {
  for (int k = 1; k <= 4; ++k) {
    CAPTURE(k);
    CHECK(weyl_group(build_root_system(a1_power(k))).order() == (1u << k));
  }

  // W(A2) acts on the three weights of the defining representation of SU(3)
  // as the full symmetric group; count permutations of three letters.
  std::vector<int> letters{0, 1, 2};
  size_t perms = 0;
  do ++perms;
  while (std::next_permutation(letters.begin(), letters.end()));
  const RootSystem a2 = build_root_system(GroupSpec::su3());
  const WeylGroup w = weyl_group(a2);
  CHECK(w.order() == perms);

  const std::vector<Weight> defining{{1, 0}, {-1, 1}, {0, -1}};
  std::set<std::vector<int>> images;
  for (const auto& e : w.elements) {
    std::vector<int> p;
    for (const auto& l : defining) {
      const Weight img = act(e, l);
      const auto it = std::find(defining.begin(), defining.end(), img);
      REQUIRE(it != defining.end());
      p.push_back(static_cast<int>(it - defining.begin()));
    }
    images.insert(p);
  }
  CHECK(images.size() == perms);
}

TEST_CASE("every Weyl element permutes the roots") {
  for (const GroupSpec& g : {GroupSpec::su2(), GroupSpec::su3(), a1_power(2), a1_power(3)}) {
    const RootSystem rs = build_root_system(g);
    const std::set<Weight> roots(rs.roots.begin(), rs.roots.end());
    for (const auto& w : weyl_group(rs).elements) {
      std::set<Weight> image;
      for (const auto& r : rs.roots) image.insert(act(w, r));
      CHECK(image == roots);
    }
  }
}

TEST_CASE("sampling invariants") {
  Rng rng = make_rng(7);
  for (int s = 0; s < 10000; ++s) {
    const GroupElement g = sample_group_element(GroupSpec::su2(), rng);
    const MatrixXcd& m = g.matrix;
    REQUIRE((m.adjoint() * m - MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE(std::abs(m.determinant() - 1.0) < 1e-12);
  }
  for (int s = 0; s < 1000; ++s) {
    const GroupElement g = sample_group_element(GroupSpec::su3(), rng);
    REQUIRE((g.matrix.adjoint() * g.matrix - MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE(std::abs(g.matrix.determinant() - 1.0) < 1e-12);
  }
  for (int s = 0; s < 100; ++s) {
    const GroupElement t = sample_group_element(GroupSpec::torus(2), rng);
    CHECK(t.matrix.rows() == 2);
    CHECK(std::abs(t.matrix(0, 1)) == 0.0);
    CHECK(std::abs(t.matrix(1, 0)) == 0.0);
    CHECK(std::abs(std::abs(t.matrix(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(t.matrix(1, 1)) - 1.0) < 1e-12);
  }
  const GroupSpec pair = a1_power(2);
  for (int s = 0; s < 100; ++s) {
    const GroupElement g = sample_group_element(pair, rng);
    CHECK(g.matrix.block(0, 2, 2, 2).cwiseAbs().maxCoeff() == 0.0);
    CHECK(g.matrix.block(2, 0, 2, 2).cwiseAbs().maxCoeff() == 0.0);
    for (size_t k = 0; k < 2; ++k) CHECK(factor_component(g, k).is_valid());
  }
  const GroupSpec ut = GroupSpec::upper_triangular(3);
  const SearchBox box{0.5, 1.5};
  for (int s = 0; s < 100; ++s) {
    const GroupElement g = sample_group_element(ut, rng, box);
    CHECK(g.is_valid());
    CHECK(within_box(g, box));
    for (int j = 0; j < 3; ++j) CHECK(std::abs(g.matrix(j, j)) >= std::exp(-0.5) - 1e-12);
  }
}

TEST_CASE("adjoint action") {
  const GroupSpec su2 = GroupSpec::su2();
  const AlgebraElement e{m2(0, 1, 0, 0), su2, false};
  const AlgebraElement h{m2(I1, 0, 0, -I1), su2, true};

  CHECK((adjoint_action(identity_element(su2), h).matrix - h.matrix).norm() == 0.0);

  const Complex t = std::polar(1.0, 0.37);
  const MatrixXcd te = adjoint_action(su2_torus_element(t), e).matrix;
  // diag(t, conj t) E diag(conj t, t) = t^2 E entrywise.
  CHECK((te - t * t * e.matrix).cwiseAbs().maxCoeff() < 1e-14);

  const MatrixXcd wh = adjoint_action(su2_weyl_element(), h).matrix;
  CHECK((wh + h.matrix).cwiseAbs().maxCoeff() < 1e-14);

  const AlgebraElement foreign{MatrixXcd::Zero(3, 3), GroupSpec::su3(), true};
  CHECK_THROWS_AS(adjoint_action(identity_element(su2), foreign), Error);

  Rng rng = make_rng(11);
  const AlgebraElement x{m2(Complex(0, 0.3), Complex(0.2, -0.7), Complex(-0.2, -0.7), Complex(0, -0.3)), su2, true};
  for (int s = 0; s < 100; ++s) {
    const GroupElement g = sample_group_element(su2, rng);
    const GroupElement k = sample_group_element(su2, rng);
    const GroupElement gk{g.matrix * k.matrix, su2};
    const MatrixXcd lhs = adjoint_action(gk, x).matrix;
    const MatrixXcd rhs = adjoint_action(g, adjoint_action(k, x)).matrix;
    REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
    REQUIRE(adjoint_action(g, x).is_valid(1e-10));
  }
}

TEST_CASE("exponential map") {
  const GroupSpec su2 = GroupSpec::su2();
  CHECK((exp_map({MatrixXcd::Zero(2, 2), su2, true}).matrix - MatrixXcd::Identity(2, 2)).norm() < 1e-15);

  const double theta = 0.9;
  const MatrixXcd d = exp_map({m2(I1 * theta, 0, 0, -I1 * theta), su2, true}).matrix;
  CHECK(std::abs(d(0, 0) - std::polar(1.0, theta)) < 1e-14);
  CHECK(std::abs(d(1, 1) - std::polar(1.0, -theta)) < 1e-14);
  CHECK(std::abs(d(0, 1)) < 1e-15);

  // Rotation generator J; exp((pi/2) J) = [[cos, -sin], [sin, cos]] at pi/2.
  const MatrixXcd j = m2(0, -1, 1, 0);
  const GroupElement w = exp_map({(std::numbers::pi / 2) * j, su2, true});
  CHECK(w.is_valid(1e-12));
  CHECK((w.matrix - m2(0, -1, 1, 0)).cwiseAbs().maxCoeff() < 1e-14);
  // w normalizes T without lying in it.
  const Complex t = std::polar(1.0, 0.4);
  const MatrixXcd conj = w.matrix * su2_torus_element(t).matrix * w.matrix.adjoint();
  CHECK(std::abs(conj(0, 1)) < 1e-14);
  CHECK(std::abs(conj(0, 0) - std::conj(t)) < 1e-14);
  CHECK(std::abs(w.matrix(0, 0)) < 1e-14);
}

TEST_CASE("exact Weyl and torus elements") {
  const MatrixXg w = su2_weyl_element_exact();
  CHECK(w(0, 1) == GaussRational(-1));
  CHECK(w(1, 0) == GaussRational(1));
  const MatrixXg t = su2_torus_element_exact(Rational(1, 2));
  // ((1 - 1/4) + i) / (5/4) = 3/5 + 4/5 i.
  CHECK(t(0, 0) == GaussRational(Rational(3, 5), Rational(4, 5)));
  CHECK(t(1, 1) == GaussRational(Rational(3, 5), Rational(-4, 5)));
}
