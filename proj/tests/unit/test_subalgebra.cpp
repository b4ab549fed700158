#include "unisub/error.hpp"
#include "unisub/subalgebra.hpp"

#include <doctest.h>

#include <algorithm>

using namespace unisub;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;

namespace {

const GroupSpec kSU2 = GroupSpec::su2();
const GroupSpec kSU3 = GroupSpec::su3();
const GroupSpec kSU2xSU2 = GroupSpec::product({GroupSpec::su2(), GroupSpec::su2()});

const CatalogEntry& entry(const std::vector<CatalogEntry>& cat, const std::string& name) {
  const auto it = std::find_if(cat.begin(), cat.end(), [&](const CatalogEntry& e) { return e.algebra.name() == name; });
  REQUIRE(it != cat.end());
  return *it;
}

// dim {X in g : [X, h] in h} by a direct solve in the coordinates of g.
int normalizer_dimension_oracle(const GroupSpec& g, const std::vector<MatrixXcd>& h) {
  const auto gb = real_algebra_basis(g);
  const int n = static_cast<int>(gb.size());
  MatrixXd hc(n, static_cast<int>(h.size()));
  for (size_t j = 0; j < h.size(); ++j) hc.col(static_cast<Eigen::Index>(j)) = algebra_coordinates(g, h[j]);
  // Projection onto the orthogonal complement of h in coordinate space.
  const MatrixXd q = hc.householderQr().householderQ() * MatrixXd::Identity(n, hc.cols());
  const MatrixXd perp = MatrixXd::Identity(n, n) - q * q.transpose();
  MatrixXd sys(n * static_cast<int>(h.size()), n);
  for (size_t j = 0; j < h.size(); ++j)
    for (int k = 0; k < n; ++k)
      sys.block(static_cast<Eigen::Index>(j) * n, k, n, 1) = perp * algebra_coordinates(g, bracket(gb[k], h[j]));
  return n - static_cast<int>(numerical_rank(sys, 1e-9));
}

bool spans_contain(const std::vector<MatrixXcd>& big, const std::vector<MatrixXcd>& small) {
  const Eigen::Index rows = big[0].size();
  auto flatten = [&](const std::vector<MatrixXcd>& ms) {
    MatrixXcd out(rows, static_cast<Eigen::Index>(ms.size()));
    for (size_t k = 0; k < ms.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = ms[k].reshaped();
    return out;
  };
  const MatrixXcd b = flatten(big);
  MatrixXcd both(rows, b.cols() + static_cast<Eigen::Index>(small.size()));
  both << b, flatten(small);
  // Real spans: compare ranks of the realified columns.
  MatrixXd rb(2 * rows, b.cols()), rboth(2 * rows, both.cols());
  for (Eigen::Index k = 0; k < b.cols(); ++k) rb.col(k) = realify(MatrixXcd(b.col(k)));
  for (Eigen::Index k = 0; k < both.cols(); ++k) rboth.col(k) = realify(MatrixXcd(both.col(k)));
  return numerical_rank(rb, 1e-9) == numerical_rank(rboth, 1e-9);
}

}  // namespace

TEST_CASE("normalizers") {
  const auto su2cat = compact_subalgebra_catalog(kSU2);
  const SubalgebraSpec& t = entry(su2cat, "t").algebra;
  const SubalgebraSpec nt = normalizer_subalgebra(t);
  CHECK(nt.real_dimension() == 1);
  CHECK(normalizer_dimension_oracle(kSU2, t.real_basis()) == 1);

  const SubalgebraSpec line = irrational_torus_line();
  CHECK(normalizer_subalgebra(line).real_dimension() == 2);

  const SubalgebraSpec b = borel_sl2();
  CHECK(b.real_dimension() == 4);
  const SubalgebraSpec nb = normalizer_subalgebra(b);
  CHECK(nb.real_dimension() == 4);
  CHECK(spans_contain(nb.real_basis(), b.real_basis()));
}

TEST_CASE("normalizer agrees with the direct solve on the catalog") {
  for (const auto& e : compact_subalgebra_catalog()) {
    CAPTURE(e.algebra.name());
    const GroupSpec& g = e.algebra.ambient();
    const SubalgebraSpec n = normalizer_subalgebra(e.algebra);
    CHECK(n.real_dimension() == normalizer_dimension_oracle(g, e.algebra.real_basis()));
    CHECK(spans_contain(n.real_basis(), e.algebra.real_basis()));
    CHECK(n.bracket_residual() < 1e-10);
    CHECK(e.algebra.bracket_residual() < 1e-10);

    // Floating and exact modes agree.
    const SubalgebraSpec floating = SubalgebraSpec::from_basis(g, e.algebra.real_basis());
    const SubalgebraSpec nf = normalizer_subalgebra(real_algebra_basis(g), floating);
    CHECK(nf.real_dimension() == n.real_dimension());
    CHECK(n.exact_basis().has_value());
  }
}

TEST_CASE("ranks of compact subalgebras") {
  const auto su2cat = compact_subalgebra_catalog(kSU2);
  CHECK(rank_of_compact_subalgebra(entry(su2cat, "su(2)").algebra) == 1);
  CHECK(rank_of_compact_subalgebra(entry(su2cat, "t").algebra) == 1);

  const auto pair = compact_subalgebra_catalog(kSU2xSU2);
  CHECK(rank_of_compact_subalgebra(entry(pair, "diag su(2)").algebra) == 1);
  CHECK(rank_of_compact_subalgebra(entry(pair, "su(2)+su(2)").algebra) == 2);

  const auto su3cat = compact_subalgebra_catalog(kSU3);
  CHECK(rank_of_compact_subalgebra(entry(su3cat, "u(2)").algebra) == 2);
  CHECK(rank_of_compact_subalgebra(entry(su3cat, "su(3)").algebra) == 2);
  CHECK(rank_of_compact_subalgebra(entry(su3cat, "so(3)").algebra) == 1);

  CHECK(is_maximal_rank(kSU2, entry(su2cat, "t").algebra));
  CHECK_FALSE(is_maximal_rank(kSU2xSU2, entry(pair, "diag su(2)").algebra));
  CHECK(is_maximal_rank(kSU3, entry(su3cat, "u(2)").algebra));
  CHECK_FALSE(is_maximal_rank(kSU3, entry(su3cat, "su(2)").algebra));

  for (std::uint64_t seed : {1u, 2u, 3u})
    CHECK(rank_of_compact_subalgebra(entry(su3cat, "u(2)").algebra, seed) == 2);
}

TEST_CASE("maximal rank matches a positive Euler characteristic") {
  for (const auto& e : compact_subalgebra_catalog()) {
    CAPTURE(e.algebra.name());
    const GroupSpec& g = e.algebra.ambient();
    const EulerCharacteristic chi = euler_characteristic_quotient(g, e.subgroup);
    CHECK(is_maximal_rank(g, e.algebra) == (chi.value > 0));
  }
}

TEST_CASE("Borel containment for root subsets") {
  const RootSystem a1 = build_root_system(kSU2);
  CHECK(contains_positive_system(a1, {{2}}));
  CHECK(contains_positive_system(a1, {{-2}}));
  CHECK_FALSE(contains_positive_system(a1, {}));

  const RootSystem a2 = build_root_system(kSU3);
  const Weight a = {2, -1}, b = {-1, 2}, ab = {1, 1};
  CHECK_FALSE(contains_positive_system(a2, {a, negate(a)}));
  CHECK(contains_positive_system(a2, {a, b, ab, negate(a)}));
  CHECK(contains_positive_system(a2, {negate(a), negate(b), negate(ab)}));
  CHECK_FALSE(contains_positive_system(a2, {a, ab}));
  // s1 applied to the standard system: {-a, a+b, b}.
  CHECK(contains_positive_system(a2, {negate(a), ab, b}));

  try {
    (void)contains_positive_system(a2, {{1, 0}});
    FAIL("expected InvalidRoots");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::InvalidRoots);
  }

  CHECK(sl3_root_subsets().size() >= 6);
}

TEST_CASE("closedness criterion") {
  const auto su2cat = compact_subalgebra_catalog(kSU2);
  CHECK(closedness_criterion(kSU2, entry(su2cat, "t").algebra));
  CHECK_FALSE(closedness_criterion(GroupSpec::torus(2), irrational_torus_line()));
  CHECK(closedness_criterion(GroupSpec::complexified(kSU2), borel_sl2()));
  CHECK_FALSE(closedness_criterion(kSU2xSU2, entry(compact_subalgebra_catalog(kSU2xSU2), "t+0").algebra));
}

TEST_CASE("subalgebra construction checks") {
  MatrixXcd x = MatrixXcd::Zero(2, 2);
  x(0, 1) = 1.0;
  MatrixXcd y = MatrixXcd::Zero(2, 2);
  y(1, 0) = 1.0;
  // E and F alone do not close: [E, F] = H.
  CHECK_THROWS_AS(SubalgebraSpec::from_basis(GroupSpec::complexified(kSU2), {x, y}, true), Error);
  CHECK_THROWS_AS(SubalgebraSpec::from_basis(GroupSpec::complexified(kSU2), {x, 2.0 * x}, true), Error);

  const auto coords = algebra_coordinates(kSU2, real_algebra_basis(kSU2)[1]);
  CHECK(coords.size() == 3);
  CHECK(std::abs(coords(1) - 1.0) < 1e-12);
  CHECK(std::abs(coords(0)) + std::abs(coords(2)) < 1e-12);
  CHECK_THROWS_AS(algebra_coordinates(kSU2, MatrixXcd::Identity(2, 2)), Error);
}
