#include "unisub/error.hpp"
#include "unisub/obstruction.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace unisub;

namespace {

const GroupSpec kSU2 = GroupSpec::su2();
const GroupSpec kSU3 = GroupSpec::su3();
const GroupSpec kSU2xSU2 = GroupSpec::product({GroupSpec::su2(), GroupSpec::su2()});

std::vector<Weight> negative_roots(const RootSystem& rs) {
  std::vector<Weight> out;
  for (const auto& a : rs.positive_roots) out.push_back(negate(a));
  return out;
}

// Euler characteristics from explicit cell or simplex counts.
long long chi_from_counts(std::initializer_list<long long> counts) {
  long long chi = 0, sign = 1;
  for (long long c : counts) {
    chi += sign * c;
    sign = -sign;
  }
  return chi;
}

}  // namespace

TEST_CASE("Euler characteristics of quotients") {
  // S^2 as the boundary of a tetrahedron, RP^2 by its six-vertex triangulation,
  // the full flag of C^3 by its six Bruhat cells in dimensions 0, 2, 2, 4, 4, 6.
  const long long chi_s2 = chi_from_counts({4, 6, 4});
  const long long chi_rp2 = chi_from_counts({6, 15, 10});
  const long long chi_flag = chi_from_counts({1, 0, 2, 0, 2, 0, 1});

  CHECK(euler_characteristic_quotient(kSU2, subgroup_by_name(kSU2, "T")).value == chi_s2);
  CHECK(euler_characteristic_quotient(kSU2, subgroup_by_name(kSU2, "N(T)")).value == chi_rp2);
  CHECK(euler_characteristic_quotient(kSU3, subgroup_by_name(kSU3, "T")).value == chi_flag);
  CHECK(euler_characteristic_quotient(kSU3, subgroup_by_name(kSU3, "G")).value == 1);
  // SU(3)/U(2) is CP^2: cells in dimensions 0, 2, 4.
  CHECK(euler_characteristic_quotient(kSU3, subgroup_by_name(kSU3, "U(2)")).value == chi_from_counts({1, 0, 1, 0, 1}));
  CHECK(euler_characteristic_quotient(kSU2xSU2, subgroup_by_name(kSU2xSU2, "T")).value == chi_s2 * chi_s2);
  CHECK(euler_characteristic_quotient(kSU2xSU2, subgroup_by_name(kSU2xSU2, "SU(2)xT")).value == chi_s2);

  const EulerCharacteristic so3 = euler_characteristic_quotient(kSU3, subgroup_by_name(kSU3, "SO(3)"));
  CHECK(so3.status == EulerStatus::NotMaximalRank);
  CHECK(so3.value == 0);
  CHECK(euler_characteristic_quotient(kSU2xSU2, subgroup_by_name(kSU2xSU2, "diag")).status ==
        EulerStatus::NotMaximalRank);

  CHECK_THROWS_AS(subgroup_by_name(kSU2, "U(2)"), Error);
}

TEST_CASE("localization on A1 is the weight itself") {
  const RootSystem a1 = build_root_system(kSU2);
  for (int k = -20; k <= 20; ++k) {
    CAPTURE(k);
    CHECK(localization_number(a1, {{k}}) == k);
  }
  const LocalizationResult tangent = localization(a1, {{-2}});
  CHECK(tangent.magnitude == 2);
  CHECK(std::llabs(tangent.value) == 2);
}

TEST_CASE("localization is independent of the evaluation point") {
  const RootSystem a2 = build_root_system(kSU3);
  const std::vector<std::vector<Weight>> multisets{negative_roots(a2), {{2, -1}, {-1, 2}, {1, 1}},
                                                   {{0, 0}, {-1, -1}, {-2, 1}}, {{1, 0}, {1, 0}, {-1, 1}}};
  for (const auto& mu : multisets) {
    const long long first = localization_number(a2, mu, 1);
    for (std::uint64_t seed = 2; seed <= 5; ++seed) CHECK(localization_number(a2, mu, seed) == first);
  }
}

TEST_CASE("localization of tangent weights matches chi on maximal-rank pairs") {
  for (const GroupSpec& g : {kSU2, kSU3, kSU2xSU2}) {
    const RootSystem rs = build_root_system(g);
    const EulerCharacteristic chi = euler_characteristic_quotient(g, maximal_torus_subgroup(g));
    CHECK(chi.value > 0);
    CHECK(localization(rs, negative_roots(rs)).magnitude == chi.value);
  }
  const RootSystem a2 = build_root_system(kSU3);
  CHECK(std::llabs(localization_number(a2, negative_roots(a2))) == 6);
  for (const GroupSpec& g : {kSU2, kSU3, kSU2xSU2})
    for (const char* name : {"T", "N(T)", "G"}) CHECK(euler_characteristic_quotient(g, subgroup_by_name(g, name)).value > 0);
}

TEST_CASE("localization rejects a rank mismatch") {
  const RootSystem a2 = build_root_system(kSU3);
  try {
    (void)localization_number(a2, {{1, 0}});
    FAIL("expected RankMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankMismatch);
  }
}

TEST_CASE("Kunneth top classes") {
  const CohomologyValue c = kunneth_top_chern({LineBundle::sphere(2), LineBundle::projective_plane(true)});
  CHECK(c.is_zero());
  CHECK(c.group_name() == "Z/2");
  CHECK(kunneth_top_chern({LineBundle::sphere(1), LineBundle::projective_plane(true)}) == CohomologyValue::torsion(1, 2));
  CHECK(kunneth_top_chern({LineBundle::sphere(1), LineBundle::sphere(1)}) == CohomologyValue::integer(1));
  CHECK(kunneth_top_chern({LineBundle::sphere(3), LineBundle::sphere(-2)}) == CohomologyValue::integer(-6));

  for (long long d = -10; d <= 10; ++d)
    for (bool taut : {false, true}) {
      CAPTURE(d);
      CAPTURE(taut);
      const CohomologyValue v = kunneth_top_chern({LineBundle::sphere(d), LineBundle::projective_plane(taut)});
      const bool generator = taut && (d % 2 != 0);
      CHECK(v == CohomologyValue::torsion(generator ? 1 : 0, 2));
      CHECK(v.is_zero() == !generator);
    }

  try {
    (void)kunneth_top_chern({LineBundle{BaseFactor::FlagA2, 0, false}});
    FAIL("expected UnsupportedFactor");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedFactor);
  }
}

TEST_CASE("cohomology values") {
  CHECK(CohomologyValue::torsion(5, 2).coordinates == std::vector<long long>{1});
  CHECK(CohomologyValue::torsion(-1, 2).coordinates == std::vector<long long>{1});
  CHECK(CohomologyValue::integer(-3).str() == "-3 in Z");
  CHECK(CohomologyValue::torsion(0, 2).str() == "0 in Z/2");
}

TEST_CASE("SU(2) obstruction reports") {
  const ObstructionReport r42 = su2_obstruction_report(4, 2);
  CHECK(r42.vanishes);
  REQUIRE(r42.bundle.size() == 1);
  CHECK(r42.bundle[0].space == BaseFactor::RP2);
  CHECK_FALSE(r42.bundle[0].tautological);

  const ObstructionReport r21 = su2_obstruction_report(2, 1);
  CHECK_FALSE(r21.vanishes);
  CHECK(r21.class_value == CohomologyValue::torsion(1, 2));

  const ObstructionReport r31 = su2_obstruction_report(3, 1);
  CHECK_FALSE(r31.vanishes);
  CHECK(r31.class_value == CohomologyValue::integer(-1));
  CHECK(r31.bundle[0].space == BaseFactor::S2);

  CHECK_THROWS_AS(su2_obstruction_report(3, 4), Error);
  CHECK_THROWS_AS(su2_obstruction_report(0, 0), Error);
}

TEST_CASE("vanishing scan up to n = 20") {
  for (int n = 1; n <= 20; ++n)
    for (int i = 0; i <= n; ++i) {
      CAPTURE(n);
      CAPTURE(i);
      const ObstructionReport r = su2_obstruction_report(n, i);
      CHECK(r.vanishes == (n % 4 == 0 && 2 * i == n));
      CHECK(r.vanishes == r.class_value.is_zero());
      if (2 * i != n) CHECK(r.class_value == CohomologyValue::integer(2 * i - n));
    }
}

TEST_CASE("product obstruction marks vanishing") {
  const ObstructionReport r = product_obstruction({LineBundle::sphere(-2), LineBundle::projective_plane(true)});
  CHECK(r.vanishes);
  CHECK(r.class_value.is_zero());
  CHECK(r.bundle.size() == 2);
}
