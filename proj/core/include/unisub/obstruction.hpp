#pragma once

// Topological side: Euler characteristics of G/H, the localization number
// over G/T, and top Chern classes over products of S^2 and RP^2.

#include "unisub/lie_group.hpp"
#include "unisub/random.hpp"
#include "unisub/root_system.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace unisub {

/// Element of Z^r + Z/m_1 + ... + Z/m_s.
struct CohomologyValue {
  int free_rank = 0;
  std::vector<long long> torsion_orders;
  std::vector<long long> coordinates;  // torsion coordinates reduced to [0, m)

  static CohomologyValue integer(long long v);
  static CohomologyValue torsion(long long v, long long order);

  [[nodiscard]] bool is_zero() const;
  /// "Z", "Z/2", "Z+Z/2", ...
  [[nodiscard]] std::string group_name() const;
  /// "-3 in Z", "0 in Z/2", ...
  [[nodiscard]] std::string str() const;
  friend bool operator==(const CohomologyValue& a, const CohomologyValue& b) = default;
};

enum class BaseFactor { S2, RP2, FlagA2 };

std::string to_string(BaseFactor f);

struct LineBundle {
  BaseFactor space = BaseFactor::S2;
  long long c1 = 0;           // S^2: degree of the first Chern class
  bool tautological = false;  // RP^2: complexified tautological (true) or trivial (false)

  static LineBundle sphere(long long c1) { return {BaseFactor::S2, c1, false}; }
  static LineBundle projective_plane(bool tautological) { return {BaseFactor::RP2, 0, tautological}; }
  [[nodiscard]] std::string describe() const;
};

struct ObstructionReport {
  std::string base_space;
  std::vector<LineBundle> bundle;
  CohomologyValue class_value;
  bool vanishes = false;
  std::string note;
};

/// Closed subgroup H of maximal rank or not, described by its rank, the order
/// of the Weyl group of its identity component, and its number of components.
struct SubgroupDescriptor {
  std::string name;
  int rank = 0;
  long long identity_weyl_order = 1;
  long long component_count = 1;
};

SubgroupDescriptor maximal_torus_subgroup(const GroupSpec& g);
SubgroupDescriptor torus_normalizer_subgroup(const GroupSpec& g);
SubgroupDescriptor whole_group_subgroup(const GroupSpec& g);
/// Named catalog lookup: "T", "N(T)", "G", and for SU(3) "U(2)", "SU(2)", "SO(3)";
/// for SU(2)xSU(2) "diag", "SU(2)xT", "SU(2)x1", "Tx1".
SubgroupDescriptor subgroup_by_name(const GroupSpec& g, const std::string& name);

enum class EulerStatus { Ok, NotMaximalRank };

struct EulerCharacteristic {
  long long value = 0;
  EulerStatus status = EulerStatus::Ok;
};

EulerCharacteristic euler_characteristic_quotient(const GroupSpec& g, const SubgroupDescriptor& h);

struct LocalizationResult {
  long long value = 0;  // sign fixed by the standard positive system
  long long magnitude = 0;
  int redraws = 0;
};

/// Sum over W of prod_j (w mu_j)(X) / prod_{a>0} (w a)(X) at generic rational X,
/// evaluated exactly at two independent points.
LocalizationResult localization(const RootSystem& rs, const std::vector<Weight>& quotient_weights,
                                std::uint64_t seed = kDefaultSeed);
long long localization_number(const RootSystem& rs, const std::vector<Weight>& quotient_weights,
                              std::uint64_t seed = kDefaultSeed);

/// Cross product of the first Chern classes in the top cohomology of the product base.
CohomologyValue kunneth_top_chern(const std::vector<LineBundle>& factors);

ObstructionReport product_obstruction(const std::vector<LineBundle>& factors);
ObstructionReport su2_obstruction_report(int n, int i);

}  // namespace unisub
