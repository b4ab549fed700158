#include "unisub/obstruction.hpp"

#include "unisub/error.hpp"
#include "unisub/representation.hpp"

#include <sstream>

namespace unisub {

namespace {

long long mod(long long v, long long m) {
  long long r = v % m;
  return r < 0 ? r + m : r;
}

Rational pair(const Weight& mu, const std::vector<Rational>& x) {
  Rational s(0);
  for (size_t j = 0; j < mu.size(); ++j)
    if (mu[j] != 0) s += Rational(mu[j]) * x[j];
  return s;
}

std::vector<Rational> draw_point(int rank, Rng& rng) {
  std::uniform_int_distribution<long long> num(-97, 97);
  std::uniform_int_distribution<long long> den(1, 31);
  std::vector<Rational> x;
  for (int j = 0; j < rank; ++j) x.emplace_back(num(rng), den(rng));
  return x;
}

bool generic(const RootSystem& rs, const std::vector<Rational>& x) {
  for (const auto& a : rs.roots)
    if (pair(a, x).is_zero()) return false;
  return true;
}

Rational weyl_sum(const RootSystem& rs, const WeylGroup& w, const std::vector<Weight>& mu, const std::vector<Rational>& x) {
  Rational total(0);
  for (const auto& g : w.elements) {
    Rational num(1), den(1);
    for (const auto& m : mu) num *= pair(act(g, m), x);
    for (const auto& a : rs.positive_roots) den *= pair(act(g, a), x);
    total += num / den;
  }
  return total;
}

long long weyl_order(const GroupSpec& g) { return static_cast<long long>(weyl_group(build_root_system(g)).order()); }

}  // namespace

CohomologyValue CohomologyValue::integer(long long v) {
  CohomologyValue c;
  c.free_rank = 1;
  c.coordinates = {v};
  return c;
}

CohomologyValue CohomologyValue::torsion(long long v, long long order) {
  require(order >= 2, ErrorCode::InvalidArgument, "torsion order must be at least 2");
  CohomologyValue c;
  c.torsion_orders = {order};
  c.coordinates = {mod(v, order)};
  return c;
}

bool CohomologyValue::is_zero() const {
  for (auto v : coordinates)
    if (v != 0) return false;
  return true;
}

std::string CohomologyValue::group_name() const {
  std::string s;
  for (int k = 0; k < free_rank; ++k) s += (s.empty() ? "" : "+") + std::string("Z");
  for (auto m : torsion_orders) s += (s.empty() ? "" : "+") + std::string("Z/") + std::to_string(m);
  return s.empty() ? "0" : s;
}

std::string CohomologyValue::str() const {
  std::ostringstream os;
  if (coordinates.size() == 1) {
    os << coordinates.front();
  } else {
    os << '(';
    for (size_t k = 0; k < coordinates.size(); ++k) os << (k ? "," : "") << coordinates[k];
    os << ')';
  }
  os << " in " << group_name();
  return os.str();
}

std::string to_string(BaseFactor f) {
  switch (f) {
    case BaseFactor::S2: return "S^2";
    case BaseFactor::RP2: return "RP^2";
    case BaseFactor::FlagA2: return "SU(3)/T";
  }
  return "?";
}

std::string LineBundle::describe() const {
  switch (space) {
    case BaseFactor::S2: return "line bundle on S^2 with c1 = " + std::to_string(c1);
    case BaseFactor::RP2: return tautological ? "complexified tautological bundle on RP^2" : "trivial line bundle on RP^2";
    case BaseFactor::FlagA2: return "bundle on SU(3)/T";
  }
  return "?";
}

SubgroupDescriptor maximal_torus_subgroup(const GroupSpec& g) { return {"T", weight_rank(g), 1, 1}; }

SubgroupDescriptor torus_normalizer_subgroup(const GroupSpec& g) { return {"N(T)", weight_rank(g), 1, weyl_order(g)}; }

SubgroupDescriptor whole_group_subgroup(const GroupSpec& g) { return {"G", weight_rank(g), weyl_order(g), 1}; }

SubgroupDescriptor subgroup_by_name(const GroupSpec& g, const std::string& name) {
  if (name == "T") return maximal_torus_subgroup(g);
  if (name == "N(T)") return torus_normalizer_subgroup(g);
  if (name == "G") return whole_group_subgroup(g);
  if (g.kind() == GroupKind::SU3) {
    if (name == "U(2)") return {name, 2, 2, 1};
    if (name == "SU(2)") return {name, 1, 2, 1};
    if (name == "SO(3)") return {name, 1, 2, 1};
  }
  if (g == GroupSpec::product({GroupSpec::su2(), GroupSpec::su2()})) {
    if (name == "diag") return {name, 1, 2, 1};
    if (name == "SU(2)xT") return {name, 2, 2, 1};
    if (name == "SU(2)x1") return {name, 1, 2, 1};
    if (name == "Tx1") return {name, 1, 1, 1};
  }
  fail(ErrorCode::InvalidArgument, "unknown subgroup '" + name + "' of " + g.label());
}

EulerCharacteristic euler_characteristic_quotient(const GroupSpec& g, const SubgroupDescriptor& h) {
  require(h.identity_weyl_order >= 1 && h.component_count >= 1, ErrorCode::InvalidArgument,
          "subgroup descriptor needs positive orders");
  const int rank = weight_rank(g);
  if (h.rank < rank) return {0, EulerStatus::NotMaximalRank};
  require(h.rank == rank, ErrorCode::InvalidArgument, "subgroup rank exceeds the rank of " + g.label());
  const long long wg = weyl_order(g);
  const long long denom = h.identity_weyl_order * h.component_count;
  require(wg % denom == 0, ErrorCode::InvalidArgument,
          "subgroup Weyl data does not divide |W| for " + g.label() + "/" + h.name);
  return {wg / denom, EulerStatus::Ok};
}

LocalizationResult localization(const RootSystem& rs, const std::vector<Weight>& quotient_weights, std::uint64_t seed) {
  require(quotient_weights.size() == rs.positive_roots.size(), ErrorCode::RankMismatch,
          "dimension condition violated: " + std::to_string(quotient_weights.size()) +
              " quotient weights but dim_C G/T = " + std::to_string(rs.positive_roots.size()));
  for (const auto& m : quotient_weights)
    require(static_cast<int>(m.size()) == rs.rank, ErrorCode::InvalidArgument, "weight has the wrong length");
  const WeylGroup w = weyl_group(rs);
  Rng rng = make_rng(seed, 0x10ca1);
  LocalizationResult out;
  std::vector<Rational> values;
  constexpr int kPoints = 2;
  constexpr int kAttempts = 8;
  for (int p = 0; p < kPoints; ++p) {
    std::vector<Rational> x;
    bool found = false;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      x = draw_point(rs.rank, rng);
      if (generic(rs, x)) {
        found = true;
        break;
      }
      ++out.redraws;
    }
    require(found, ErrorCode::GenericityFailure, "no generic evaluation point after bounded redraws");
    values.push_back(weyl_sum(rs, w, quotient_weights, x));
  }
  for (const auto& v : values) {
    require(v == values.front(), ErrorCode::Internal, "localization sum depends on the evaluation point");
    require(v.is_integer(), ErrorCode::Internal, "localization sum " + v.str() + " is not an integer");
  }
  out.value = values.front().to_integer();
  out.magnitude = out.value < 0 ? -out.value : out.value;
  return out;
}

long long localization_number(const RootSystem& rs, const std::vector<Weight>& quotient_weights, std::uint64_t seed) {
  return localization(rs, quotient_weights, seed).value;
}

CohomologyValue kunneth_top_chern(const std::vector<LineBundle>& factors) {
  require(!factors.empty(), ErrorCode::InvalidArgument, "empty product of base factors");
  bool torsion = false;
  long long product = 1;
  for (const auto& f : factors) {
    switch (f.space) {
      case BaseFactor::S2: product *= f.c1; break;
      case BaseFactor::RP2:
        torsion = true;
        product *= f.tautological ? 1 : 0;
        break;
      default: fail(ErrorCode::UnsupportedFactor, "no cohomology rules for " + to_string(f.space));
    }
    if (torsion) product = mod(product, 2);
  }
  return torsion ? CohomologyValue::torsion(product, 2) : CohomologyValue::integer(product);
}

ObstructionReport product_obstruction(const std::vector<LineBundle>& factors) {
  ObstructionReport r;
  for (const auto& f : factors) r.base_space += (r.base_space.empty() ? "" : " x ") + to_string(f.space);
  r.bundle = factors;
  r.class_value = kunneth_top_chern(factors);
  r.vanishes = r.class_value.is_zero();
  return r;
}

ObstructionReport su2_obstruction_report(int n, int i) {
  require(n >= 1, ErrorCode::IndexOutOfRange, "n must be at least 1");
  require(i >= 0 && i <= n, ErrorCode::IndexOutOfRange, "i must lie in [0, n]");
  ObstructionReport r;
  if (2 * i != n) {
    const long long c = localization_number(build_root_system(GroupSpec::su2()), {Weight{2 * i - n}});
    r.base_space = "S^2";
    r.bundle = {LineBundle::sphere(c)};
    r.class_value = CohomologyValue::integer(c);
    r.note = "G_V = T";
  } else {
    // G_V = N(T); the bundle over RP^2 is determined by how the Weyl element acts on the line W.
    const MatrixXg w = su2_weyl_element_exact();
    const MatrixXg rho = su2_polynomial_matrix<GaussRational>(n, w(0, 0), w(0, 1), w(1, 0), w(1, 1));
    const bool flips = rho(i, i) == GaussRational(-1);
    r.base_space = "RP^2";
    r.bundle = {LineBundle::projective_plane(flips)};
    r.class_value = CohomologyValue::torsion(flips ? 1 : 0, 2);
    r.note = flips ? "G_V = N(T); the Weyl element acts by -1 on W; mod-2 witness w1^2 != 0"
                   : "G_V = N(T); the Weyl element acts trivially on W; bundle descends to the trivial line bundle";
  }
  r.vanishes = r.class_value.is_zero();
  return r;
}

}  // namespace unisub
