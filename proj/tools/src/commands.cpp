#include "unisub/cli/commands.hpp"

#include "unisub/cli/config.hpp"
#include "unisub/error.hpp"
#include "unisub/levi.hpp"
#include "unisub/linalg.hpp"
#include "unisub/obstruction.hpp"
#include "unisub/representation.hpp"
#include "unisub/solvable.hpp"
#include "unisub/subalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>

namespace unisub::cli {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

using RepPtr = std::shared_ptr<const Representation>;

RepPtr share(Representation rep) { return std::make_shared<const Representation>(std::move(rep)); }

std::string tag(const std::string& prefix, long long k) { return prefix + std::to_string(k); }

// Line bundle E_W for one SU(2) factor whose quotient W is spanned by the
// basis vector `removed`: over S^2 when W has nonzero weight, else over RP^2.
LineBundle su2_factor_bundle(const Representation& rep, int removed) {
  require(rep.group().kind() == GroupKind::SU2 && rep.weights() && rep.has_exact(), ErrorCode::UnsupportedFactor,
          "factor bundles need an SU(2) representation with weights and an exact model");
  const int w = (*rep.weights())[static_cast<size_t>(removed)].front();
  if (w != 0) return LineBundle::sphere(localization_number(build_root_system(rep.group()), {Weight{w}}));
  const MatrixXg rho = rep.realize_exact(su2_weyl_element_exact());
  const GaussRational diag = rho(removed, removed);
  require(diag == GaussRational(1) || diag == GaussRational(-1), ErrorCode::UnsupportedFactor,
          "the Weyl element does not preserve the zero-weight line");
  return LineBundle::projective_plane(diag == GaussRational(-1));
}

std::vector<Weight> negative_roots(const RootSystem& rs) {
  std::vector<Weight> out;
  for (const auto& a : rs.positive_roots) out.push_back(negate(a));
  return out;
}

GroupSpec su2xsu2() { return GroupSpec::product({GroupSpec::su2(), GroupSpec::su2()}); }

std::vector<std::string> catalog_subgroups(const GroupSpec& g) {
  if (g.kind() == GroupKind::SU2) return {"T", "N(T)", "G"};
  if (g.kind() == GroupKind::SU3) return {"T", "N(T)", "U(2)", "SU(2)", "SO(3)", "G"};
  if (g == su2xsu2()) return {"T", "N(T)", "diag", "SU(2)xT", "SU(2)x1", "Tx1", "G"};
  fail(ErrorCode::ConfigError, "no subgroup catalog for " + g.label());
}

}  // namespace

SearchConfig Options::search() const {
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;
  cfg.tolerance = tolerance;
  cfg.samples = samples;
  cfg.threads = threads;
  return cfg;
}

Json Options::echo() const {
  Json j;
  j["seed"] = seed;
  j["restarts"] = restarts;
  j["tolerance"] = tolerance;
  j["samples"] = samples;
  return j;
}

void validate(const Options& opts) {
  require(opts.restarts >= 1, ErrorCode::ConfigError, "restarts must be positive");
  require(opts.tolerance > 0.0, ErrorCode::ConfigError, "tolerance must be positive");
  require(opts.samples >= 1, ErrorCode::ConfigError, "samples must be positive");
  require(opts.threads >= 0, ErrorCode::ConfigError, "threads must be non-negative");
}

Report cmd_su2_classify(int n, const Options& opts) {
  validate(opts);
  require(n >= 1 && n <= 20, ErrorCode::ConfigError, "n must lie in [1, 20]");
  Report report("su2-classify");
  report.config() = opts.echo();
  report.config()["n"] = n;
  const SearchConfig cfg = opts.search();

  Table& table = report.add_table("rows", {"i", "quotient_weight", "base_space", "class", "vanishes", "verdict", "samples",
                                           "max_min_distance", "mean_min_distance"});
  const auto planes = t_invariant_hyperplanes(n);
  for (const auto& h : planes) {
    const int i = h.index;
    const std::string id = "n=" + std::to_string(n) + " i=" + std::to_string(i);
    const ObstructionReport ob = su2_obstruction_report(n, i);
    const Verdict v = universality_verdict(h.subspace.ambient(), h.subspace, cfg);
    report.add_obstruction(id, ob);
    report.add_verdict(id, v);
    table.rows.push_back({i, h.quotient_weight, ob.base_space, ob.class_value.str(), ob.vanishes, to_string(v.kind),
                          v.samples, v.max_min_distance, v.mean_min_distance});

    if (2 * i != n)
      report.add_flag(id + ": class equals 2i-n", ob.class_value == CohomologyValue::integer(2 * i - n),
                      "class " + ob.class_value.str());
    const bool expect_vanish = n % 4 == 0 && 2 * i == n;
    report.add_flag(id + ": vanishes exactly when n = 0 mod 4 and i = n/2", ob.vanishes == expect_vanish,
                    std::string("vanishes = ") + (ob.vanishes ? "true" : "false"));
    report.add_verdict_flag(id + ": hyperplane is universal", v, VerdictKind::Universal);
  }
  report.add_flag("row count is n+1", static_cast<int>(planes.size()) == n + 1);
  return report;
}

CounterexampleVariant parse_variant(const std::string& name) {
  if (name == "default") return CounterexampleVariant::Default;
  if (name == "odd") return CounterexampleVariant::Odd;
  if (name == "factor2") return CounterexampleVariant::Factor2;
  fail(ErrorCode::ConfigError, "unknown variant '" + name + "' (default, odd, factor2)");
}

std::string to_string(CounterexampleVariant v) {
  switch (v) {
    case CounterexampleVariant::Default: return "default";
    case CounterexampleVariant::Odd: return "odd";
    case CounterexampleVariant::Factor2: return "factor2";
  }
  return "?";
}

Report cmd_counterexample(CounterexampleVariant variant, const Options& opts) {
  validate(opts);
  Report report("counterexample");
  report.config() = opts.echo();
  report.config()["variant"] = to_string(variant);

  // Per factor: the SU(2) representation and the basis vector spanning W.
  std::vector<std::pair<Representation, int>> factors;
  const Representation sl2 = complexified_adjoint(GroupSpec::su2());  // E, H, F
  switch (variant) {
    case CounterexampleVariant::Default:
      factors = {{sl2, 2}, {sl2, 1}};  // b = span(E, H); zero-diagonal span(E, F)
      break;
    case CounterexampleVariant::Odd:
      factors = {{su2_irrep(1), 1}, {sl2, 1}};  // the weight +1 line of C^2 removed
      break;
    case CounterexampleVariant::Factor2:
      factors = {{sl2, 1}};
      break;
  }

  std::vector<Representation> reps;
  std::vector<LineBundle> bundles;
  std::vector<int> removed;
  int offset = 0;
  for (size_t k = 0; k < factors.size(); ++k) {
    const auto& [rep, r] = factors[k];
    bundles.push_back(su2_factor_bundle(rep, r));
    removed.push_back(offset + r);
    offset += rep.dimension();
    reps.push_back(rep);
    ObstructionReport component = product_obstruction({bundles.back()});
    report.add_obstruction(tag("factor ", static_cast<long long>(k + 1)), component);
  }
  RepPtr u = share(reps.size() == 1 ? reps.front() : external_direct_sum(reps));
  const Subspace v = Subspace::weight_complement(u, removed);
  const ObstructionReport top = product_obstruction(bundles);
  report.add_obstruction("top class", top);
  report.config()["representation"] = u->name();
  report.config()["removed_basis_vectors"] = removed;

  const Verdict verdict = universality_verdict(*u, v, opts.search());
  report.add_verdict("V", verdict);

  for (size_t k = 0; k < bundles.size(); ++k) {
    const auto& b = bundles[k];
    const std::string id = tag("factor ", static_cast<long long>(k + 1));
    if (b.space == BaseFactor::S2) {
      const long long expected = variant == CounterexampleVariant::Odd ? 1 : 2;
      report.add_flag(id + ": |c1| on S^2 is " + std::to_string(expected) + " times the generator",
                      std::llabs(b.c1) == expected, "signed c1 = " + std::to_string(b.c1));
    } else {
      report.add_flag(id + ": bundle on RP^2 has c1 the torsion generator", b.tautological, b.describe());
    }
  }
  const bool expect_zero = variant == CounterexampleVariant::Default;
  report.add_flag(expect_zero ? "top Chern class vanishes" : "top Chern class is nonzero",
                  top.vanishes == expect_zero, "top class " + top.class_value.str());
  report.add_verdict_flag("V is universal", verdict, VerdictKind::Universal);
  return report;
}

Report cmd_levi_demo(const Options& opts, double box_entry) {
  validate(opts);
  require(box_entry > 0.0, ErrorCode::ConfigError, "box entry must be positive");
  Report report("levi-demo");
  report.config() = opts.echo();
  report.config()["box_entry"] = box_entry;

  SearchConfig cfg = opts.search();
  cfg.box.entry = box_entry;
  RepPtr g = share(block_extension_representation());
  RepPtr s = share(block_extension_levi_representation());
  MatrixXcd vb = MatrixXcd::Zero(4, 2);
  vb(0, 0) = 1.0;
  vb(2, 1) = 1.0;
  const Subspace vg = Subspace::span(g, vb);
  const Subspace vs = Subspace::span(s, vb);
  VectorXcd u = VectorXcd::Zero(4);
  u(0) = 1.0;
  u(3) = 1.0;

  const OrbitSearchResult rs = normalized_orbit_distance(*s, u, vs, cfg);
  const OrbitSearchResult rg = normalized_orbit_distance(*g, u, vg, cfg);
  const double target = 1.0 / std::sqrt(2.0);
  Table& witness = report.add_table("witness", {"group", "min_normalized_distance", "restarts_used", "converged"});
  witness.rows.push_back({"S = SU(2)", rs.min_normalized_distance, rs.restarts_used, rs.converged});
  witness.rows.push_back({g->group().label(), rg.min_normalized_distance, rg.restarts_used, rg.converged});
  report.add_flag("S-orbit of (e1, e2) stays 1/sqrt(2) from V", std::abs(rs.min_normalized_distance - target) <= 1e-4,
                  "min " + Json(rs.min_normalized_distance).dump() + " over " + std::to_string(rs.restarts_used) +
                      " restarts");
  report.add_flag("G-orbit of (e1, e2) reaches V", rg.min_normalized_distance < opts.tolerance,
                  "min " + Json(rg.min_normalized_distance).dump());

  const Verdict gv = universality_verdict(*g, vg, cfg);
  report.add_verdict("G on C^4", gv).update({{"box_entry", box_entry}});
  report.add_verdict_flag("V is universal for G within the search box", gv, VerdictKind::Universal);

  try {
    levi_restriction_check(*g, vg, cfg);
    report.add_flag("Levi reduction refuses the noncompact group", false, "no error raised");
  } catch (const Error& e) {
    report.add_flag("Levi reduction refuses the noncompact group", e.code() == ErrorCode::NotCentral, e.what());
  }

  // Compact case: U(1) x SU(2) on C^2 + C^2 with central charges 1 and 2.
  RepPtr c = share(torus_twisted_sum({{1, su2_irrep(1)}, {2, su2_irrep(1)}}));
  Table& blocks = report.add_table("compact_blocks", {"example", "central_weight", "dim_V_block", "block_verdict"});
  Table& global = report.add_table("compact_global", {"example", "blocks_all_universal", "S_verdict", "G_verdict"});
  const std::vector<std::pair<std::string, std::vector<int>>> examples{{"line+line", {0, 2}}, {"line+C^2", {0}}};
  for (const auto& [name, removed] : examples) {
    const Subspace v = Subspace::weight_complement(c, removed);
    const LeviReport lr = levi_restriction_check(*c, v, cfg);
    for (const auto& b : lr.blocks)
      blocks.rows.push_back({name, b.central_weight.front(), b.v_dimension, to_string(b.verdict.kind)});
    global.rows.push_back({name, lr.blocks_all_universal, to_string(lr.levi_verdict.kind), to_string(lr.group_verdict.kind)});
    report.add_verdict(name + ": S", lr.levi_verdict);
    report.add_verdict(name + ": G", lr.group_verdict);
    const bool conclusive =
        lr.levi_verdict.kind != VerdictKind::Inconclusive && lr.group_verdict.kind != VerdictKind::Inconclusive;
    if (conclusive) {
      report.add_flag(name + ": S and G verdicts agree", lr.agrees,
                      to_string(lr.levi_verdict.kind) + " vs " + to_string(lr.group_verdict.kind));
    } else if (lr.levi_verdict.budget_exceeded || lr.group_verdict.budget_exceeded) {
      report.note_budget(name + ": S and G verdicts agree");
    } else {
      report.add_flag(name + ": S and G verdicts agree", false, "inconclusive verdict");
    }
    report.add_flag(name + ": G universal implies every block universal",
                    lr.group_verdict.kind != VerdictKind::Universal || lr.blocks_all_universal);
  }
  return report;
}

Report cmd_schur(const std::string& group, const Options& opts) {
  validate(opts);
  const GroupSpec g = parse_group_name(group);
  require(g.kind() == GroupKind::SU2 || g.kind() == GroupKind::SU3, ErrorCode::ConfigError,
          "schur takes su2 or su3");
  Report report("schur");
  report.config() = opts.echo();
  report.config()["group"] = group;

  RepPtr rep = share(complexified_adjoint(g));
  const RootSystem rs = build_root_system(g);
  std::vector<int> removed;
  for (int j = 0; j < rep->dimension(); ++j) {
    const Weight& w = (*rep->weights())[static_cast<size_t>(j)];
    if (std::find(rs.positive_roots.begin(), rs.positive_roots.end(), negate(w)) != rs.positive_roots.end())
      removed.push_back(j);
  }
  const Subspace b = Subspace::weight_complement(rep, removed);
  report.config()["representation"] = rep->name();
  report.config()["subspace"] = "standard Borel subalgebra";

  const Verdict v = universality_verdict(*rep, b, opts.search());
  report.add_verdict("b in " + rep->name(), v);
  const LocalizationResult loc = localization(rs, quotient_weights(b), opts.seed);
  const EulerCharacteristic chi = euler_characteristic_quotient(g, maximal_torus_subgroup(g));
  report.extra()["localization"] = {{"value", loc.value}, {"magnitude", loc.magnitude}, {"euler_characteristic", chi.value}};

  report.add_verdict_flag("Borel subalgebra is universal", v, VerdictKind::Universal);
  report.add_flag("all sampled distances below tolerance", v.max_min_distance < opts.tolerance,
                  "max " + Json(v.max_min_distance).dump());
  report.add_flag("|localization| equals chi(G/T)", loc.magnitude == chi.value,
                  std::to_string(loc.value) + " vs " + std::to_string(chi.value));
  report.add_flag("nonzero obstruction implies universal", loc.value == 0 || v.kind == VerdictKind::Universal);
  return report;
}

Report cmd_solvable(int size, int trials, const Options& opts, int group_samples) {
  validate(opts);
  require(size >= 2 && size <= 8, ErrorCode::ConfigError, "size must lie in [2, 8]");
  require(trials >= 1, ErrorCode::ConfigError, "trials must be positive");
  require(group_samples >= 1, ErrorCode::ConfigError, "group samples must be positive");
  Report report("solvable");
  report.config() = opts.echo();
  report.config()["size"] = size;
  report.config()["trials"] = trials;
  report.config()["group_samples"] = group_samples;

  const GroupSpec g = GroupSpec::upper_triangular(size);
  RepPtr rep = share(defining_representation(g));
  const SearchConfig cfg = opts.search();
  Table& table = report.add_table("witnesses", {"trial", "depth", "certificate", "sampled_min", "sampled_max", "spread",
                                                "search_min", "restarts"});
  int certified = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(opts.seed, 0x5017000 + static_cast<std::uint64_t>(t));
    std::normal_distribution<double> normal;
    VectorXcd a(size);
    for (int j = 0; j < size; ++j) a(j) = Complex(normal(rng), normal(rng));
    const Subspace v = Subspace::span(rep, nullspace(MatrixXcd(a.adjoint())));
    const SolvableWitness w = solvable_witness(*rep, v);

    const OrbitObjective obj(*w.quotient, w.quotient_u, *w.quotient_subspace);
    double lo = w.certificate, hi = w.certificate;
    for (int s = 0; s < group_samples; ++s) {
      const double d = obj.value(sample_group_element(g, rng, cfg.box).matrix);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    const OrbitSearchResult search =
        normalized_orbit_distance(*w.quotient, w.quotient_u, *w.quotient_subspace, cfg, static_cast<std::uint64_t>(t));
    table.rows.push_back({t, w.depth, w.certificate, lo, hi, hi - lo, search.min_normalized_distance, search.restarts_used});

    const std::string id = tag("trial ", t);
    const bool constant = hi - lo <= 1e-10;
    const bool unbeaten = search.min_normalized_distance >= w.certificate - opts.tolerance;
    report.add_flag(id + ": certificate constant along the orbit", constant, "spread " + Json(hi - lo).dump());
    report.add_flag(id + ": search does not beat the certificate", unbeaten,
                    "search " + Json(search.min_normalized_distance).dump() + " vs " + Json(w.certificate).dump());
    if (constant && unbeaten && w.certificate > 0.0) ++certified;
  }
  report.extra()["certified_witnesses"] = certified;
  return report;
}

Report cmd_euler(const std::string& group, const std::string& subgroup, const Options& opts) {
  validate(opts);
  const GroupSpec g = parse_group_name(group);
  Report report("euler");
  report.config() = opts.echo();
  report.config()["group"] = group;
  report.config()["subgroup"] = subgroup.empty() ? Json("all") : Json(subgroup);

  const std::vector<std::string> names = subgroup.empty() ? catalog_subgroups(g) : std::vector<std::string>{subgroup};
  const RootSystem rs = build_root_system(g);
  Table& table = report.add_table("euler", {"group", "subgroup", "rank", "euler_characteristic", "status",
                                            "localization", "abs_localization"});
  for (const auto& name : names) {
    const SubgroupDescriptor h = subgroup_by_name(g, name);
    const EulerCharacteristic chi = euler_characteristic_quotient(g, h);
    const std::string status = chi.status == EulerStatus::Ok ? "ok" : "not maximal rank";
    if (name == "T") {
      const LocalizationResult loc = localization(rs, negative_roots(rs), opts.seed);
      table.rows.push_back({g.label(), name, h.rank, chi.value, status, loc.value, loc.magnitude});
      report.add_flag(g.label() + "/T: |localization| equals chi", loc.magnitude == chi.value,
                      std::to_string(loc.magnitude) + " vs " + std::to_string(chi.value));
    } else {
      table.rows.push_back({g.label(), name, h.rank, chi.value, status, nullptr, nullptr});
    }
  }
  return report;
}

Report cmd_borel_subsets(const Options& opts) {
  validate(opts);
  Report report("borel-subsets");
  report.config() = opts.echo();
  const GroupSpec g = GroupSpec::su3();
  RepPtr rep = share(complexified_adjoint(g));
  const RootSystem rs = build_root_system(g);
  Table& table = report.add_table("root_subsets", {"subset", "roots", "dim", "contains_positive_system", "verdict",
                                                   "max_min_distance"});
  for (const auto& set : sl3_root_subsets()) {
    // t_C plus the root spaces of the set.
    std::vector<int> removed;
    for (int j = 0; j < rep->dimension(); ++j) {
      const Weight& w = (*rep->weights())[static_cast<size_t>(j)];
      const bool cartan = std::all_of(w.begin(), w.end(), [](int c) { return c == 0; });
      if (!cartan && std::find(set.roots.begin(), set.roots.end(), w) == set.roots.end()) removed.push_back(j);
    }
    const Subspace v = Subspace::weight_complement(rep, removed);
    const bool borel = contains_positive_system(rs, set.roots);
    const Verdict verdict = universality_verdict(*rep, v, opts.search());
    report.add_verdict(set.name, verdict);
    table.rows.push_back({set.name, set.roots, v.dimension(), borel, to_string(verdict.kind), verdict.max_min_distance});
    report.add_verdict_flag(set.name + ": contains a positive system iff universal", verdict,
                            borel ? VerdictKind::Universal : VerdictKind::NotUniversal);
  }
  return report;
}

Report cmd_maxrank(const Options& opts) {
  validate(opts);
  Report report("maxrank");
  report.config() = opts.echo();
  Table& table = report.add_table("catalog", {"group", "subalgebra", "subgroup", "maximal_rank", "euler_characteristic",
                                              "closed", "verdict", "max_min_distance"});
  for (const auto& entry : compact_subalgebra_catalog()) {
    const GroupSpec& g = entry.algebra.ambient();
    RepPtr ad = share(adjoint_representation(g));
    const auto basis = entry.algebra.real_basis();
    MatrixXcd coords(ad->dimension(), static_cast<Eigen::Index>(basis.size()));
    for (size_t k = 0; k < basis.size(); ++k)
      coords.col(static_cast<Eigen::Index>(k)) = algebra_coordinates(g, basis[k]).cast<Complex>();
    const Subspace v = Subspace::span(ad, coords, false);

    const bool maxrank = is_maximal_rank(g, entry.algebra, opts.seed);
    const EulerCharacteristic chi = euler_characteristic_quotient(g, entry.subgroup);
    const bool closed = closedness_criterion(g, entry.algebra);
    const Verdict verdict = universality_verdict(*ad, v, opts.search());
    const std::string id = g.label() + " " + entry.algebra.name();
    report.add_verdict(id, verdict);
    table.rows.push_back({g.label(), entry.algebra.name(), entry.subgroup.name, maxrank, chi.value, closed,
                          to_string(verdict.kind), verdict.max_min_distance});
    report.add_verdict_flag(id + ": maximal rank iff universal", verdict,
                            maxrank ? VerdictKind::Universal : VerdictKind::NotUniversal);
    report.add_flag(id + ": maximal rank iff chi(G/H) > 0", maxrank == (chi.value > 0),
                    "chi = " + std::to_string(chi.value));
    if (!closed)
      report.add_verdict_flag(id + ": non-closed subalgebra is not universal", verdict, VerdictKind::NotUniversal);
  }
  return report;
}

}  // namespace unisub::cli
