#include "unisub/cli/config.hpp"

#include "unisub/error.hpp"
#include "unisub/levi.hpp"
#include "unisub/linalg.hpp"
#include "unisub/obstruction.hpp"
#include "unisub/solvable.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>

namespace unisub::cli {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::ConfigError, what); }

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    bad("'" + key + "' has the wrong type");
  }
}

template <typename T>
T scalar_or(const YAML::Node& map, const std::string& key, T fallback) {
  const YAML::Node n = map[key];
  return n ? scalar<T>(n, key) : fallback;
}

bool is_integer_text(const std::string& s) {
  size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start >= s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool is_rational_text(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return is_integer_text(s);
  return is_integer_text(s.substr(0, slash)) && is_integer_text(s.substr(slash + 1)) && s[slash + 1] != '-' &&
         s[slash + 1] != '+';
}

struct ParsedReal {
  double value = 0.0;
  std::optional<Rational> exact;
};

ParsedReal parse_real(const YAML::Node& node) {
  if (!node.IsScalar()) bad("matrix entry must be a number, a \"p/q\" string or an [re, im] pair");
  const std::string text = node.Scalar();
  if (is_rational_text(text)) {
    Rational q = Rational::parse(text);
    return {q.to_double(), q};
  }
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') bad("cannot read '" + text + "' as a number");
  return {v, std::nullopt};
}

Json yaml_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Sequence: {
      Json out = Json::array();
      for (const auto& item : node) out.push_back(yaml_to_json(item));
      return out;
    }
    case YAML::NodeType::Map: {
      Json out = Json::object();
      for (const auto& kv : node) out[kv.first.Scalar()] = yaml_to_json(kv.second);
      return out;
    }
    case YAML::NodeType::Scalar: {
      const std::string& s = node.Scalar();
      if (is_integer_text(s)) return std::stoll(s);
      if (s == "true") return true;
      if (s == "false") return false;
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (end != s.c_str() && *end == '\0') return v;
      return s;
    }
    default: return nullptr;
  }
}

struct ParsedMatrix {
  MatrixXcd value;
  std::optional<MatrixXg> exact;
};

ParsedMatrix parse_matrix(const YAML::Node& node, const std::string& what) {
  if (!node.IsSequence() || node.size() == 0) bad(what + " must be a non-empty list of rows");
  const auto rows = static_cast<Index>(node.size());
  const auto cols = static_cast<Index>(node[0].IsSequence() ? node[0].size() : 0);
  if (cols == 0) bad(what + " rows must be non-empty lists");
  ParsedMatrix m{MatrixXcd(rows, cols), MatrixXg(rows, cols)};
  bool exact = true;
  for (Index r = 0; r < rows; ++r) {
    const YAML::Node row = node[static_cast<size_t>(r)];
    if (!row.IsSequence() || static_cast<Index>(row.size()) != cols) bad(what + " has ragged rows");
    for (Index c = 0; c < cols; ++c) {
      ParsedEntry e = parse_entry(row[static_cast<size_t>(c)]);
      m.value(r, c) = e.value;
      if (e.exact) (*m.exact)(r, c) = *e.exact;
      exact = exact && e.exact.has_value();
    }
  }
  if (!exact) m.exact.reset();
  return m;
}

GroupSpec parse_group(const YAML::Node& node) {
  if (!node) bad("missing 'group'");
  if (node.IsScalar()) return parse_group_name(node.Scalar());
  if (!node.IsMap() || node.size() != 1) bad("'group' must be a name or a single-key map");
  const std::string key = node.begin()->first.Scalar();
  const YAML::Node body = node.begin()->second;
  if (key == "torus") return GroupSpec::torus(scalar<int>(body, "torus"));
  if (key == "upper_triangular") return GroupSpec::upper_triangular(scalar<int>(body, "upper_triangular"));
  if (key == "complexified") return GroupSpec::complexified(parse_group(body));
  if (key == "product") {
    if (!body.IsSequence() || body.size() == 0) bad("'product' must be a non-empty list");
    std::vector<GroupSpec> factors;
    for (const auto& f : body) factors.push_back(parse_group(f));
    return GroupSpec::product(factors);
  }
  if (key == "generated") {
    const YAML::Node basis = body["basis"];
    if (!basis || !basis.IsSequence() || basis.size() == 0) bad("'generated' needs a non-empty 'basis'");
    std::vector<MatrixXcd> mats;
    for (const auto& m : basis) mats.push_back(parse_matrix(m, "generator").value);
    return GroupSpec::generated(scalar_or<std::string>(body, "label", "generated group"), mats,
                                scalar_or<bool>(body, "compact", false));
  }
  bad("unknown group form '" + key + "'");
}

Representation parse_representation(const YAML::Node& node, const GroupSpec& group) {
  if (!node || !node.IsMap()) bad("'representation' must be a map with a 'kind'");
  const std::string kind = scalar_or<std::string>(node, "kind", "");
  if (kind == "irrep") {
    if (group.kind() != GroupKind::SU2) bad("irrep needs group su2");
    return su2_irrep(scalar<int>(node["n"], "n"));
  }
  if (kind == "defining") return defining_representation(group);
  if (kind == "explicit") {
    if (group.kind() != GroupKind::Generated) bad("explicit representations need a generated group");
    return defining_representation(group);
  }
  if (kind == "adjoint") return adjoint_representation(group);
  if (kind == "complexified_adjoint") return complexified_adjoint(group);
  if (kind == "trivial") return trivial_representation(group, scalar_or<int>(node, "dimension", 1));
  if (kind == "direct_sum") {
    const YAML::Node parts = node["summands"];
    if (!parts || !parts.IsSequence() || parts.size() == 0) bad("direct_sum needs 'summands'");
    std::vector<Representation> reps;
    for (const auto& p : parts) reps.push_back(parse_representation(p, group));
    return direct_sum(reps);
  }
  if (kind == "external_sum") {
    const YAML::Node parts = node["factors"];
    if (group.kind() != GroupKind::Product) bad("external_sum needs a product group");
    if (!parts || !parts.IsSequence() || parts.size() != group.factors().size())
      bad("external_sum needs one entry in 'factors' per group factor");
    std::vector<Representation> reps;
    for (size_t k = 0; k < parts.size(); ++k) reps.push_back(parse_representation(parts[k], group.factors()[k]));
    return external_direct_sum(reps);
  }
  if (kind == "twisted") {
    if (group.kind() != GroupKind::Product || group.factors().size() != 2 ||
        group.factors().front() != GroupSpec::torus(1))
      bad("twisted needs group {product: [{torus: 1}, S]}");
    const YAML::Node parts = node["blocks"];
    if (!parts || !parts.IsSequence() || parts.size() == 0) bad("twisted needs 'blocks'");
    std::vector<std::pair<int, Representation>> blocks;
    for (const auto& b : parts)
      blocks.emplace_back(scalar<int>(b["charge"], "charge"), parse_representation(b["rep"], group.factors()[1]));
    return torus_twisted_sum(blocks);
  }
  bad("unknown representation kind '" + kind + "'");
}

Subspace parse_subspace(const YAML::Node& node, const std::shared_ptr<const Representation>& rep) {
  if (!node.IsMap()) bad("'subspace' must be a map");
  const bool complex = scalar_or<bool>(node, "complex", true);
  if (const YAML::Node wc = node["weight_complement"]) {
    if (!wc.IsSequence()) bad("'weight_complement' must be a list of basis indices");
    std::vector<int> removed;
    for (const auto& i : wc) removed.push_back(scalar<int>(i, "weight_complement"));
    for (int i : removed)
      if (i < 0 || i >= rep->dimension()) bad("weight_complement index " + std::to_string(i) + " is out of range");
    return Subspace::weight_complement(rep, removed, complex);
  }
  if (const YAML::Node span = node["span"]) {
    if (!span.IsSequence()) bad("'span' must be a list of vectors");
    if (span.size() == 0) return Subspace::span(rep, MatrixXcd(rep->dimension(), 0), complex);
    // Vectors are given as rows; the basis holds them as columns.
    ParsedMatrix rows = parse_matrix(span, "span");
    if (rows.value.cols() != rep->dimension())
      bad("span vectors must have length " + std::to_string(rep->dimension()));
    if (rows.exact) return Subspace::span_exact(rep, rows.exact->transpose(), complex);
    return Subspace::span(rep, rows.value.transpose(), complex);
  }
  bad("'subspace' needs 'weight_complement' or 'span'");
}

SearchConfig parse_search(const YAML::Node& doc) {
  SearchConfig cfg;
  cfg.seed = scalar_or<std::uint64_t>(doc, "seed", kDefaultSeed);
  if (const YAML::Node s = doc["search"]) {
    if (!s.IsMap()) bad("'search' must be a map");
    cfg.restarts = scalar_or<int>(s, "restarts", cfg.restarts);
    cfg.tolerance = scalar_or<double>(s, "tolerance", cfg.tolerance);
    cfg.samples = scalar_or<int>(s, "samples", cfg.samples);
    cfg.max_iterations = scalar_or<int>(s, "max_iterations", cfg.max_iterations);
    cfg.threads = scalar_or<int>(s, "threads", cfg.threads);
    if (const YAML::Node box = s["box"]) {
      cfg.box.log_diagonal = scalar_or<double>(box, "log_diagonal", cfg.box.log_diagonal);
      cfg.box.entry = scalar_or<double>(box, "entry", cfg.box.entry);
    }
  }
  if (cfg.restarts < 1 || cfg.samples < 1 || cfg.max_iterations < 1) bad("search counts must be positive");
  if (!(cfg.tolerance > 0.0) || !(cfg.box.log_diagonal > 0.0) || !(cfg.box.entry > 0.0))
    bad("search tolerances and box bounds must be positive");
  if (cfg.threads < 0) bad("threads must be non-negative");
  return cfg;
}

SubalgebraSpec parse_subalgebra(const YAML::Node& node, const GroupSpec& group) {
  if (!node.IsMap()) bad("'subalgebra' must be a map");
  const YAML::Node basis = node["basis"];
  if (!basis || !basis.IsSequence() || basis.size() == 0) bad("'subalgebra' needs a non-empty 'basis'");
  const bool complex = scalar_or<bool>(node, "complex_span", false);
  const std::string name = scalar_or<std::string>(node, "name", "h");
  std::vector<ParsedMatrix> mats;
  for (const auto& m : basis) mats.push_back(parse_matrix(m, "subalgebra basis"));
  const bool exact = std::all_of(mats.begin(), mats.end(), [](const ParsedMatrix& m) { return m.exact.has_value(); });
  std::optional<SubalgebraSpec> h;
  if (exact && group.kind() != GroupKind::Generated) {
    std::vector<MatrixXg> q;
    for (const auto& m : mats) q.push_back(*m.exact);
    h = SubalgebraSpec::from_exact(group, q, complex, name);
  } else {
    std::vector<MatrixXcd> f;
    for (const auto& m : mats) f.push_back(m.value);
    h = SubalgebraSpec::from_basis(group, f, complex, name);
  }
  if (const YAML::Node roots = node["roots"]) {
    std::vector<Weight> rs;
    for (const auto& r : roots) rs.push_back(scalar<std::vector<int>>(r, "roots"));
    h = h->with_root_set(rs);
  }
  return *h;
}

const std::vector<std::string> kAnalyses{"verdict", "localization", "solvable_witness", "levi", "subalgebra"};

}  // namespace

ParsedEntry parse_entry(const YAML::Node& node) {
  if (node.IsSequence()) {
    if (node.size() != 2) bad("complex entries are [re, im] pairs");
    ParsedReal re = parse_real(node[0]);
    ParsedReal im = parse_real(node[1]);
    ParsedEntry e{Complex(re.value, im.value), std::nullopt};
    if (re.exact && im.exact) e.exact = GaussRational(*re.exact, *im.exact);
    return e;
  }
  ParsedReal r = parse_real(node);
  ParsedEntry e{Complex(r.value, 0.0), std::nullopt};
  if (r.exact) e.exact = GaussRational(*r.exact);
  return e;
}

GroupSpec parse_group_name(const std::string& raw) {
  std::string name = raw;
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  if (name == "su2") return GroupSpec::su2();
  if (name == "su3") return GroupSpec::su3();
  if (name == "su2xsu2") return GroupSpec::product({GroupSpec::su2(), GroupSpec::su2()});
  if (name == "u1xsu2") return GroupSpec::product({GroupSpec::torus(1), GroupSpec::su2()});
  if (name == "sl2c") return GroupSpec::complexified(GroupSpec::su2());
  if (name == "sl3c") return GroupSpec::complexified(GroupSpec::su3());
  auto numbered = [&](const std::string& prefix) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0 || !is_integer_text(name.substr(prefix.size()))) return std::nullopt;
    return std::stoi(name.substr(prefix.size()));
  };
  if (auto n = numbered("ut")) return GroupSpec::upper_triangular(*n);
  if (auto k = numbered("torus")) return GroupSpec::torus(*k);
  bad("unknown group '" + raw + "' (su2, su3, su2xsu2, u1xsu2, sl2c, sl3c, ut<n>, torus<k>)");
}

RunConfig parse_run_config(const YAML::Node& doc) {
  if (!doc.IsMap()) bad("configuration must be a map");
  RunConfig cfg;
  try {
    cfg.group = parse_group(doc["group"]);
    if (const YAML::Node r = doc["representation"]) {
      cfg.representation = std::make_shared<const Representation>(parse_representation(r, cfg.group));
      if (cfg.representation->group() != cfg.group)
        bad("representation acts through " + cfg.representation->group().label() + ", not " + cfg.group.label());
    }
    if (const YAML::Node s = doc["subspace"]) {
      if (!cfg.representation) bad("'subspace' needs a 'representation'");
      cfg.subspace = parse_subspace(s, cfg.representation);
    }
    if (const YAML::Node h = doc["subalgebra"]) cfg.subalgebra = parse_subalgebra(h, cfg.group);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    bad(e.what());
  }
  cfg.search = parse_search(doc);
  if (const YAML::Node a = doc["analyses"]) {
    if (!a.IsSequence()) bad("'analyses' must be a list");
    for (const auto& item : a) {
      const std::string name = scalar<std::string>(item, "analyses");
      if (std::find(kAnalyses.begin(), kAnalyses.end(), name) == kAnalyses.end()) bad("unknown analysis '" + name + "'");
      cfg.analyses.push_back(name);
    }
  } else {
    cfg.analyses = {"verdict"};
  }
  for (const auto& a : cfg.analyses)
    if (a != "subalgebra" && !cfg.subspace) bad("analysis '" + a + "' needs a 'subspace'");
  if (std::find(cfg.analyses.begin(), cfg.analyses.end(), "subalgebra") != cfg.analyses.end() && !cfg.subalgebra)
    bad("analysis 'subalgebra' needs a 'subalgebra' block");
  cfg.output = scalar_or<std::string>(doc, "output", "");

  cfg.echo = yaml_to_json(doc);
  cfg.echo["seed"] = cfg.search.seed;
  cfg.echo["search"] = {{"restarts", cfg.search.restarts},
                        {"tolerance", cfg.search.tolerance},
                        {"samples", cfg.search.samples},
                        {"max_iterations", cfg.search.max_iterations},
                        {"box", {{"log_diagonal", cfg.search.box.log_diagonal}, {"entry", cfg.search.box.entry}}}};
  cfg.echo["analyses"] = cfg.analyses;
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open configuration '" + path + "'");
  YAML::Node doc;
  try {
    doc = YAML::Load(in);
  } catch (const YAML::Exception& e) {
    bad("cannot parse '" + path + "': " + e.what());
  }
  return parse_run_config(doc);
}

Report cmd_run(const RunConfig& config) {
  Report report("run");
  report.config() = config.echo;
  const auto has = [&](const std::string& a) {
    return std::find(config.analyses.begin(), config.analyses.end(), a) != config.analyses.end();
  };

  std::optional<Verdict> verdict;
  if (has("verdict")) {
    verdict = universality_verdict(*config.representation, *config.subspace, config.search);
    report.add_verdict("V", *verdict);
  }

  if (has("localization")) {
    const Subspace& v = *config.subspace;
    if (v.kind() != Subspace::Kind::WeightComplement) bad("localization needs a weight_complement subspace");
    const RootSystem rs = build_root_system(config.group);
    const LocalizationResult loc = localization(rs, quotient_weights(v), config.search.seed);
    ObstructionReport ob;
    ob.base_space = config.group.label() + "/T";
    ob.class_value = CohomologyValue::integer(loc.value);
    ob.vanishes = loc.value == 0;
    ob.note = "localization over the Weyl group; sign from the standard positive system";
    report.add_obstruction("localization", ob);
    if (verdict) {
      const std::string claim = "nonzero obstruction implies universal";
      if (loc.value == 0) {
        report.add_flag(claim, true, "obstruction vanishes; no constraint on the verdict");
      } else {
        report.add_verdict_flag(claim, *verdict, VerdictKind::Universal);
      }
    }
  }

  if (has("solvable_witness")) {
    const Subspace& v = *config.subspace;
    const bool proper = v.is_proper();
    Json j;
    j["proper"] = proper;
    if (proper) {
      const SolvableWitness w = solvable_witness(*config.representation, v);
      Json u = Json::array();
      for (Index k = 0; k < w.u.size(); ++k) u.push_back({w.u(k).real(), w.u(k).imag()});
      j["depth"] = w.depth;
      j["certificate"] = w.certificate;
      j["witness"] = u;
    }
    report.extra()["solvable_witness"] = j;
    if (verdict)
      report.add_verdict_flag("solvable group: only U is universal", *verdict,
                              proper ? VerdictKind::NotUniversal : VerdictKind::Universal);
  }

  if (has("levi")) {
    const LeviReport lr = levi_restriction_check(*config.representation, *config.subspace, config.search);
    Table& t = report.add_table("levi_blocks", {"central_weight", "dim_V_block", "verdict", "max_min_distance"});
    for (const auto& b : lr.blocks)
      t.rows.push_back({b.central_weight, b.v_dimension, to_string(b.verdict.kind), b.verdict.max_min_distance});
    report.add_verdict("Levi factor " + lr.levi_factor.label(), lr.levi_verdict);
    report.add_verdict("group " + config.group.label(), lr.group_verdict);
    const bool conclusive =
        lr.levi_verdict.kind != VerdictKind::Inconclusive && lr.group_verdict.kind != VerdictKind::Inconclusive;
    if (conclusive)
      report.add_flag("Levi factor and group verdicts agree", lr.agrees);
    else
      report.note_budget("Levi factor and group verdicts agree");
  }

  if (has("subalgebra")) {
    const SubalgebraSpec& h = *config.subalgebra;
    const SubalgebraSpec n = normalizer_subalgebra(h);
    Json j;
    j["name"] = h.name();
    j["real_dimension"] = h.real_dimension();
    j["normalizer_dimension"] = n.real_dimension();
    j["closed"] = n.real_dimension() == h.real_dimension();
    j["bracket_residual"] = h.bracket_residual();
    if (config.group.is_compact()) {
      j["rank"] = rank_of_compact_subalgebra(h, config.search.seed);
      j["maximal_rank"] = is_maximal_rank(config.group, h, config.search.seed);
    }
    if (h.t_stable_root_set()) {
      const GroupSpec compact = config.group.kind() == GroupKind::Complexified ? config.group.factors().front() : config.group;
      j["contains_positive_system"] = contains_positive_system(build_root_system(compact), *h.t_stable_root_set());
    }
    report.extra()["subalgebra"] = j;
  }
  return report;
}

}  // namespace unisub::cli
