#pragma once

// YAML run configurations for `unisub run`.
//
//   seed: 7
//   group: su2 | su3 | su2xsu2 | {torus: k} | {product: [...]} | {upper_triangular: n}
//          | {complexified: su3} | {generated: {label, compact, basis: [matrix, ...]}}
//   representation (optional for subalgebra-only runs):
//                   {kind: irrep, n: 4} | {kind: defining} | {kind: adjoint}
//                 | {kind: complexified_adjoint} | {kind: trivial, dimension: d}
//                 | {kind: direct_sum, summands: [...]} | {kind: external_sum, factors: [...]}
//                 | {kind: twisted, blocks: [{charge: q, rep: {...}}]} | {kind: explicit}
//   subspace: {weight_complement: [i, ...]} | {span: [vector, ...], complex: true}
//   search: {restarts, tolerance, samples, max_iterations, threads, box: {log_diagonal, entry}}
//   analyses: [verdict, localization, solvable_witness, levi, subalgebra]
//   subalgebra: {name, basis: [matrix, ...], complex_span: false, roots: [[2, -1], ...]}
//   output: report.json
//
// Matrices are lists of rows. Entries are numbers, "p/q" strings, or [re, im]
// pairs of either.

#include "unisub/cli/report.hpp"
#include "unisub/exact.hpp"
#include "unisub/lie_group.hpp"
#include "unisub/representation.hpp"
#include "unisub/subalgebra.hpp"
#include "unisub/universality.hpp"

#include <yaml-cpp/yaml.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace unisub::cli {

/// su2, su3, su2xsu2, u1xsu2, sl2c, sl3c, ut<n>, torus<k>.
GroupSpec parse_group_name(const std::string& name);

struct RunConfig {
  GroupSpec group;
  std::shared_ptr<const Representation> representation;  // optional for subalgebra-only runs
  std::optional<Subspace> subspace;
  SearchConfig search;
  std::vector<std::string> analyses;
  std::optional<SubalgebraSpec> subalgebra;
  std::string output;
  Json echo;  // the parsed document with defaults filled in
};

/// Throws Error(ConfigError) on malformed or inconsistent input.
RunConfig parse_run_config(const YAML::Node& doc);
RunConfig load_run_config(const std::string& path);

/// Entry as a double-precision complex number, and exactly when it is rational.
struct ParsedEntry {
  Complex value;
  std::optional<GaussRational> exact;
};
ParsedEntry parse_entry(const YAML::Node& node);

Report cmd_run(const RunConfig& config);

}  // namespace unisub::cli
