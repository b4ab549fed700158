#pragma once

// Case-study subcommands. Each returns a finished report; the exit code is
// derived from its consistency flags.

#include "unisub/cli/report.hpp"
#include "unisub/random.hpp"
#include "unisub/universality.hpp"

#include <cstdint>
#include <string>

namespace unisub::cli {

struct Options {
  std::uint64_t seed = kDefaultSeed;
  int restarts = 64;
  double tolerance = 1e-6;
  int samples = 100;
  int threads = 0;

  [[nodiscard]] SearchConfig search() const;
  [[nodiscard]] Json echo() const;
};

/// Checks the positivity invariants; throws ConfigError.
void validate(const Options& opts);

Report cmd_su2_classify(int n, const Options& opts);

enum class CounterexampleVariant { Default, Odd, Factor2 };
CounterexampleVariant parse_variant(const std::string& name);
std::string to_string(CounterexampleVariant v);
Report cmd_counterexample(CounterexampleVariant variant, const Options& opts);

/// `box_entry` bounds the entries of B in the block group search.
Report cmd_levi_demo(const Options& opts, double box_entry = 100.0);
Report cmd_schur(const std::string& group, const Options& opts);
Report cmd_solvable(int size, int trials, const Options& opts, int group_samples = 1000);
/// Empty `subgroup` tabulates every catalog subgroup of the group.
Report cmd_euler(const std::string& group, const std::string& subgroup, const Options& opts);
Report cmd_borel_subsets(const Options& opts);
Report cmd_maxrank(const Options& opts);

}  // namespace unisub::cli
