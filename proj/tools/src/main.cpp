#include "unisub/cli/commands.hpp"
#include "unisub/cli/config.hpp"
#include "unisub/cli/report.hpp"
#include "unisub/error.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>

using namespace unisub;
using namespace unisub::cli;

namespace {

std::filesystem::path output_path(const std::string& out, const std::string& configured, const std::string& command) {
  if (!out.empty()) return out;
  if (!configured.empty()) return configured;
  if (const char* dir = std::getenv("UNISUB_OUT_DIR"); dir != nullptr && *dir != '\0')
    return std::filesystem::path(dir) / (command + ".json");
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal subspaces of Lie group representations: obstructions and orbit searches"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  std::string out;
  std::string format = "json";
  bool timing = false;
  auto* seed_opt = app.add_option("--seed", opts.seed, "Base seed for every random stream");
  auto* restarts_opt = app.add_option("--restarts", opts.restarts, "Restarts per orbit search")->check(CLI::PositiveNumber);
  auto* tol_opt = app.add_option("--tol", opts.tolerance, "Distance below which an orbit meets V")->check(CLI::PositiveNumber);
  auto* samples_opt = app.add_option("--samples", opts.samples, "Random vectors per verdict")->check(CLI::PositiveNumber);
  app.add_option("--threads", opts.threads, "Worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", out, "Report path; tables go to <stem>.<table>.csv beside it");
  app.add_option("--format", format, "Standard output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--timing", timing, "Add wall-clock timing to the report (breaks byte-identity)");

  std::function<Report()> job;
  std::string configured_out;

  int n = 4;
  auto* su2 = app.add_subcommand("su2-classify", "Torus-invariant hyperplanes of the SU(2) irreducible U_n");
  su2->add_option("--n", n, "Degree of the irreducible representation")->required()->check(CLI::Range(1, 20));
  su2->callback([&] { job = [&] { return cmd_su2_classify(n, opts); }; });

  std::string variant = "default";
  auto* ce = app.add_subcommand("counterexample", "Universal V with vanishing top Chern class over S^2 x RP^2");
  ce->add_option("--variant", variant, "default, odd or factor2")->check(CLI::IsMember({"default", "odd", "factor2"}));
  ce->callback([&] { job = [&] { return cmd_counterexample(parse_variant(variant), opts); }; });

  double box_entry = 100.0;
  auto* levi = app.add_subcommand("levi-demo", "Levi factor versus the noncompact block group");
  levi->add_option("--box-entry", box_entry, "Bound on the entries of B")->check(CLI::PositiveNumber);
  levi->callback([&] { job = [&] { return cmd_levi_demo(opts, box_entry); }; });

  std::string schur_group = "su3";
  auto* schur = app.add_subcommand("schur", "Borel subalgebra in the complexified adjoint representation");
  schur->add_option("--group", schur_group, "su2 or su3")->check(CLI::IsMember({"su2", "su3"}));
  schur->callback([&] { job = [&] { return cmd_schur(schur_group, opts); }; });

  int size = 3;
  int trials = 50;
  int group_samples = 1000;
  auto* solv = app.add_subcommand("solvable", "Constructive witnesses for hyperplanes of upper-triangular groups");
  solv->add_option("--size", size, "Matrix size")->check(CLI::Range(2, 8));
  solv->add_option("--trials", trials, "Random hyperplanes")->check(CLI::PositiveNumber);
  solv->add_option("--group-samples", group_samples, "Group elements per constancy check")->check(CLI::PositiveNumber);
  solv->callback([&] { job = [&] { return cmd_solvable(size, trials, opts, group_samples); }; });

  std::string euler_group = "su3";
  std::string euler_subgroup;
  auto* euler = app.add_subcommand("euler", "Euler characteristics of G/H and localization over G/T");
  euler->add_option("--group", euler_group, "su2, su3 or su2xsu2");
  euler->add_option("--subgroup", euler_subgroup, "Catalog subgroup name; all when omitted");
  euler->callback([&] { job = [&] { return cmd_euler(euler_group, euler_subgroup, opts); }; });

  auto* borel = app.add_subcommand("borel-subsets", "Root subsets of sl(3,C): Borel containment versus universality");
  borel->callback([&] { job = [&] { return cmd_borel_subsets(opts); }; });

  auto* maxrank = app.add_subcommand("maxrank", "Subalgebra catalog: maximal rank, chi(G/H) and adjoint universality");
  maxrank->callback([&] { job = [&] { return cmd_maxrank(opts); }; });

  std::string config_path;
  auto* run = app.add_subcommand("run", "General pipeline from a YAML configuration");
  run->add_option("--config", config_path, "Configuration file")->required();
  run->callback([&] {
    job = [&] {
      RunConfig cfg = load_run_config(config_path);
      if (*seed_opt) cfg.search.seed = opts.seed;
      if (*restarts_opt) cfg.search.restarts = opts.restarts;
      if (*tol_opt) cfg.search.tolerance = opts.tolerance;
      if (*samples_opt) cfg.search.samples = opts.samples;
      cfg.search.threads = opts.threads;
      cfg.echo["seed"] = cfg.search.seed;
      cfg.echo["search"]["restarts"] = cfg.search.restarts;
      cfg.echo["search"]["tolerance"] = cfg.search.tolerance;
      cfg.echo["search"]["samples"] = cfg.search.samples;
      configured_out = cfg.output;
      return cmd_run(cfg);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : static_cast<int>(ExitCode::ConfigError);
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    Report report = job();
    if (timing) report.set_timing(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    const std::filesystem::path path = output_path(out, configured_out, report.command());
    if (!path.empty()) report.write(path);
    std::cout << (format == "csv" ? report.csv_text() : report.json_text());
    return static_cast<int>(report.exit_code());
  } catch (const Error& e) {
    std::cerr << "unisub: " << e.what() << "\n";
    return static_cast<int>(ExitCode::ConfigError);
  } catch (const YAML::Exception& e) {
    std::cerr << "unisub: configuration: " << e.what() << "\n";
    return static_cast<int>(ExitCode::ConfigError);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "unisub: " << e.what() << "\n";
    return static_cast<int>(ExitCode::ConfigError);
  }
}
