#include "unisub/levi.hpp"
#include "unisub/universality.hpp"

#include <benchmark/benchmark.h>

#include <memory>

using namespace unisub;

namespace {

void BM_OrbitSearchSU2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rep = std::make_shared<const Representation>(su2_irrep(n));
  const Subspace v = Subspace::weight_complement(rep, {n / 2});
  SearchConfig cfg;
  cfg.threads = 1;
  Rng rng = make_rng(1);
  std::normal_distribution<double> nd;
  Eigen::VectorXcd u(n + 1);
  for (int k = 0; k <= n; ++k) u(k) = Complex(nd(rng), nd(rng));
  for (auto _ : state) benchmark::DoNotOptimize(normalized_orbit_distance(*rep, u, v, cfg).min_normalized_distance);
}
BENCHMARK(BM_OrbitSearchSU2)->Arg(2)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_LeviWitnessSearch(benchmark::State& state) {
  const auto rep = std::make_shared<const Representation>(block_extension_levi_representation());
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(4, 2);
  b(0, 0) = 1.0;
  b(2, 1) = 1.0;
  const Subspace v = Subspace::span(rep, b);
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(4);
  u(0) = 1.0;
  u(3) = 1.0;
  SearchConfig cfg;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(normalized_orbit_distance(*rep, u, v, cfg).min_normalized_distance);
}
BENCHMARK(BM_LeviWitnessSearch)->Unit(benchmark::kMillisecond);

void BM_OrbitObjective(benchmark::State& state) {
  const auto rep = std::make_shared<const Representation>(complexified_adjoint(GroupSpec::su3()));
  const Subspace v = Subspace::weight_complement(rep, {5, 6, 7});
  Rng rng = make_rng(2);
  Eigen::VectorXcd u = Eigen::VectorXcd::Ones(8);
  const OrbitObjective obj(*rep, u, v);
  const GroupElement g = sample_group_element(GroupSpec::su3(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(obj.value(g.matrix));
}
BENCHMARK(BM_OrbitObjective);

}  // namespace
