#include "unisub/obstruction.hpp"
#include "unisub/solvable.hpp"

#include <benchmark/benchmark.h>

#include <memory>

using namespace unisub;

namespace {

void BM_LocalizationA2(benchmark::State& state) {
  const RootSystem rs = build_root_system(GroupSpec::su3());
  std::vector<Weight> tangent;
  for (const auto& a : rs.positive_roots) tangent.push_back(negate(a));
  for (auto _ : state) benchmark::DoNotOptimize(localization_number(rs, tangent));
}
BENCHMARK(BM_LocalizationA2);

void BM_LocalizationA1Power(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const GroupSpec g = GroupSpec::product(std::vector<GroupSpec>(static_cast<size_t>(k), GroupSpec::su2()));
  const RootSystem rs = build_root_system(g);
  std::vector<Weight> tangent;
  for (const auto& a : rs.positive_roots) tangent.push_back(negate(a));
  for (auto _ : state) benchmark::DoNotOptimize(localization_number(rs, tangent));
}
BENCHMARK(BM_LocalizationA1Power)->DenseRange(1, 4);

void BM_SolvableFlag(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto gens = real_algebra_basis(GroupSpec::upper_triangular(n));
  for (auto _ : state) benchmark::DoNotOptimize(solvable_flag(gens).size());
}
BENCHMARK(BM_SolvableFlag)->DenseRange(2, 6, 2);

void BM_SolvableWitness(benchmark::State& state) {
  const auto rep = std::make_shared<const Representation>(defining_representation(GroupSpec::upper_triangular(3)));
  Eigen::VectorXcd normal(3);
  normal << Complex(0.3, -1.0), Complex(1.2, 0.4), Complex(-0.7, 0.1);
  const Subspace v = Subspace::span(rep, nullspace(Eigen::MatrixXcd(normal.adjoint())));
  for (auto _ : state) benchmark::DoNotOptimize(solvable_witness(*rep, v).certificate);
}
BENCHMARK(BM_SolvableWitness);

}  // namespace
