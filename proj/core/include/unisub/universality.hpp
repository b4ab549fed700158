#pragma once

// Numerical orbit-meets-subspace search and universality verdicts.

#include "unisub/lie_group.hpp"
#include "unisub/random.hpp"
#include "unisub/representation.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace unisub {

struct SearchConfig {
  int restarts = 64;
  double tolerance = 1e-6;
  int samples = 100;
  int max_iterations = 500;
  double gradient_tolerance = 1e-9;
  double fd_step = 1e-6;
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;  // 0: one per hardware thread
  SearchBox box;
};

/// Fewest completed restarts that may back a NotUniversal verdict.
inline constexpr int kWitnessRestarts = 64;

/// d(g) = dist(rho(g)u, V) / |rho(g)u| in the representation's inner product.
/// Real spans are handled in realified coordinates.
class OrbitObjective {
 public:
  OrbitObjective(const Representation& rep, const Eigen::VectorXcd& u, const Subspace& v);

  [[nodiscard]] double value(const Eigen::MatrixXcd& g) const;
  /// Normalized residual; its Euclidean norm is value(g).
  [[nodiscard]] Eigen::VectorXd residual(const Eigen::MatrixXcd& g) const;
  /// Normalized distance of a model-space vector to V.
  [[nodiscard]] Eigen::VectorXd vector_residual(const Eigen::VectorXcd& x) const;

 private:
  const Representation* rep_;
  Eigen::VectorXcd u_;
  Eigen::MatrixXcd lstar_;        // H = L L*, coordinates y = L* x are orthonormal
  Eigen::MatrixXcd qperp_;        // complex span: orthonormal complement of L* V
  Eigen::MatrixXd qperp_real_;    // real span: complement in realified coordinates
  bool complex_ = true;
};

double normalized_distance(const Representation& rep, const Eigen::VectorXcd& x, const Subspace& v);

struct OrbitSearchResult {
  double min_normalized_distance = 1.0;
  GroupElement argmin;
  int restarts_used = 0;
  std::vector<std::vector<double>> trace;  // best-so-far values per restart
  bool converged = true;                   // false if some restart exhausted its iteration budget
  int iterations = 0;
};

/// Multi-start Levenberg-Marquardt descent over g * exp(sum xi_k tau_k).
/// Restart 0 starts at the identity; restart r >= 1 at a sample drawn from
/// the stream derive_seed(cfg.seed, stream) and index r. Restarts run in
/// fixed batches and stop after the first batch whose best value is below
/// cfg.tolerance.
OrbitSearchResult normalized_orbit_distance(const Representation& rep, const Eigen::VectorXcd& u, const Subspace& v,
                                            const SearchConfig& cfg, std::uint64_t stream = 0);

enum class VerdictKind { Universal, NotUniversal, Inconclusive };
std::string to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  int samples = 0;
  double tolerance = 0.0;
  std::string evidence;  // "numerical evidence" or "constructive certificate"
  double max_min_distance = 0.0;
  double mean_min_distance = 0.0;
  std::vector<double> per_sample;
  std::optional<Eigen::VectorXcd> witness;
  int witness_index = -1;
  double witness_lower_bound = 0.0;
  bool budget_exceeded = false;
  int restarts_total = 0;
};

/// Battery: every basis vector, then `adversarial`, then cfg.samples Gaussian
/// vectors (real when V is a real span). Processed in batches of eight; the
/// first batch containing a persistent witness ends the scan.
Verdict universality_verdict(const Representation& rep, const Subspace& v, const SearchConfig& cfg,
                             const std::vector<Eigen::VectorXcd>& adversarial = {});

/// Runs fn(0..n-1) on up to `threads` workers; rethrows the lowest-index exception.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace unisub
