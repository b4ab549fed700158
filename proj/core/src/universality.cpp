#include "unisub/universality.hpp"

#include "unisub/error.hpp"
#include "unisub/linalg.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <thread>

namespace unisub {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr std::size_t kBatch = 8;

struct RestartOutcome {
  double value = 1.0;
  MatrixXcd argmin;
  std::vector<double> trace;
  bool converged = true;
  int iterations = 0;
};

constexpr double kBoxPenalty = 10.0;

// Residual of d, extended on noncompact groups by a hinge penalty on the
// search box so that iterates can slide along its boundary.
VectorXd penalized(const OrbitObjective& obj, const GroupElement& g, const SearchConfig& cfg, bool bounded) {
  VectorXd r = obj.residual(g.matrix);
  if (!bounded) return r;
  const auto excess = box_excess(g, cfg.box);
  VectorXd out(r.size() + static_cast<Eigen::Index>(excess.size()));
  out << r, kBoxPenalty * Eigen::Map<const VectorXd>(excess.data(), static_cast<Eigen::Index>(excess.size()));
  return out;
}

RestartOutcome descend(const OrbitObjective& obj, const std::vector<MatrixXcd>& chart, GroupElement g,
                       const SearchConfig& cfg) {
  const auto dim = static_cast<Eigen::Index>(chart.size());
  const double target = 1e-2 * cfg.tolerance;
  const double h = cfg.fd_step;
  const bool bounded = !g.parent.is_compact();

  RestartOutcome out;
  VectorXd r = penalized(obj, g, cfg, bounded);
  double f = r.squaredNorm();
  out.value = obj.value(g.matrix);
  out.argmin = g.matrix;
  out.trace.push_back(out.value);
  double lambda = 1e-3;
  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    if (out.value < target || dim == 0 || f == 0.0) break;
    MatrixXd jac(r.size(), dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      VectorXd step = VectorXd::Zero(dim);
      step(k) = h;
      VectorXd rp = penalized(obj, retract(g, chart, step), cfg, bounded);
      VectorXd rm = penalized(obj, retract(g, chart, -step), cfg, bounded);
      jac.col(k) = (rp - rm) / (2.0 * h);
    }
    VectorXd grad = jac.transpose() * r;
    // Gradient of |r| itself, so flat high-order zeros are not mistaken for stationary points.
    if (grad.norm() / std::sqrt(f) < cfg.gradient_tolerance) break;
    MatrixXd a = jac.transpose() * jac;
    bool accepted = false;
    for (int inner = 0; inner < 40; ++inner) {
      MatrixXd damped = a;
      for (Eigen::Index k = 0; k < dim; ++k) damped(k, k) += lambda * (a(k, k) + 1e-12);
      VectorXd delta = damped.ldlt().solve(-grad);
      if (!delta.allFinite()) {
        lambda *= 4.0;
        continue;
      }
      GroupElement trial = retract(g, chart, delta);
      VectorXd rt = penalized(obj, trial, cfg, bounded);
      double ft = rt.squaredNorm();
      if (ft < f) {
        g = std::move(trial);
        r = std::move(rt);
        f = ft;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted) break;  // no descent direction left at working precision
    const double d = obj.value(g.matrix);
    if (d < out.value) {
      out.value = d;
      out.argmin = g.matrix;
    }
    out.trace.push_back(out.value);
  }
  out.iterations = it;
  out.converged = it < cfg.max_iterations;
  return out;
}

}  // namespace

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  std::vector<std::exception_ptr> errors(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += workers) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

OrbitObjective::OrbitObjective(const Representation& rep, const VectorXcd& u, const Subspace& v)
    : rep_(&rep), u_(u), complex_(v.complex_span()) {
  const int d = rep.dimension();
  require(u.size() == d, ErrorCode::InvalidArgument, "test vector has the wrong length");
  require(v.ambient().dimension() == d, ErrorCode::InvalidArgument, "subspace lives in a different model space");
  require(u.norm() > 0.0, ErrorCode::ZeroVector, "orbit of the zero vector");
  Eigen::LLT<MatrixXcd> llt(rep.inner_product());
  require(llt.info() == Eigen::Success, ErrorCode::InvalidArgument, "inner product is not positive definite");
  lstar_ = llt.matrixU();
  MatrixXcd vb = lstar_ * v.basis();
  if (complex_) {
    qperp_ = orthonormal_complement(vb);
  } else {
    MatrixXd real(2 * d, vb.cols());
    for (Eigen::Index k = 0; k < vb.cols(); ++k) real.col(k) = realify(MatrixXcd(vb.col(k)));
    qperp_real_ = vb.cols() == 0 ? MatrixXd(MatrixXd::Identity(2 * d, 2 * d)) : nullspace(MatrixXd(real.transpose()));
  }
}

VectorXd OrbitObjective::vector_residual(const VectorXcd& x) const {
  VectorXcd y = lstar_ * x;
  const double n = y.norm();
  require(n > 0.0, ErrorCode::ZeroVector, "orbit point is zero");
  if (complex_) {
    VectorXcd r = qperp_.adjoint() * y / n;
    return realify(MatrixXcd(r));
  }
  VectorXd yr = realify(MatrixXcd(y));
  return qperp_real_.transpose() * yr / n;
}

VectorXd OrbitObjective::residual(const MatrixXcd& g) const { return vector_residual(rep_->realize_matrix(g) * u_); }

double OrbitObjective::value(const MatrixXcd& g) const { return residual(g).norm(); }

double normalized_distance(const Representation& rep, const VectorXcd& x, const Subspace& v) {
  return OrbitObjective(rep, x, v).vector_residual(x).norm();
}

OrbitSearchResult normalized_orbit_distance(const Representation& rep, const VectorXcd& u, const Subspace& v,
                                            const SearchConfig& cfg, std::uint64_t stream) {
  require(cfg.restarts >= 1 && cfg.max_iterations >= 1 && cfg.tolerance > 0.0, ErrorCode::InvalidArgument,
          "search configuration needs positive restarts, iterations and tolerance");
  const OrbitObjective obj(rep, u, v);
  const GroupSpec& group = rep.group();
  const auto chart = real_algebra_basis(group);
  const std::uint64_t base = derive_seed(cfg.seed, stream);

  OrbitSearchResult res;
  res.argmin = identity_element(group);
  res.min_normalized_distance = std::numeric_limits<double>::infinity();
  const auto total = static_cast<std::size_t>(cfg.restarts);
  for (std::size_t start = 0; start < total; start += kBatch) {
    const std::size_t count = std::min(kBatch, total - start);
    std::vector<RestartOutcome> outcomes(count);
    parallel_for(count, cfg.threads, [&](std::size_t j) {
      const std::size_t r = start + j;
      GroupElement g0 = identity_element(group);
      if (r > 0) {
        Rng rng = make_rng(base, r);
        g0 = sample_group_element(group, rng, cfg.box);
      }
      outcomes[j] = descend(obj, chart, g0, cfg);
    });
    for (auto& o : outcomes) {
      if (o.value < res.min_normalized_distance) {
        res.min_normalized_distance = o.value;
        res.argmin = GroupElement{o.argmin, group};
      }
      res.converged = res.converged && o.converged;
      res.iterations += o.iterations;
      res.trace.push_back(std::move(o.trace));
    }
    res.restarts_used = static_cast<int>(start + count);
    if (res.min_normalized_distance < cfg.tolerance) break;
  }
  res.min_normalized_distance = std::clamp(res.min_normalized_distance, 0.0, 1.0);
  return res;
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Universal: return "Universal";
    case VerdictKind::NotUniversal: return "NotUniversal";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Verdict universality_verdict(const Representation& rep, const Subspace& v, const SearchConfig& cfg,
                             const std::vector<VectorXcd>& adversarial) {
  require(cfg.samples >= 0, ErrorCode::InvalidArgument, "negative sample count");
  const int d = rep.dimension();
  std::vector<VectorXcd> battery;
  for (int j = 0; j < d; ++j) battery.push_back(VectorXcd::Unit(d, j));
  for (const auto& a : adversarial) {
    require(a.size() == d, ErrorCode::InvalidArgument, "adversarial vector has the wrong length");
    battery.push_back(a);
  }
  Rng rng = make_rng(cfg.seed, 0xBA77E27);
  std::normal_distribution<double> normal;
  const bool real = !v.complex_span() || rep.is_real();
  for (int s = 0; s < cfg.samples; ++s) {
    VectorXcd x(d);
    for (int j = 0; j < d; ++j) {
      double re = normal(rng);
      double im = real ? 0.0 : normal(rng);
      x(j) = Complex(re, im);
    }
    battery.push_back(x / x.norm());
  }

  SearchConfig inner = cfg;
  inner.threads = 1;
  Verdict verdict;
  verdict.tolerance = cfg.tolerance;
  verdict.evidence = "numerical evidence";
  std::vector<OrbitSearchResult> results;
  bool witness_found = false;
  for (std::size_t start = 0; start < battery.size() && !witness_found; start += kBatch) {
    const std::size_t count = std::min(kBatch, battery.size() - start);
    std::vector<OrbitSearchResult> batch(count);
    parallel_for(count, cfg.threads, [&](std::size_t j) {
      batch[j] = normalized_orbit_distance(rep, battery[start + j], v, inner, start + j + 1);
    });
    for (std::size_t j = 0; j < count; ++j) {
      const auto& r = batch[j];
      const bool persistent = r.min_normalized_distance >= 10.0 * cfg.tolerance &&
                              r.restarts_used == cfg.restarts && r.restarts_used >= kWitnessRestarts;
      if (persistent && !witness_found) {
        witness_found = true;
        verdict.witness = battery[start + j];
        verdict.witness_index = static_cast<int>(start + j);
        verdict.witness_lower_bound = r.min_normalized_distance;
      }
      results.push_back(batch[j]);
    }
  }

  double sum = 0.0;
  bool all_below = true;
  for (const auto& r : results) {
    verdict.per_sample.push_back(r.min_normalized_distance);
    verdict.max_min_distance = std::max(verdict.max_min_distance, r.min_normalized_distance);
    sum += r.min_normalized_distance;
    verdict.restarts_total += r.restarts_used;
    if (r.min_normalized_distance >= cfg.tolerance) {
      all_below = false;
      if (!r.converged) verdict.budget_exceeded = true;
    }
  }
  verdict.samples = static_cast<int>(results.size());
  verdict.mean_min_distance = results.empty() ? 0.0 : sum / static_cast<double>(results.size());
  if (witness_found) {
    verdict.kind = VerdictKind::NotUniversal;
  } else if (all_below) {
    verdict.kind = VerdictKind::Universal;
  } else {
    verdict.kind = VerdictKind::Inconclusive;
  }
  return verdict;
}

}  // namespace unisub
