#include "unisub/levi.hpp"

#include "unisub/error.hpp"
#include "unisub/linalg.hpp"

#include <memory>

namespace unisub {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;

int central_size(const GroupSpec& g) {
  if (g.kind() == GroupKind::Product && g.factors().front().kind() == GroupKind::Torus) return g.factors().front().matrix_size();
  return 0;
}

MatrixXcd select(const MatrixXcd& m, const std::vector<int>& idx) {
  const auto n = static_cast<Index>(idx.size());
  MatrixXcd out(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) out(r, c) = m(idx[static_cast<size_t>(r)], idx[static_cast<size_t>(c)]);
  return out;
}

Representation block_representation(const Representation& rep, const std::vector<int>& idx) {
  auto base = std::make_shared<const Representation>(rep);
  std::vector<std::string> labels;
  for (int i : idx) labels.push_back(rep.basis_labels()[static_cast<size_t>(i)]);
  Representation out(rep.group(), labels, [base, idx](const MatrixXcd& g) { return select(base->realize_matrix(g), idx); },
                     select(rep.inner_product(), idx));
  if (rep.has_differential())
    out = out.with_differential([base, idx](const MatrixXcd& x) { return select(base->differential(x), idx); });
  return out.with_real_structure(rep.is_real()).with_name(rep.name() + "[block]");
}

void check_central(const Representation& rep, const SearchConfig& cfg) {
  const GroupSpec& g = rep.group();
  require(g.is_compact(), ErrorCode::NotCentral,
          g.label() + " is not compact; its radical is not a central torus and the Levi reduction does not apply");
  const int k = central_size(g);
  if (k == 0) return;
  Rng rng = make_rng(cfg.seed, 0xCE27);
  const GroupSpec& torus = g.factors().front();
  for (int s = 0; s < 16; ++s) {
    MatrixXcd r = MatrixXcd::Identity(g.matrix_size(), g.matrix_size());
    r.topLeftCorner(k, k) = sample_group_element(torus, rng).matrix;
    MatrixXcd x = sample_group_element(g, rng).matrix;
    MatrixXcd pr = rep.realize_matrix(r);
    MatrixXcd px = rep.realize_matrix(x);
    require(max_abs(pr * px - px * pr) <= 1e-9 * std::max(1.0, max_abs(pr) * max_abs(px)), ErrorCode::NotCentral,
            "sampled torus element does not commute with " + g.label());
  }
}

}  // namespace

GroupSpec levi_factor(const GroupSpec& g) {
  switch (g.kind()) {
    case GroupKind::SU2:
    case GroupKind::SU3: return g;
    case GroupKind::Product: {
      std::vector<GroupSpec> rest;
      for (const auto& f : g.factors()) {
        if (f.kind() == GroupKind::Torus) {
          require(rest.empty() && &f == &g.factors().front(), ErrorCode::UnsupportedGroup,
                  "central torus must be the first factor of " + g.label());
          continue;
        }
        rest.push_back(f);
      }
      require(!rest.empty(), ErrorCode::UnsupportedGroup, g.label() + " has no semisimple part");
      return rest.size() == 1 ? rest.front() : GroupSpec::product(rest);
    }
    case GroupKind::Torus: fail(ErrorCode::UnsupportedGroup, g.label() + " has no semisimple part");
    default: break;
  }
  fail(ErrorCode::NotCentral, g.label() + " is not a compact catalog group");
}

MatrixXcd embed_levi(const GroupSpec& g, const MatrixXcd& s) {
  if (central_size(g) == 0) return s;
  MatrixXcd m = MatrixXcd::Identity(g.matrix_size(), g.matrix_size());
  m.bottomRightCorner(s.rows(), s.cols()) = s;
  return m;
}

Representation restrict_to_levi(const Representation& rep) {
  const GroupSpec g = rep.group();
  const GroupSpec s = levi_factor(g);
  const int k = central_size(g);
  auto embed = [g](const MatrixXcd& x) { return embed_levi(g, x); };
  auto embed_algebra = [g, k](const MatrixXcd& x) {
    if (k == 0) return x;
    MatrixXcd m = MatrixXcd::Zero(g.matrix_size(), g.matrix_size());
    m.bottomRightCorner(x.rows(), x.cols()) = x;
    return m;
  };
  return restrict_representation(rep, s, embed, embed_algebra);
}

LeviReport levi_restriction_check(const Representation& rep, const Subspace& v, const SearchConfig& cfg) {
  require(v.ambient().dimension() == rep.dimension(), ErrorCode::InvalidArgument, "subspace lives in a different model space");
  require(v.complex_span(), ErrorCode::InvalidArgument, "Levi reduction needs a complex subspace");
  check_central(rep, cfg);
  const GroupSpec& g = rep.group();
  LeviReport report;
  report.levi_factor = levi_factor(g);
  const Representation srep = restrict_to_levi(rep);

  std::vector<WeightBlock> blocks;
  const int k = central_size(g);
  if (k == 0) {
    std::vector<int> all(static_cast<size_t>(rep.dimension()));
    for (int i = 0; i < rep.dimension(); ++i) all[static_cast<size_t>(i)] = i;
    blocks.push_back({Weight{}, all});
  } else {
    blocks = weight_decomposition(rep, g.factors().front()).blocks;
  }

  const MatrixXcd& vb = v.basis();
  int total = 0;
  std::vector<MatrixXcd> pieces;
  for (const auto& b : blocks) {
    std::vector<bool> inside(static_cast<size_t>(rep.dimension()), false);
    for (int i : b.indices) inside[static_cast<size_t>(i)] = true;
    MatrixXcd outside(rep.dimension() - static_cast<int>(b.indices.size()), vb.cols());
    Index r = 0;
    for (int i = 0; i < rep.dimension(); ++i)
      if (!inside[static_cast<size_t>(i)]) outside.row(r++) = vb.row(i);
    MatrixXcd coeffs = vb.cols() == 0 ? MatrixXcd(0, 0) : (outside.rows() == 0 ? MatrixXcd(MatrixXcd::Identity(vb.cols(), vb.cols())) : nullspace(outside));
    MatrixXcd meet = vb * coeffs;
    MatrixXcd local(static_cast<Index>(b.indices.size()), meet.cols());
    for (size_t j = 0; j < b.indices.size(); ++j) local.row(static_cast<Index>(j)) = meet.row(b.indices[j]);
    total += static_cast<int>(meet.cols());
    pieces.push_back(local.cols() == 0 ? local : orthonormal_basis(local));
  }
  require(total == v.dimension(), ErrorCode::NotBlockwise,
          "V is not the sum of its intersections with the central weight spaces (" + std::to_string(total) + " of " +
              std::to_string(v.dimension()) + " dimensions)");

  report.blocks_all_universal = true;
  for (size_t j = 0; j < blocks.size(); ++j) {
    auto brep = std::make_shared<const Representation>(block_representation(srep, blocks[j].indices));
    Subspace vj = Subspace::span(brep, pieces[j], true);
    LeviBlock lb;
    lb.central_weight = blocks[j].weight;
    lb.indices = blocks[j].indices;
    lb.v_dimension = vj.dimension();
    lb.verdict = universality_verdict(*brep, vj, cfg);
    report.blocks_all_universal = report.blocks_all_universal && lb.verdict.kind == VerdictKind::Universal;
    report.blocks.push_back(std::move(lb));
  }

  auto sptr = std::make_shared<const Representation>(srep);
  report.levi_verdict = universality_verdict(*sptr, Subspace::span(sptr, vb, true), cfg);
  report.group_verdict = universality_verdict(rep, v, cfg);
  report.overall = report.levi_verdict.kind;
  report.agrees = report.levi_verdict.kind == report.group_verdict.kind;
  return report;
}

GroupSpec block_extension_group() {
  std::vector<MatrixXcd> basis;
  for (const auto& x : real_algebra_basis(GroupSpec::su2())) {
    MatrixXcd m = MatrixXcd::Zero(4, 4);
    m.topLeftCorner(2, 2) = x;
    m.bottomRightCorner(2, 2) = x;
    basis.push_back(m);
  }
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      for (Complex z : {Complex(1, 0), Complex(0, 1)}) {
        MatrixXcd m = MatrixXcd::Zero(4, 4);
        m(r, 2 + c) = z;
        basis.push_back(m);
      }
    }
  }
  return GroupSpec::generated("SU(2)xgl(2,C) block group", basis, false);
}

Representation block_extension_representation() {
  const GroupSpec g = block_extension_group();
  Representation rep(g, {"e1", "e2", "e1'", "e2'"}, [](const MatrixXcd& m) { return m; }, MatrixXcd::Identity(4, 4));
  return rep.with_differential([](const MatrixXcd& x) { return x; }).with_name("C^2+C^2");
}

Representation block_extension_levi_representation() {
  const Representation rep = block_extension_representation();
  auto embed = [](const MatrixXcd& a) {
    MatrixXcd m = MatrixXcd::Zero(4, 4);
    m.topLeftCorner(2, 2) = a;
    m.bottomRightCorner(2, 2) = a;
    return m;
  };
  return restrict_representation(rep, GroupSpec::su2(), embed, embed);
}

}  // namespace unisub
