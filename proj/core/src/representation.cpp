#include "unisub/representation.hpp"

#include "unisub/error.hpp"
#include "unisub/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace unisub {

namespace {

using Eigen::MatrixXcd;

MatrixXg unit_g(Eigen::Index n, Eigen::Index r, Eigen::Index c) {
  MatrixXg m = MatrixXg::Constant(n, n, GaussRational(0));
  m(r, c) = GaussRational(1);
  return m;
}

MatrixXcd block_diag(const std::vector<MatrixXcd>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  MatrixXcd out = MatrixXcd::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    out.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return out;
}

MatrixXg block_diag(const std::vector<MatrixXg>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  MatrixXg out = MatrixXg::Constant(n, n, GaussRational(0));
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    for (Eigen::Index r = 0; r < b.rows(); ++r)
      for (Eigen::Index c = 0; c < b.cols(); ++c) out(off + r, off + c) = b(r, c);
    off += b.rows();
  }
  return out;
}

MatrixXg exact_inverse_or_throw(const MatrixXg& m) {
  auto inv = exact_inverse<GaussRational>(m);
  require(inv.has_value(), ErrorCode::InvalidArgument, "exact group matrix is singular");
  return *inv;
}

std::vector<Weight> pad_weights(const std::vector<Weight>& w, int before, int after) {
  std::vector<Weight> out;
  for (const auto& x : w) {
    Weight y(static_cast<size_t>(before), 0);
    y.insert(y.end(), x.begin(), x.end());
    y.resize(y.size() + static_cast<size_t>(after), 0);
    out.push_back(y);
  }
  return out;
}

// Weights of the defining representation of a simple or torus factor.
std::vector<Weight> defining_weights(const GroupSpec& spec) {
  switch (spec.kind()) {
    case GroupKind::SU2: return {{1}, {-1}};
    case GroupKind::SU3: return {{1, 0}, {-1, 1}, {0, -1}};
    case GroupKind::Torus: {
      std::vector<Weight> out;
      for (int j = 0; j < spec.parameter(); ++j) {
        Weight w(static_cast<size_t>(spec.parameter()), 0);
        w[static_cast<size_t>(j)] = 1;
        out.push_back(w);
      }
      return out;
    }
    case GroupKind::Complexified: return defining_weights(spec.factors().front());
    case GroupKind::Product: {
      std::vector<Weight> out;
      int total = weight_rank(spec);
      int off = 0;
      for (const auto& f : spec.factors()) {
        int r = weight_rank(f);
        auto part = pad_weights(defining_weights(f), off, total - off - r);
        out.insert(out.end(), part.begin(), part.end());
        off += r;
      }
      return out;
    }
    default: return {};
  }
}

struct AdjointBasis {
  std::vector<MatrixXg> matrices;
  std::vector<Weight> weights;
  std::vector<std::string> labels;
};

AdjointBasis complex_adjoint_basis(const GroupSpec& spec) {
  AdjointBasis out;
  switch (spec.kind()) {
    case GroupKind::SU2: {
      MatrixXg h = unit_g(2, 0, 0);
      h(1, 1) = GaussRational(-1);
      out.matrices = {unit_g(2, 0, 1), h, unit_g(2, 1, 0)};
      out.weights = {{2}, {0}, {-2}};
      out.labels = {"E", "H", "F"};
      return out;
    }
    case GroupKind::SU3: {
      const std::vector<Weight> eps{{1, 0}, {-1, 1}, {0, -1}};
      auto root = [&](int j, int k) {
        return Weight{eps[static_cast<size_t>(j)][0] - eps[static_cast<size_t>(k)][0],
                      eps[static_cast<size_t>(j)][1] - eps[static_cast<size_t>(k)][1]};
      };
      const std::vector<std::pair<int, int>> pos{{0, 1}, {1, 2}, {0, 2}};
      for (auto [j, k] : pos) {
        out.matrices.push_back(unit_g(3, j, k));
        out.weights.push_back(root(j, k));
        out.labels.push_back("E" + std::to_string(j + 1) + std::to_string(k + 1));
      }
      for (int j = 0; j < 2; ++j) {
        MatrixXg h = unit_g(3, j, j);
        h(j + 1, j + 1) = GaussRational(-1);
        out.matrices.push_back(h);
        out.weights.push_back({0, 0});
        out.labels.push_back("H" + std::to_string(j + 1));
      }
      for (auto [j, k] : pos) {
        out.matrices.push_back(unit_g(3, k, j));
        out.weights.push_back(root(k, j));
        out.labels.push_back("E" + std::to_string(k + 1) + std::to_string(j + 1));
      }
      return out;
    }
    case GroupKind::Torus: {
      const int k = spec.parameter();
      for (int j = 0; j < k; ++j) {
        out.matrices.push_back(unit_g(k, j, j));
        out.weights.push_back(Weight(static_cast<size_t>(k), 0));
        out.labels.push_back("T" + std::to_string(j + 1));
      }
      return out;
    }
    case GroupKind::Product: {
      const int n = spec.matrix_size();
      const int total = weight_rank(spec);
      int off = 0;
      int woff = 0;
      for (size_t f = 0; f < spec.factors().size(); ++f) {
        const auto& fs = spec.factors()[f];
        auto part = complex_adjoint_basis(fs);
        const int r = weight_rank(fs);
        for (size_t k = 0; k < part.matrices.size(); ++k) {
          MatrixXg m = MatrixXg::Constant(n, n, GaussRational(0));
          const auto& b = part.matrices[k];
          for (Eigen::Index i = 0; i < b.rows(); ++i)
            for (Eigen::Index j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
          out.matrices.push_back(m);
          out.labels.push_back(part.labels[k] + "_" + std::to_string(f + 1));
        }
        auto w = pad_weights(part.weights, woff, total - woff - r);
        out.weights.insert(out.weights.end(), w.begin(), w.end());
        off += fs.matrix_size();
        woff += r;
      }
      return out;
    }
    default: break;
  }
  fail(ErrorCode::UnsupportedGroup, "complexified adjoint is not available for " + spec.label());
}

// Coordinates with respect to a basis of matrices, through the left inverse
// (B* B)^-1 B* of the column-stacked basis.
struct Coordinates {
  MatrixXg basis_vec;   // n^2 x d
  MatrixXg left_inv;    // d x n^2
  MatrixXcd basis_vec_d;
  MatrixXcd left_inv_d;
  std::vector<MatrixXcd> basis_d;
};

std::shared_ptr<const Coordinates> make_coordinates(const std::vector<MatrixXg>& basis) {
  auto c = std::make_shared<Coordinates>();
  const Eigen::Index n = basis.front().rows();
  const auto d = static_cast<Eigen::Index>(basis.size());
  c->basis_vec = MatrixXg(n * n, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const auto& b = basis[static_cast<size_t>(k)];
    for (Eigen::Index i = 0; i < n * n; ++i) c->basis_vec(i, k) = b(i);
    c->basis_d.push_back(to_complex(b));
  }
  MatrixXg adj = conjugate_transpose(c->basis_vec);
  MatrixXg gram = adj * c->basis_vec;
  c->left_inv = exact_inverse_or_throw(gram) * adj;
  c->basis_vec_d = to_complex(c->basis_vec);
  c->left_inv_d = to_complex(c->left_inv);
  return c;
}

MatrixXcd conjugation_matrix(const Coordinates& c, const MatrixXcd& g, const MatrixXcd& ginv) {
  const auto d = static_cast<Eigen::Index>(c.basis_d.size());
  const Eigen::Index n = g.rows();
  MatrixXcd cols(n * n, d);
  for (Eigen::Index k = 0; k < d; ++k) cols.col(k) = (g * c.basis_d[static_cast<size_t>(k)] * ginv).reshaped();
  return c.left_inv_d * cols;
}

MatrixXg conjugation_matrix_exact(const Coordinates& c, const std::vector<MatrixXg>& basis, const MatrixXg& g) {
  MatrixXg ginv = exact_inverse_or_throw(g);
  const auto d = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index n = g.rows();
  MatrixXg cols(n * n, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    MatrixXg t = g * basis[static_cast<size_t>(k)];
    MatrixXg y = t * ginv;
    for (Eigen::Index i = 0; i < n * n; ++i) cols(i, k) = y(i);
  }
  return c.left_inv * cols;
}

MatrixXcd bracket_matrix(const Coordinates& c, const MatrixXcd& x) {
  const auto d = static_cast<Eigen::Index>(c.basis_d.size());
  const Eigen::Index n = x.rows();
  MatrixXcd cols(n * n, d);
  for (Eigen::Index k = 0; k < d; ++k) cols.col(k) = bracket(x, c.basis_d[static_cast<size_t>(k)]).reshaped();
  return c.left_inv_d * cols;
}

MatrixXcd dense_inverse(const MatrixXcd& g) { return g.partialPivLu().inverse(); }

}  // namespace

Representation::Representation(GroupSpec group, std::vector<std::string> basis_labels, Realizer realize,
                               MatrixXcd inner_product)
    : group_(std::move(group)), labels_(std::move(basis_labels)), realize_(std::move(realize)),
      inner_(std::move(inner_product)) {
  const auto d = static_cast<Eigen::Index>(labels_.size());
  require(inner_.rows() == d && inner_.cols() == d, ErrorCode::InvalidArgument, "inner product has the wrong size");
  require(max_abs(inner_ - inner_.adjoint()) <= 1e-12 * std::max(1.0, max_abs(inner_)), ErrorCode::InvalidArgument,
          "inner product is not hermitian");
}

Representation Representation::with_weights(std::vector<Weight> weights) const {
  require(static_cast<int>(weights.size()) == dimension(), ErrorCode::InvalidArgument, "one weight per basis vector");
  Representation r = *this;
  r.weights_ = std::move(weights);
  return r;
}

Representation Representation::with_exact(ExactRealizer exact) const {
  Representation r = *this;
  r.exact_ = std::move(exact);
  return r;
}

Representation Representation::with_differential(Differential differential) const {
  Representation r = *this;
  r.differential_ = std::move(differential);
  return r;
}

Representation Representation::with_real_structure(bool real) const {
  Representation r = *this;
  r.real_ = real;
  return r;
}

Representation Representation::with_name(std::string name) const {
  Representation r = *this;
  r.name_ = std::move(name);
  return r;
}

MatrixXcd Representation::realize(const GroupElement& g) const {
  require(g.parent == group_, ErrorCode::ParentMismatch,
          "element of " + g.parent.label() + " given to a representation of " + group_.label());
  return realize_(g.matrix);
}

MatrixXg Representation::realize_exact(const MatrixXg& g) const {
  require(has_exact(), ErrorCode::InvalidArgument, "representation has no exact realization");
  return exact_(g);
}

MatrixXcd Representation::differential(const MatrixXcd& x) const {
  require(has_differential(), ErrorCode::InvalidArgument, "representation has no differential");
  return differential_(x);
}

int weight_rank(const GroupSpec& spec) {
  switch (spec.kind()) {
    case GroupKind::SU2: return 1;
    case GroupKind::SU3: return 2;
    case GroupKind::Torus: return spec.parameter();
    case GroupKind::Complexified: return weight_rank(spec.factors().front());
    case GroupKind::Product: {
      int r = 0;
      for (const auto& f : spec.factors()) r += weight_rank(f);
      return r;
    }
    default: return 0;
  }
}

Representation su2_irrep(int n) {
  require(n >= 0, ErrorCode::InvalidArgument, "irrep degree must be non-negative");
  std::vector<std::string> labels;
  std::vector<Weight> weights;
  MatrixXcd inner = MatrixXcd::Zero(n + 1, n + 1);
  double binom = 1.0;
  for (int i = 0; i <= n; ++i) {
    labels.push_back("x^" + std::to_string(i) + "y^" + std::to_string(n - i));
    weights.push_back({2 * i - n});
    inner(i, i) = 1.0 / binom;
    binom = binom * (n - i) / (i + 1);
  }
  auto realize = [n](const MatrixXcd& g) {
    return su2_polynomial_matrix<Complex>(n, g(0, 0), g(0, 1), g(1, 0), g(1, 1));
  };
  auto exact = [n](const MatrixXg& g) {
    return su2_polynomial_matrix<GaussRational>(n, g(0, 0), g(0, 1), g(1, 0), g(1, 1));
  };
  auto differential = [n](const MatrixXcd& x) {
    MatrixXcd m = MatrixXcd::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
      m(i, i) += static_cast<double>(i) * x(0, 0) + static_cast<double>(n - i) * x(1, 1);
      if (i > 0) m(i - 1, i) += static_cast<double>(i) * x(1, 0);
      if (i < n) m(i + 1, i) += static_cast<double>(n - i) * x(0, 1);
    }
    return m;
  };
  return Representation(GroupSpec::su2(), labels, realize, inner)
      .with_weights(weights)
      .with_exact(exact)
      .with_differential(differential)
      .with_name("U_" + std::to_string(n));
}

Representation defining_representation(const GroupSpec& spec) {
  const int n = spec.matrix_size();
  std::vector<std::string> labels;
  for (int j = 0; j < n; ++j) labels.push_back("e" + std::to_string(j + 1));
  Representation rep(spec, labels, [](const MatrixXcd& g) { return g; }, MatrixXcd::Identity(n, n));
  rep = rep.with_exact([](const MatrixXg& g) { return g; })
            .with_differential([](const MatrixXcd& x) { return x; })
            .with_name("C^" + std::to_string(n));
  auto w = defining_weights(spec);
  if (static_cast<int>(w.size()) == n) rep = rep.with_weights(w);
  return rep;
}

Representation adjoint_representation(const GroupSpec& spec) {
  require(spec.is_compact() && spec.kind() != GroupKind::Generated, ErrorCode::UnsupportedGroup,
          "real adjoint representation needs a compact catalog group");
  const auto basis = exact_algebra_basis(spec);
  const auto d = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index n = spec.matrix_size();
  // Real coordinates: realified basis B (2n^2 x d), Gram B^T B, left inverse.
  MatrixXq b(2 * n * n, d);
  for (Eigen::Index k = 0; k < d; ++k) b.col(k) = realify(basis[static_cast<size_t>(k)]);
  MatrixXq bt = b.transpose();
  MatrixXq gram = bt * b;
  auto gram_inv = exact_inverse<Rational>(gram);
  require(gram_inv.has_value(), ErrorCode::Internal, "algebra basis is dependent");
  auto left = std::make_shared<const MatrixXq>(*gram_inv * bt);
  auto left_d = std::make_shared<const Eigen::MatrixXd>(to_double(*left));
  auto basis_d = std::make_shared<std::vector<MatrixXcd>>();
  for (const auto& x : basis) basis_d->push_back(to_complex(x));
  auto basis_q = std::make_shared<const std::vector<MatrixXg>>(basis);

  std::vector<std::string> labels;
  for (Eigen::Index k = 0; k < d; ++k) labels.push_back("tau" + std::to_string(k + 1));

  auto realize = [left_d, basis_d](const MatrixXcd& g) {
    MatrixXcd ginv = g.adjoint();
    const auto m = static_cast<Eigen::Index>(basis_d->size());
    Eigen::MatrixXd out(m, m);
    for (Eigen::Index k = 0; k < m; ++k)
      out.col(k) = *left_d * realify(MatrixXcd(g * (*basis_d)[static_cast<size_t>(k)] * ginv));
    return MatrixXcd(out.cast<Complex>());
  };
  auto exact = [left, basis_q](const MatrixXg& g) {
    MatrixXg ginv = exact_inverse_or_throw(g);
    const auto m = static_cast<Eigen::Index>(basis_q->size());
    MatrixXg out(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      MatrixXg t = g * (*basis_q)[static_cast<size_t>(k)];
      MatrixXg y = t * ginv;
      VectorXq col = *left * realify(y);
      for (Eigen::Index i = 0; i < m; ++i) out(i, k) = GaussRational(col(i));
    }
    return out;
  };
  auto differential = [left_d, basis_d](const MatrixXcd& x) {
    const auto m = static_cast<Eigen::Index>(basis_d->size());
    Eigen::MatrixXd out(m, m);
    for (Eigen::Index k = 0; k < m; ++k) out.col(k) = *left_d * realify(bracket(x, (*basis_d)[static_cast<size_t>(k)]));
    return MatrixXcd(out.cast<Complex>());
  };
  return Representation(spec, labels, realize, to_double(gram).cast<Complex>())
      .with_exact(exact)
      .with_differential(differential)
      .with_real_structure(true)
      .with_name("Ad(" + spec.label() + ")");
}

Representation complexified_adjoint(const GroupSpec& spec) {
  auto ab = complex_adjoint_basis(spec);
  auto coords = make_coordinates(ab.matrices);
  auto basis_q = std::make_shared<const std::vector<MatrixXg>>(ab.matrices);
  MatrixXcd inner = coords->basis_vec_d.adjoint() * coords->basis_vec_d;
  auto realize = [coords](const MatrixXcd& g) { return conjugation_matrix(*coords, g, dense_inverse(g)); };
  auto exact = [coords, basis_q](const MatrixXg& g) { return conjugation_matrix_exact(*coords, *basis_q, g); };
  auto differential = [coords](const MatrixXcd& x) { return bracket_matrix(*coords, x); };
  std::string label = spec.kind() == GroupKind::SU2 ? "sl(2,C)" : spec.kind() == GroupKind::SU3 ? "sl(3,C)" : "Lie(" + spec.label() + ")_C";
  return Representation(spec, ab.labels, realize, inner)
      .with_weights(ab.weights)
      .with_exact(exact)
      .with_differential(differential)
      .with_name(label);
}

Representation trivial_representation(const GroupSpec& spec, int dimension) {
  require(dimension >= 0, ErrorCode::InvalidArgument, "negative dimension");
  std::vector<std::string> labels;
  for (int j = 0; j < dimension; ++j) labels.push_back("1_" + std::to_string(j + 1));
  Representation rep(spec, labels, [dimension](const MatrixXcd&) { return MatrixXcd(MatrixXcd::Identity(dimension, dimension)); },
                     MatrixXcd::Identity(dimension, dimension));
  rep = rep.with_exact([dimension](const MatrixXg&) { return identity_g(dimension); })
            .with_differential([dimension](const MatrixXcd&) { return MatrixXcd(MatrixXcd::Zero(dimension, dimension)); })
            .with_real_structure(true)
            .with_name(dimension == 0 ? "0" : "trivial^" + std::to_string(dimension));
  if (spec.is_compact())
    rep = rep.with_weights(std::vector<Weight>(static_cast<size_t>(dimension), Weight(static_cast<size_t>(weight_rank(spec)), 0)));
  return rep;
}

Representation zero_representation(const GroupSpec& spec) { return trivial_representation(spec, 0); }

Representation direct_sum(const std::vector<Representation>& reps) {
  require(!reps.empty(), ErrorCode::InvalidArgument, "direct sum of no representations");
  const GroupSpec& group = reps.front().group();
  for (const auto& r : reps)
    require(r.group() == group, ErrorCode::GroupMismatch,
            "direct sum of representations of " + group.label() + " and " + r.group().label());
  std::vector<std::string> labels;
  std::vector<MatrixXcd> inners;
  std::string name;
  bool all_weights = true, all_exact = true, all_diff = true, all_real = true;
  std::vector<Weight> weights;
  for (const auto& r : reps) {
    labels.insert(labels.end(), r.basis_labels().begin(), r.basis_labels().end());
    inners.push_back(r.inner_product());
    if (r.dimension() > 0) name += (name.empty() ? "" : " + ") + r.name();
    if (r.weights()) weights.insert(weights.end(), r.weights()->begin(), r.weights()->end());
    all_weights = all_weights && r.weights().has_value();
    all_exact = all_exact && r.has_exact();
    all_diff = all_diff && r.has_differential();
    all_real = all_real && r.is_real();
  }
  auto parts = std::make_shared<const std::vector<Representation>>(reps);
  Representation out(group, labels,
                     [parts](const MatrixXcd& g) {
                       std::vector<MatrixXcd> blocks;
                       for (const auto& r : *parts) blocks.push_back(r.realize_matrix(g));
                       return block_diag(blocks);
                     },
                     block_diag(inners));
  if (all_weights) out = out.with_weights(weights);
  if (all_exact)
    out = out.with_exact([parts](const MatrixXg& g) {
      std::vector<MatrixXg> blocks;
      for (const auto& r : *parts) blocks.push_back(r.realize_exact(g));
      return block_diag(blocks);
    });
  if (all_diff)
    out = out.with_differential([parts](const MatrixXcd& x) {
      std::vector<MatrixXcd> blocks;
      for (const auto& r : *parts) blocks.push_back(r.differential(x));
      return block_diag(blocks);
    });
  return out.with_real_structure(all_real).with_name(name.empty() ? "0" : name);
}

Representation lift_to_product(const Representation& rep, const GroupSpec& product, std::size_t k) {
  require(product.kind() == GroupKind::Product && k < product.factors().size(), ErrorCode::GroupMismatch,
          "lift needs a product group and a valid factor index");
  require(product.factors()[k] == rep.group(), ErrorCode::GroupMismatch,
          "factor " + std::to_string(k) + " of " + product.label() + " is not " + rep.group().label());
  int off = 0, woff = 0;
  for (size_t j = 0; j < k; ++j) {
    off += product.factors()[j].matrix_size();
    woff += weight_rank(product.factors()[j]);
  }
  const int size = rep.group().matrix_size();
  const int total = weight_rank(product);
  auto base = std::make_shared<const Representation>(rep);
  Representation out(product, rep.basis_labels(),
                     [base, off, size](const MatrixXcd& g) { return base->realize_matrix(g.block(off, off, size, size)); },
                     rep.inner_product());
  if (rep.weights()) out = out.with_weights(pad_weights(*rep.weights(), woff, total - woff - weight_rank(rep.group())));
  if (rep.has_exact())
    out = out.with_exact([base, off, size](const MatrixXg& g) { return base->realize_exact(MatrixXg(g.block(off, off, size, size))); });
  if (rep.has_differential())
    out = out.with_differential([base, off, size](const MatrixXcd& x) { return base->differential(x.block(off, off, size, size)); });
  return out.with_real_structure(rep.is_real()).with_name(rep.name());
}

Representation external_direct_sum(const std::vector<Representation>& reps) {
  require(!reps.empty(), ErrorCode::InvalidArgument, "direct sum of no representations");
  std::vector<GroupSpec> groups;
  for (const auto& r : reps) groups.push_back(r.group());
  GroupSpec product = GroupSpec::product(groups);
  std::vector<Representation> lifted;
  for (size_t k = 0; k < reps.size(); ++k) lifted.push_back(lift_to_product(reps[k], product, k));
  return direct_sum(lifted);
}

Representation restrict_representation(const Representation& rep, const GroupSpec& subgroup,
                                       std::function<MatrixXcd(const MatrixXcd&)> embed,
                                       std::function<MatrixXcd(const MatrixXcd&)> embed_algebra) {
  auto base = std::make_shared<const Representation>(rep);
  Representation out(subgroup, rep.basis_labels(),
                     [base, embed](const MatrixXcd& g) { return base->realize_matrix(embed(g)); }, rep.inner_product());
  if (embed_algebra && rep.has_differential())
    out = out.with_differential([base, embed_algebra](const MatrixXcd& x) { return base->differential(embed_algebra(x)); });
  return out.with_real_structure(rep.is_real()).with_name(rep.name() + "|" + subgroup.label());
}

Representation torus_twisted_sum(const std::vector<std::pair<int, Representation>>& blocks) {
  require(!blocks.empty(), ErrorCode::InvalidArgument, "twisted sum of no blocks");
  const GroupSpec& s = blocks.front().second.group();
  for (const auto& [q, r] : blocks) require(r.group() == s, ErrorCode::GroupMismatch, "blocks act through different groups");
  GroupSpec group = GroupSpec::product({GroupSpec::torus(1), s});
  const int size = s.matrix_size();
  std::vector<std::string> labels;
  std::vector<MatrixXcd> inners;
  std::vector<Weight> weights;
  bool all_weights = true, all_diff = true;
  std::string name;
  for (const auto& [q, r] : blocks) {
    for (const auto& l : r.basis_labels()) labels.push_back(l + "[" + std::to_string(q) + "]");
    inners.push_back(r.inner_product());
    name += (name.empty() ? "" : " + ") + std::string("t^") + std::to_string(q) + "*" + r.name();
    if (r.weights()) {
      for (const auto& w : *r.weights()) {
        Weight x{q};
        x.insert(x.end(), w.begin(), w.end());
        weights.push_back(x);
      }
    }
    all_weights = all_weights && r.weights().has_value();
    all_diff = all_diff && r.has_differential();
  }
  auto parts = std::make_shared<const std::vector<std::pair<int, Representation>>>(blocks);
  Representation out(group, labels,
                     [parts, size](const MatrixXcd& g) {
                       const Complex t = g(0, 0);
                       MatrixXcd a = g.block(1, 1, size, size);
                       std::vector<MatrixXcd> bl;
                       for (const auto& [q, r] : *parts) bl.push_back(std::pow(t, q) * r.realize_matrix(a));
                       return block_diag(bl);
                     },
                     block_diag(inners));
  if (all_weights) out = out.with_weights(weights);
  if (all_diff)
    out = out.with_differential([parts, size](const MatrixXcd& x) {
      const Complex s0 = x(0, 0);
      MatrixXcd a = x.block(1, 1, size, size);
      std::vector<MatrixXcd> bl;
      for (const auto& [q, r] : *parts) {
        MatrixXcd d = r.differential(a);
        d += static_cast<double>(q) * s0 * MatrixXcd::Identity(d.rows(), d.cols());
        bl.push_back(d);
      }
      return block_diag(bl);
    });
  return out.with_name(name);
}

QuotientModel quotient_model(const Representation& rep, const MatrixXcd& invariant_basis) {
  const int d = rep.dimension();
  require(invariant_basis.rows() == d, ErrorCode::InvalidArgument, "invariant basis has the wrong length");
  Eigen::LLT<MatrixXcd> llt(rep.inner_product());
  require(llt.info() == Eigen::Success, ErrorCode::InvalidArgument, "inner product is not positive definite");
  MatrixXcd lstar = llt.matrixU();  // H = L L*, U = L*
  MatrixXcd lstar_inv = lstar.inverse();
  MatrixXcd comp = orthonormal_complement(MatrixXcd(lstar * invariant_basis));
  QuotientModel qm;
  qm.complement = lstar_inv * comp;
  MatrixXcd left = comp.adjoint() * lstar;
  MatrixXcd right = lstar_inv * comp;
  qm.coordinates = left;
  qm.project = [left, right](const MatrixXcd& m) { return MatrixXcd(left * m * right); };
  return qm;
}

Representation quotient_representation(const Representation& rep, const MatrixXcd& invariant_basis) {
  auto qm = quotient_model(rep, invariant_basis);
  const auto k = qm.complement.cols();
  std::vector<std::string> labels;
  for (Eigen::Index j = 0; j < k; ++j) labels.push_back("q" + std::to_string(j + 1));
  auto base = std::make_shared<const Representation>(rep);
  auto project = qm.project;
  Representation out(rep.group(), labels, [base, project](const MatrixXcd& g) { return project(base->realize_matrix(g)); },
                     MatrixXcd::Identity(k, k));
  if (rep.has_differential())
    out = out.with_differential([base, project](const MatrixXcd& x) { return project(base->differential(x)); });
  return out.with_name(rep.name() + "/V");
}

Subspace Subspace::span(std::shared_ptr<const Representation> ambient, MatrixXcd basis, bool complex_span) {
  require(ambient != nullptr, ErrorCode::InvalidArgument, "subspace needs an ambient representation");
  require(basis.rows() == ambient->dimension(), ErrorCode::InvalidArgument, "basis vectors have the wrong length");
  if (basis.cols() > 0) {
    Eigen::Index rank = 0;
    if (complex_span) {
      rank = numerical_rank(basis);
    } else {
      Eigen::MatrixXd real(2 * basis.rows(), basis.cols());
      for (Eigen::Index k = 0; k < basis.cols(); ++k) real.col(k) = realify(MatrixXcd(basis.col(k)));
      rank = numerical_rank(real);
    }
    require(rank == basis.cols(), ErrorCode::InvalidArgument, "subspace basis is linearly dependent");
  }
  Subspace s;
  s.kind_ = Kind::BasisSpan;
  s.ambient_ = std::move(ambient);
  s.basis_ = std::move(basis);
  s.complex_ = complex_span;
  return s;
}

Subspace Subspace::span_exact(std::shared_ptr<const Representation> ambient, MatrixXg basis, bool complex_span) {
  require(ambient != nullptr, ErrorCode::InvalidArgument, "subspace needs an ambient representation");
  require(basis.rows() == ambient->dimension(), ErrorCode::InvalidArgument, "basis vectors have the wrong length");
  Eigen::Index rank = 0;
  if (complex_span) {
    rank = exact_rank<GaussRational>(basis);
  } else {
    MatrixXq real(2 * basis.rows(), basis.cols());
    for (Eigen::Index k = 0; k < basis.cols(); ++k) real.col(k) = realify(MatrixXg(basis.col(k)));
    rank = exact_rank<Rational>(real);
  }
  require(rank == basis.cols(), ErrorCode::InvalidArgument, "subspace basis is linearly dependent");
  Subspace s = span(std::move(ambient), to_complex(basis), complex_span);
  s.exact_ = std::move(basis);
  return s;
}

Subspace Subspace::weight_complement(std::shared_ptr<const Representation> ambient, std::vector<int> indices,
                                     bool complex_span) {
  require(ambient != nullptr, ErrorCode::InvalidArgument, "subspace needs an ambient representation");
  const int d = ambient->dimension();
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  for (int i : indices) require(i >= 0 && i < d, ErrorCode::IndexOutOfRange, "basis index " + std::to_string(i) + " out of range");
  std::vector<int> kept;
  for (int j = 0; j < d; ++j)
    if (!std::binary_search(indices.begin(), indices.end(), j)) kept.push_back(j);
  MatrixXg basis = MatrixXg::Constant(d, static_cast<Eigen::Index>(kept.size()), GaussRational(0));
  for (size_t c = 0; c < kept.size(); ++c) basis(kept[c], static_cast<Eigen::Index>(c)) = GaussRational(1);
  Subspace s;
  s.kind_ = Kind::WeightComplement;
  s.ambient_ = std::move(ambient);
  s.basis_ = to_complex(basis);
  s.exact_ = std::move(basis);
  s.removed_ = std::move(indices);
  s.complex_ = complex_span;
  return s;
}

bool Subspace::is_proper() const {
  const int d = ambient_->dimension();
  if (complex_) return dimension() < d;
  return dimension() < (ambient_->is_real() ? d : 2 * d);
}

bool Subspace::contains(const Eigen::VectorXcd& u, double tol) const {
  require(u.size() == ambient_->dimension(), ErrorCode::InvalidArgument, "vector has the wrong length");
  const double scale = std::max(1.0, u.norm());
  if (basis_.cols() == 0) return u.norm() <= tol * scale;
  if (complex_) {
    Eigen::VectorXcd x = basis_.completeOrthogonalDecomposition().solve(u);
    return (basis_ * x - u).norm() <= tol * scale;
  }
  Eigen::MatrixXd real(2 * basis_.rows(), basis_.cols());
  for (Eigen::Index k = 0; k < basis_.cols(); ++k) real.col(k) = realify(MatrixXcd(basis_.col(k)));
  Eigen::VectorXd b = realify(MatrixXcd(u));
  Eigen::VectorXd x = real.completeOrthogonalDecomposition().solve(b);
  return (real * x - b).norm() <= tol * scale;
}

bool Subspace::contains_exact(const VectorXg& u) const {
  require(u.size() == ambient_->dimension(), ErrorCode::InvalidArgument, "vector has the wrong length");
  if (kind_ == Kind::WeightComplement) {
    for (int i : removed_)
      if (!u(i).is_zero()) return false;
    if (complex_) return true;
  }
  require(exact_.has_value(), ErrorCode::InvalidArgument, "subspace has no exact basis");
  const auto& b = *exact_;
  if (complex_) {
    MatrixXg aug(b.rows(), b.cols() + 1);
    aug << b, u;
    return exact_rank<GaussRational>(aug) == b.cols();
  }
  MatrixXq aug(2 * b.rows(), b.cols() + 1);
  for (Eigen::Index k = 0; k < b.cols(); ++k) aug.col(k) = realify(MatrixXg(b.col(k)));
  aug.col(b.cols()) = realify(MatrixXg(u));
  return exact_rank<Rational>(aug) == b.cols();
}

WeightDecomposition weight_decomposition(const Representation& rep, const GroupSpec& torus) {
  require(rep.weights().has_value(), ErrorCode::InvalidArgument, "representation carries no weights");
  require(torus.kind() == GroupKind::Torus, ErrorCode::GroupMismatch, "weight decomposition needs a torus");
  const int k = torus.parameter();
  const int full = weight_rank(rep.group());
  int take = 0;
  if (k == full) {
    take = full;
  } else if (rep.group().kind() == GroupKind::Product && rep.group().factors().front() == torus) {
    take = k;
  } else {
    fail(ErrorCode::GroupMismatch, torus.label() + " is neither the maximal nor a central torus of " + rep.group().label());
  }
  std::map<Weight, std::vector<int>> groups;
  const auto& w = *rep.weights();
  for (size_t j = 0; j < w.size(); ++j) {
    Weight key(w[j].begin(), w[j].begin() + take);
    groups[key].push_back(static_cast<int>(j));
  }
  WeightDecomposition out;
  for (auto& [key, idx] : groups) out.blocks.push_back({key, idx});
  return out;
}

std::vector<Hyperplane> t_invariant_hyperplanes(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "hyperplanes need n >= 1");
  auto rep = std::make_shared<const Representation>(su2_irrep(n));
  std::vector<Hyperplane> out;
  for (int i = 0; i <= n; ++i) out.push_back({Subspace::weight_complement(rep, {i}), i, 2 * i - n});
  return out;
}

std::vector<Weight> quotient_weights(const Subspace& v) {
  require(v.kind() == Subspace::Kind::WeightComplement, ErrorCode::InvalidArgument,
          "quotient weights are defined for weight complements");
  require(v.ambient().weights().has_value(), ErrorCode::InvalidArgument, "ambient representation carries no weights");
  std::vector<Weight> out;
  for (int i : v.removed_indices()) out.push_back((*v.ambient().weights())[static_cast<size_t>(i)]);
  return out;
}

}  // namespace unisub
