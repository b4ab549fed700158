#include "unisub/root_system.hpp"

#include "unisub/error.hpp"
#include "unisub/linalg.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace unisub {

namespace {

struct Block {
  Eigen::MatrixXi cartan;  // empty for torus blocks
  int coords = 0;
};

void collect_blocks(const GroupSpec& spec, std::vector<Block>& out) {
  switch (spec.kind()) {
    case GroupKind::SU2: {
      Eigen::MatrixXi c(1, 1);
      c << 2;
      out.push_back({c, 1});
      return;
    }
    case GroupKind::SU3: {
      Eigen::MatrixXi c(2, 2);
      c << 2, -1, -1, 2;
      out.push_back({c, 2});
      return;
    }
    case GroupKind::Torus: out.push_back({Eigen::MatrixXi(0, 0), spec.parameter()}); return;
    case GroupKind::Complexified: collect_blocks(spec.factors().front(), out); return;
    case GroupKind::Product:
      for (const auto& f : spec.factors()) collect_blocks(f, out);
      return;
    case GroupKind::UpperTriangular:
    case GroupKind::Generated: break;
  }
  fail(ErrorCode::UnsupportedGroup, "no root system for " + spec.label());
}

}  // namespace

Weight act(const Eigen::MatrixXi& w, const Weight& lambda) {
  Weight out(lambda.size(), 0);
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    int s = 0;
    for (Eigen::Index c = 0; c < w.cols(); ++c) s += w(r, c) * lambda[static_cast<size_t>(c)];
    out[static_cast<size_t>(r)] = s;
  }
  return out;
}

Weight negate(const Weight& lambda) {
  Weight out(lambda);
  for (auto& x : out) x = -x;
  return out;
}

Weight add(const Weight& a, const Weight& b) {
  require(a.size() == b.size(), ErrorCode::InvalidArgument, "weight lengths differ");
  Weight out(a);
  for (size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Eigen::MatrixXi simple_reflection(const RootSystem& rs, std::size_t i) {
  require(i < rs.simple_roots.size(), ErrorCode::IndexOutOfRange, "simple root index out of range");
  Eigen::MatrixXi s = Eigen::MatrixXi::Identity(rs.rank, rs.rank);
  const auto& alpha = rs.simple_roots[i];
  const int c = rs.simple_coordinate[i];
  for (int r = 0; r < rs.rank; ++r) s(r, c) -= alpha[static_cast<size_t>(r)];
  return s;
}

std::vector<Rational> simple_root_coefficients(const RootSystem& rs, const Weight& lambda) {
  require(static_cast<int>(lambda.size()) == rs.rank, ErrorCode::InvalidRoots, "weight has the wrong length");
  const auto m = static_cast<Eigen::Index>(rs.simple_roots.size());
  MatrixXq aug(rs.rank, m + 1);
  for (int r = 0; r < rs.rank; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) aug(r, c) = Rational(rs.simple_roots[static_cast<size_t>(c)][static_cast<size_t>(r)]);
    aug(r, m) = Rational(lambda[static_cast<size_t>(r)]);
  }
  auto ech = rref<Rational>(aug);
  require(ech.pivots.empty() || ech.pivots.back() < m, ErrorCode::InvalidRoots,
          "weight is not in the span of the simple roots");
  std::vector<Rational> coeffs(static_cast<size_t>(m), Rational(0));
  for (size_t k = 0; k < ech.pivots.size(); ++k)
    coeffs[static_cast<size_t>(ech.pivots[k])] = ech.reduced(static_cast<Eigen::Index>(k), m);
  return coeffs;
}

bool is_root(const RootSystem& rs, const Weight& lambda) {
  return std::find(rs.roots.begin(), rs.roots.end(), lambda) != rs.roots.end();
}

RootSystem build_root_system(const GroupSpec& spec) {
  std::vector<Block> blocks;
  collect_blocks(spec, blocks);
  RootSystem rs;
  for (const auto& b : blocks) rs.rank += b.coords;
  int nsimple = 0;
  for (const auto& b : blocks) nsimple += static_cast<int>(b.cartan.rows());
  rs.cartan = Eigen::MatrixXi::Zero(nsimple, nsimple);

  int offset = 0;
  int sidx = 0;
  for (const auto& b : blocks) {
    const auto r = b.cartan.rows();
    rs.cartan.block(sidx, sidx, r, r) = b.cartan;
    for (Eigen::Index j = 0; j < r; ++j) {
      Weight alpha(static_cast<size_t>(rs.rank), 0);
      for (Eigen::Index k = 0; k < r; ++k) alpha[static_cast<size_t>(offset + k)] = b.cartan(j, k);
      rs.simple_roots.push_back(alpha);
      rs.simple_coordinate.push_back(offset + static_cast<int>(j));
    }
    offset += b.coords;
    sidx += static_cast<int>(r);
  }

  // Roots of a simply-laced system form the Weyl orbit of the simple roots.
  std::set<Weight> seen(rs.simple_roots.begin(), rs.simple_roots.end());
  std::deque<Weight> queue(rs.simple_roots.begin(), rs.simple_roots.end());
  std::vector<Eigen::MatrixXi> refl;
  for (size_t i = 0; i < rs.simple_roots.size(); ++i) refl.push_back(simple_reflection(rs, i));
  while (!queue.empty()) {
    Weight w = queue.front();
    queue.pop_front();
    for (const auto& s : refl) {
      Weight v = act(s, w);
      if (seen.insert(v).second) queue.push_back(v);
    }
  }

  std::vector<std::pair<Rational, Weight>> positive;
  for (const auto& w : seen) {
    auto coeffs = simple_root_coefficients(rs, w);
    bool nonneg = std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c.sign() >= 0; });
    if (!nonneg) continue;
    Rational height(0);
    for (const auto& c : coeffs) height += c;
    positive.emplace_back(height, w);
  }
  std::sort(positive.begin(), positive.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  });
  for (const auto& p : positive) rs.positive_roots.push_back(p.second);
  rs.roots = rs.positive_roots;
  for (const auto& p : rs.positive_roots) rs.roots.push_back(negate(p));
  return rs;
}

WeylGroup weyl_group(const RootSystem& rs) {
  std::vector<Eigen::MatrixXi> gens;
  for (size_t i = 0; i < rs.simple_roots.size(); ++i) gens.push_back(simple_reflection(rs, i));
  auto key = [](const Eigen::MatrixXi& m) { return std::vector<int>(m.data(), m.data() + m.size()); };
  WeylGroup w;
  std::set<std::vector<int>> seen;
  Eigen::MatrixXi id = Eigen::MatrixXi::Identity(rs.rank, rs.rank);
  w.elements.push_back(id);
  seen.insert(key(id));
  for (size_t head = 0; head < w.elements.size(); ++head) {
    for (const auto& s : gens) {
      Eigen::MatrixXi next = s * w.elements[head];
      if (seen.insert(key(next)).second) w.elements.push_back(next);
    }
  }
  return w;
}

}  // namespace unisub
