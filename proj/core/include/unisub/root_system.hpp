#pragma once

// Root data for A1, A2, tori and their products, in fundamental-weight
// (Dynkin label) coordinates; torus factors contribute character exponents.
// For SU(2) the positive root is 2 and x^i y^(n-i) has weight 2i-n.

#include "unisub/lie_group.hpp"

#include <Eigen/Dense>

#include <vector>

namespace unisub {

using Weight = std::vector<int>;

struct RootSystem {
  int rank = 0;
  std::vector<Weight> roots;           // positive roots followed by their negatives
  std::vector<Weight> positive_roots;  // ordered by height, then by descending coordinates
  std::vector<Weight> simple_roots;
  Eigen::MatrixXi cartan;              // block Cartan matrix over the semisimple coordinates
  std::vector<int> simple_coordinate;  // weight coordinate carrying the Dynkin label of simple root i
};

struct WeylGroup {
  std::vector<Eigen::MatrixXi> elements;  // identity first
  [[nodiscard]] std::size_t order() const { return elements.size(); }
};

RootSystem build_root_system(const GroupSpec& spec);
WeylGroup weyl_group(const RootSystem& rs);

Eigen::MatrixXi simple_reflection(const RootSystem& rs, std::size_t i);
Weight act(const Eigen::MatrixXi& w, const Weight& lambda);
/// Coefficients of `lambda` over the simple roots; throws InvalidRoots if
/// `lambda` has a component outside their span.
std::vector<Rational> simple_root_coefficients(const RootSystem& rs, const Weight& lambda);
bool is_root(const RootSystem& rs, const Weight& lambda);
Weight negate(const Weight& lambda);
Weight add(const Weight& a, const Weight& b);

}  // namespace unisub
