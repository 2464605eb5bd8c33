#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ghrelax/metric_space.hpp"

namespace ghrelax {

/// A hard correspondence given as a map X -> Y.
struct Matching {
  std::vector<int> map;
  bool bijective = false;
  /// 1/2 max |d_X(i,i') - d_Y(map(i),map(i'))|; an upper bound on d_GH when
  /// the map is a bijection.
  double distortion = 0.0;

  std::vector<std::pair<int, int>> pairs() const;
};

/// Minimum-cost assignment of every row of an n x m cost matrix (n <= m) to a
/// distinct column, Kuhn-Munkres with potentials. Ties go to the lowest column.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost);

/// Maximum-weight perfect matching on a square weight matrix.
std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weight);

bool is_bijection(const std::vector<int>& map, int m);

/// 1/2 max_{i,i'} |d_X(i,i') - d_Y(map(i), map(i'))|.
double distortion_of_matching(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                              const std::vector<int>& map);

}  // namespace ghrelax
