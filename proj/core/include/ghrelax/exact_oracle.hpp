#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ghrelax/metric_space.hpp"

namespace ghrelax {

/// Enumeration limits.
inline constexpr int kMaxRelationCells = 20;
inline constexpr int kMaxBijectionSize = 9;

struct OracleResult {
  double value = 0.0;
  /// Optimal correspondence as sorted (i, j) pairs.
  std::vector<std::pair<int, int>> argmin;
  std::uint64_t enumerated_count = 0;
};

/// 1/2 min over relations covering X and Y of max |d_X - d_Y| on R x R.
/// Requires |X| |Y| <= kMaxRelationCells.
OracleResult exact_gh(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Same minimum restricted to bijections. Requires |X| = |Y| <= kMaxBijectionSize.
OracleResult exact_gh_bijective(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Scaling of the rank-one objective sum Gamma^p mu mu^T before the 1/p root.
enum class Normalization {
  MaxSquared,  ///< divide by max(n, m)^2, as in relaxed_distance
  None,
};

/// 1/2 (scale * sum Gamma^p_{ab} mu_a mu_b)^(1/p) minimized over covering
/// relations, with mu weighted as in lift_correspondence.
OracleResult exact_gh_p_rank1(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double p,
                              Normalization normalization = Normalization::MaxSquared);

}  // namespace ghrelax
