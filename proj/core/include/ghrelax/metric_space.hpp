#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ghrelax/error.hpp"

namespace ghrelax {

/// Default triangle/symmetry tolerance, relative to the largest matrix entry.
inline constexpr double kDefaultMetricTolerance = 1e-9;

/// Raised by validation when d(i,k) > d(i,j) + d(j,k) + tolerance.
class TriangleViolationError : public Error {
 public:
  TriangleViolationError(int i, int j, int k, const std::string& message)
      : Error(ErrorCode::TriangleViolation, message), i(i), j(j), k(k) {}
  int i, j, k;
};

/// A finite (pseudo)metric space given by its distance matrix.
///
/// Instances are immutable. Repeated points (zero off-diagonal entries) are
/// allowed; only symmetry, zero diagonal, finiteness and the triangle
/// inequality are enforced, unless the space was built through `unchecked`.
class FiniteMetricSpace {
 public:
  /// Validates the three metric axioms within `tau_rel * max|entry|`.
  static FiniteMetricSpace validated(Eigen::MatrixXd dist,
                                     double tau_rel = kDefaultMetricTolerance,
                                     std::vector<std::string> labels = {});

  /// Accepts a symmetric, zero-diagonal, finite matrix without checking the
  /// triangle inequality. Used for the large-K graph pseudo-distances.
  static FiniteMetricSpace unchecked(Eigen::MatrixXd dist, std::vector<std::string> labels = {});

  int size() const noexcept { return static_cast<int>(dist_.rows()); }
  double operator()(int i, int j) const { return dist_(i, j); }
  const Eigen::MatrixXd& matrix() const noexcept { return dist_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double diameter() const { return size() == 0 ? 0.0 : dist_.maxCoeff(); }

  /// Relabels points: result(a, b) = this(perm[a], perm[b]).
  FiniteMetricSpace permuted(const std::vector<int>& perm) const;
  /// Multiplies every distance by `factor` (> 0).
  FiniteMetricSpace scaled(double factor) const;

 private:
  FiniteMetricSpace(Eigen::MatrixXd dist, std::vector<std::string> labels)
      : dist_(std::move(dist)), labels_(std::move(labels)) {}

  Eigen::MatrixXd dist_;
  std::vector<std::string> labels_;
};

/// Checks square shape, finiteness, zero diagonal, symmetry and triangle
/// inequality; throws the first failure found.
FiniteMetricSpace validate_metric(const Eigen::MatrixXd& dist,
                                  double tau_rel = kDefaultMetricTolerance);

/// Euclidean distances between the given points.
FiniteMetricSpace from_point_cloud(const std::vector<std::vector<double>>& points);
FiniteMetricSpace from_point_cloud(const Eigen::MatrixXd& rows_as_points);

struct SimpleGraph {
  SimpleGraph(int vertex_count, std::vector<std::pair<int, int>> edges);

  int vertex_count;
  /// Normalized so that first < second, sorted.
  std::vector<std::pair<int, int>> edges;

  bool has_edge(int u, int v) const;
  std::vector<int> degrees() const;
  /// Graph with vertex v renamed to perm[v].
  SimpleGraph relabeled(const std::vector<int>& perm) const;
};

enum class GraphMetricMode {
  /// Requires 1 < K <= 2 so the result is a true metric.
  Strict,
  /// Any K > 1; triangle validation is skipped (large-K pseudo-distance).
  LiteralLargeK,
};

/// d(v,v') = 1 on edges, K on non-edges, 0 on the diagonal.
FiniteMetricSpace graph_to_metric(const SimpleGraph& g, double K = 2.0,
                                  GraphMetricMode mode = GraphMetricMode::Strict);

struct EpsilonNet {
  std::vector<int> indices;
  double epsilon = 0.0;
  /// Largest distance from a parent point to its nearest net point.
  double covering_radius = 0.0;
};

/// Greedy farthest-point net starting from point 0.
EpsilonNet epsilon_net(const FiniteMetricSpace& space, double epsilon);

/// Restriction of `space` to the given indices (in that order).
FiniteMetricSpace subspace(const FiniteMetricSpace& space, const std::vector<int>& indices);

/// Duplicates points up to `target_n`. `indices[a]` names the source point of
/// new point a; when omitted, the originals come first followed by
/// round-robin copies 0, 1, 2, ...
FiniteMetricSpace pad_with_repeats(const FiniteMetricSpace& space, int target_n,
                                   const std::optional<std::vector<int>>& indices = std::nullopt);

/// Uniform noise in [-magnitude, magnitude] on each off-diagonal pair, then
/// shortest-path closure so the result is again a metric.
FiniteMetricSpace perturb(const FiniteMetricSpace& space, double magnitude, std::uint64_t seed);

/// Floyd-Warshall closure of a nonnegative symmetric matrix.
Eigen::MatrixXd shortest_path_closure(Eigen::MatrixXd dist);

struct GenericityReport {
  bool generic = false;
  /// Smallest nonzero entry of Gamma(X, X), i.e. the smallest nonzero gap
  /// between two entries of the distance matrix (zero included).
  double min_gap = 0.0;
};

GenericityReport is_generic(const FiniteMetricSpace& space, double tol = 1e-12);

}  // namespace ghrelax
