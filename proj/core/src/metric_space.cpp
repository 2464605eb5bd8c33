#include "ghrelax/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace ghrelax {
namespace {

void check_basic(const Eigen::MatrixXd& dist, double tol) {
  if (dist.rows() != dist.cols()) {
    throw Error(ErrorCode::NotSquare, "distance matrix must be square");
  }
  if (dist.rows() == 0) {
    throw Error(ErrorCode::Empty, "distance matrix has no points");
  }
  if (!dist.allFinite()) {
    throw Error(ErrorCode::NonFinite, "distance matrix has non-finite entries");
  }
  const auto n = dist.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(dist(i, i)) > tol) {
      std::ostringstream os;
      os << "d(" << i << "," << i << ") = " << dist(i, i);
      throw Error(ErrorCode::NonzeroDiagonal, os.str());
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(dist(i, j) - dist(j, i)) > tol) {
        std::ostringstream os;
        os << "d(" << i << "," << j << ") = " << dist(i, j) << " but d(" << j << "," << i
           << ") = " << dist(j, i);
        throw Error(ErrorCode::AsymmetricMatrix, os.str());
      }
      if (dist(i, j) < -tol) {
        std::ostringstream os;
        os << "negative distance d(" << i << "," << j << ") = " << dist(i, j);
        throw Error(ErrorCode::InvalidArgument, os.str());
      }
    }
  }
}

double absolute_tolerance(const Eigen::MatrixXd& dist, double tau_rel) {
  const double scale = dist.size() == 0 ? 0.0 : dist.cwiseAbs().maxCoeff();
  return tau_rel * std::max(scale, std::numeric_limits<double>::min());
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& dist) {
  Eigen::MatrixXd out = 0.5 * (dist + dist.transpose());
  out.diagonal().setZero();
  return out;
}

}  // namespace

FiniteMetricSpace FiniteMetricSpace::validated(Eigen::MatrixXd dist, double tau_rel,
                                               std::vector<std::string> labels) {
  const double tol = absolute_tolerance(dist, tau_rel);
  check_basic(dist, tol);
  const auto n = dist.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        if (dist(i, k) > dist(i, j) + dist(j, k) + tol) {
          std::ostringstream os;
          os << "d(" << i << "," << k << ") = " << dist(i, k) << " > d(" << i << "," << j
             << ") + d(" << j << "," << k << ") = " << dist(i, j) + dist(j, k);
          throw TriangleViolationError(static_cast<int>(i), static_cast<int>(j),
                                       static_cast<int>(k), os.str());
        }
      }
    }
  }
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "label count does not match point count");
  }
  return FiniteMetricSpace(symmetrized(dist), std::move(labels));
}

FiniteMetricSpace FiniteMetricSpace::unchecked(Eigen::MatrixXd dist,
                                               std::vector<std::string> labels) {
  check_basic(dist, absolute_tolerance(dist, kDefaultMetricTolerance));
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != dist.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "label count does not match point count");
  }
  return FiniteMetricSpace(symmetrized(dist), std::move(labels));
}

FiniteMetricSpace FiniteMetricSpace::permuted(const std::vector<int>& perm) const {
  const int n = size();
  if (static_cast<int>(perm.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "permutation length differs from point count");
  }
  Eigen::MatrixXd out(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) out(a, b) = dist_(perm[a], perm[b]);
  }
  std::vector<std::string> labels;
  if (!labels_.empty()) {
    for (int a = 0; a < n; ++a) labels.push_back(labels_[perm[a]]);
  }
  return FiniteMetricSpace(std::move(out), std::move(labels));
}

FiniteMetricSpace FiniteMetricSpace::scaled(double factor) const {
  if (!(factor > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  return FiniteMetricSpace(dist_ * factor, labels_);
}

FiniteMetricSpace validate_metric(const Eigen::MatrixXd& dist, double tau_rel) {
  return FiniteMetricSpace::validated(dist, tau_rel);
}

FiniteMetricSpace from_point_cloud(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw Error(ErrorCode::Empty, "point cloud is empty");
  const auto dim = points.front().size();
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) {
      std::ostringstream os;
      os << "point " << i << " has dimension " << points[i].size() << ", expected " << dim;
      throw Error(ErrorCode::DimensionMismatch, os.str());
    }
    for (std::size_t c = 0; c < dim; ++c) rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = points[i][c];
  }
  return from_point_cloud(rows);
}

FiniteMetricSpace from_point_cloud(const Eigen::MatrixXd& rows_as_points) {
  const auto n = rows_as_points.rows();
  if (n == 0) throw Error(ErrorCode::Empty, "point cloud is empty");
  if (!rows_as_points.allFinite()) throw Error(ErrorCode::NonFinite, "non-finite coordinate");
  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (rows_as_points.row(i) - rows_as_points.row(j)).norm();
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  // Euclidean distances satisfy the axioms up to rounding.
  return FiniteMetricSpace::validated(std::move(dist), 1e-12);
}

SimpleGraph::SimpleGraph(int vertex_count, std::vector<std::pair<int, int>> raw_edges)
    : vertex_count(vertex_count) {
  if (vertex_count < 1) throw Error(ErrorCode::Empty, "graph needs at least one vertex");
  for (auto [u, v] : raw_edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      std::ostringstream os;
      os << "edge (" << u << "," << v << ") out of range";
      throw Error(ErrorCode::BadIndex, os.str());
    }
    if (u == v) throw Error(ErrorCode::InvalidArgument, "self-loops are not allowed");
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate edge");
  }
}

bool SimpleGraph::has_edge(int u, int v) const {
  const std::pair<int, int> e{std::min(u, v), std::max(u, v)};
  return std::binary_search(edges.begin(), edges.end(), e);
}

std::vector<int> SimpleGraph::degrees() const {
  std::vector<int> deg(vertex_count, 0);
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

SimpleGraph SimpleGraph::relabeled(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != vertex_count) {
    throw Error(ErrorCode::DimensionMismatch, "permutation length differs from vertex count");
  }
  std::vector<std::pair<int, int>> out;
  out.reserve(edges.size());
  for (auto [u, v] : edges) out.emplace_back(perm[u], perm[v]);
  return SimpleGraph(vertex_count, std::move(out));
}

FiniteMetricSpace graph_to_metric(const SimpleGraph& g, double K, GraphMetricMode mode) {
  if (!(K > 1.0) || !std::isfinite(K)) {
    throw Error(ErrorCode::InvalidK, "K must be finite and larger than 1");
  }
  if (mode == GraphMetricMode::Strict && K > 2.0) {
    throw Error(ErrorCode::InvalidK,
                "K > 2 breaks the triangle inequality for edge-edge-nonedge triples; "
                "use GraphMetricMode::LiteralLargeK for the pseudo-distance");
  }
  const int n = g.vertex_count;
  Eigen::MatrixXd dist = Eigen::MatrixXd::Constant(n, n, K);
  dist.diagonal().setZero();
  for (auto [u, v] : g.edges) {
    dist(u, v) = 1.0;
    dist(v, u) = 1.0;
  }
  if (mode == GraphMetricMode::Strict) return FiniteMetricSpace::validated(std::move(dist));
  return FiniteMetricSpace::unchecked(std::move(dist));
}

EpsilonNet epsilon_net(const FiniteMetricSpace& space, double epsilon) {
  if (!(epsilon >= 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be nonnegative");
  const int n = space.size();
  EpsilonNet net;
  net.epsilon = epsilon;
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  int next = 0;
  while (true) {
    net.indices.push_back(next);
    for (int i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], space(i, next));
    const auto far = std::max_element(nearest.begin(), nearest.end());
    net.covering_radius = *far;
    if (*far <= epsilon) break;
    next = static_cast<int>(far - nearest.begin());
  }
  return net;
}

FiniteMetricSpace subspace(const FiniteMetricSpace& space, const std::vector<int>& indices) {
  if (indices.empty()) throw Error(ErrorCode::Empty, "empty index set");
  const int k = static_cast<int>(indices.size());
  Eigen::MatrixXd out(k, k);
  std::vector<std::string> labels;
  for (int a = 0; a < k; ++a) {
    const int ia = indices[a];
    if (ia < 0 || ia >= space.size()) throw Error(ErrorCode::BadIndex, "index out of range");
    if (!space.labels().empty()) labels.push_back(space.labels()[ia]);
    for (int b = 0; b < k; ++b) out(a, b) = space(ia, indices[b]);
  }
  return FiniteMetricSpace::unchecked(std::move(out), std::move(labels));
}

FiniteMetricSpace pad_with_repeats(const FiniteMetricSpace& space, int target_n,
                                   const std::optional<std::vector<int>>& indices) {
  const int n = space.size();
  if (target_n < n) {
    throw Error(ErrorCode::BadTarget, "target size is smaller than the space");
  }
  std::vector<int> source;
  if (indices) {
    source = *indices;
    if (static_cast<int>(source.size()) != target_n) {
      throw Error(ErrorCode::BadTarget, "index multiset must have target_n entries");
    }
    std::vector<bool> seen(n, false);
    for (int s : source) {
      if (s < 0 || s >= n) throw Error(ErrorCode::BadTarget, "index multiset out of range");
      seen[s] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw Error(ErrorCode::BadTarget, "index multiset must contain every original point");
    }
  } else {
    for (int a = 0; a < target_n; ++a) source.push_back(a % n);
  }
  return subspace(space, source);
}

Eigen::MatrixXd shortest_path_closure(Eigen::MatrixXd dist) {
  const auto n = dist.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const double via = dist(i, k) + dist(k, j);
        if (via < dist(i, j)) dist(i, j) = via;
      }
    }
  }
  return dist;
}

FiniteMetricSpace perturb(const FiniteMetricSpace& space, double magnitude, std::uint64_t seed) {
  if (!(magnitude >= 0.0)) throw Error(ErrorCode::InvalidArgument, "magnitude must be nonnegative");
  if (magnitude == 0.0) return space;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-magnitude, magnitude);
  const int n = space.size();
  Eigen::MatrixXd dist = space.matrix();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = std::max(0.0, dist(i, j) + noise(rng));
      dist(i, j) = v;
      dist(j, i) = v;
    }
  }
  return FiniteMetricSpace::validated(shortest_path_closure(std::move(dist)), 1e-12, space.labels());
}

GenericityReport is_generic(const FiniteMetricSpace& space, double tol) {
  const int n = space.size();
  std::vector<double> off;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) off.push_back(space(i, j));
  }
  std::sort(off.begin(), off.end());
  GenericityReport report;
  report.generic = off.empty() || off.front() > tol;
  for (std::size_t a = 1; a < off.size(); ++a) {
    if (off[a] - off[a - 1] <= tol) report.generic = false;
  }
  // Entries of Gamma(X, X) are |d - d'| over all matrix entries, zero included.
  std::vector<double> values = off;
  values.push_back(0.0);
  std::sort(values.begin(), values.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 1; a < values.size(); ++a) {
    const double g = values[a] - values[a - 1];
    if (g > tol) gap = std::min(gap, g);
  }
  report.min_gap = std::isfinite(gap) ? gap : 0.0;
  return report;
}

}  // namespace ghrelax
