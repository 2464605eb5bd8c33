#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ghrelax/metric_space.hpp"

namespace ghrelax {

struct MeshEdge {
  int a;
  int b;
  double length;
};

/// Triangle mesh and its edge graph weighted by Euclidean edge length.
class MeshGraph {
 public:
  MeshGraph(std::vector<std::array<double, 3>> vertices, std::vector<std::array<int, 3>> faces);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const std::vector<std::array<double, 3>>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& faces() const { return faces_; }
  /// Unique undirected edges, a < b, sorted.
  const std::vector<MeshEdge>& edges() const { return edges_; }

  /// Shortest-path lengths from `source` to every vertex (infinity if unreachable).
  std::vector<double> geodesics_from(int source) const;

 private:
  std::vector<std::array<double, 3>> vertices_;
  std::vector<std::array<int, 3>> faces_;
  std::vector<MeshEdge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

/// ASCII OFF. Polygons with more than three corners are fan-triangulated.
MeshGraph read_off(std::istream& in);
MeshGraph read_off(const std::filesystem::path& path);

/// Geodesic distances between the sampled vertices.
FiniteMetricSpace mesh_geodesic_metric(const MeshGraph& mesh, const std::vector<int>& sample);

enum class SampleMode { Random, FarthestPoint };

/// Random: `count` distinct vertices from a seeded shuffle.
/// FarthestPoint: a seeded start vertex is drawn, the first pick is the vertex
/// farthest from it, and every later pick maximizes the geodesic distance to
/// the picks so far (lowest index on ties).
std::vector<int> sample_vertices(const MeshGraph& mesh, int count, SampleMode mode, std::uint64_t seed);

}  // namespace ghrelax
