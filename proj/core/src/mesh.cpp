#include "ghrelax/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <string>

#include "ghrelax/error.hpp"

namespace ghrelax {

MeshGraph::MeshGraph(std::vector<std::array<double, 3>> vertices, std::vector<std::array<int, 3>> faces)
    : vertices_(std::move(vertices)), faces_(std::move(faces)) {
  const int nv = vertex_count();
  std::map<std::pair<int, int>, double> unique;
  for (const auto& f : faces_) {
    for (int c = 0; c < 3; ++c) {
      const int a = f[c];
      const int b = f[(c + 1) % 3];
      if (a < 0 || a >= nv || b < 0 || b >= nv) throw Error(ErrorCode::BadIndex, "face references a missing vertex");
      if (a == b) throw Error(ErrorCode::ParseError, "degenerate face");
      const auto& p = vertices_[a];
      const auto& q = vertices_[b];
      const double len = std::sqrt((p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]) +
                                   (p[2] - q[2]) * (p[2] - q[2]));
      if (!(len > 0.0)) throw Error(ErrorCode::ParseError, "zero-length mesh edge");
      unique.emplace(std::minmax(a, b), len);
    }
  }
  adjacency_.assign(nv, {});
  for (const auto& [key, len] : unique) {
    edges_.push_back({key.first, key.second, len});
    adjacency_[key.first].emplace_back(key.second, len);
    adjacency_[key.second].emplace_back(key.first, len);
  }
}

std::vector<double> MeshGraph::geodesics_from(int source) const {
  if (source < 0 || source >= vertex_count()) throw Error(ErrorCode::BadIndex, "vertex index out of range");
  std::vector<double> dist(vertex_count(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : adjacency_[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        heap.emplace(dist[v], v);
      }
    }
  }
  return dist;
}

namespace {

// Next non-empty line with comments stripped.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

MeshGraph read_off(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw Error(ErrorCode::ParseError, "empty OFF input");
  std::istringstream head(line);
  std::string magic;
  head >> magic;
  if (magic.rfind("OFF", 0) != 0) throw Error(ErrorCode::ParseError, "missing OFF header");
  long nv = -1, nf = -1, ne = 0;
  if (!(head >> nv >> nf)) {
    if (!next_line(in, line)) throw Error(ErrorCode::ParseError, "missing OFF counts");
    std::istringstream counts(line);
    if (!(counts >> nv >> nf)) throw Error(ErrorCode::ParseError, "malformed OFF counts");
    counts >> ne;
  }
  if (nv < 0 || nf < 0) throw Error(ErrorCode::ParseError, "negative OFF counts");

  std::vector<std::array<double, 3>> verts(nv);
  for (long k = 0; k < nv; ++k) {
    if (!next_line(in, line)) throw Error(ErrorCode::ParseError, "truncated OFF vertex list");
    std::istringstream row(line);
    if (!(row >> verts[k][0] >> verts[k][1] >> verts[k][2])) {
      throw Error(ErrorCode::ParseError, "malformed OFF vertex " + std::to_string(k));
    }
    for (double c : verts[k]) {
      if (!std::isfinite(c)) throw Error(ErrorCode::NonFinite, "non-finite OFF vertex " + std::to_string(k));
    }
  }
  std::vector<std::array<int, 3>> faces;
  for (long k = 0; k < nf; ++k) {
    if (!next_line(in, line)) throw Error(ErrorCode::ParseError, "truncated OFF face list");
    std::istringstream row(line);
    int corners = 0;
    if (!(row >> corners) || corners < 3) throw Error(ErrorCode::ParseError, "malformed OFF face " + std::to_string(k));
    std::vector<int> idx(corners);
    for (int& v : idx) {
      if (!(row >> v)) throw Error(ErrorCode::ParseError, "malformed OFF face " + std::to_string(k));
    }
    for (int c = 1; c + 1 < corners; ++c) faces.push_back({idx[0], idx[c], idx[c + 1]});
  }
  return MeshGraph(std::move(verts), std::move(faces));
}

MeshGraph read_off(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  return read_off(in);
}

FiniteMetricSpace mesh_geodesic_metric(const MeshGraph& mesh, const std::vector<int>& sample) {
  const int k = static_cast<int>(sample.size());
  if (k == 0) throw Error(ErrorCode::Empty, "empty sample");
  for (int v : sample) {
    if (v < 0 || v >= mesh.vertex_count()) throw Error(ErrorCode::BadIndex, "sample index out of range");
  }
  Eigen::MatrixXd d(k, k);
  for (int a = 0; a < k; ++a) {
    const std::vector<double> row = mesh.geodesics_from(sample[a]);
    for (int b = 0; b < k; ++b) {
      if (!std::isfinite(row[sample[b]])) {
        throw Error(ErrorCode::DisconnectedMesh, "vertices " + std::to_string(sample[a]) + " and " +
                                                     std::to_string(sample[b]) + " are not connected");
      }
      d(a, b) = row[sample[b]];
    }
  }
  // Dijkstra from either end gives the same length up to summation order.
  d = (0.5 * (d + d.transpose())).eval();
  d.diagonal().setZero();
  return FiniteMetricSpace::validated(d);
}

std::vector<int> sample_vertices(const MeshGraph& mesh, int count, SampleMode mode, std::uint64_t seed) {
  const int nv = mesh.vertex_count();
  if (count < 0 || count > nv) {
    throw Error(ErrorCode::TooMany, "cannot sample " + std::to_string(count) + " of " + std::to_string(nv) + " vertices");
  }
  std::mt19937_64 rng(seed);
  if (mode == SampleMode::Random) {
    std::vector<int> all(nv);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(count);
    return all;
  }
  std::vector<int> picks;
  if (count == 0) return picks;
  const int start = std::uniform_int_distribution<int>(0, nv - 1)(rng);
  auto farthest = [nv](const std::vector<double>& d) {
    int best = 0;
    for (int v = 1; v < nv; ++v) {
      if (d[v] > d[best]) best = v;
    }
    return best;
  };
  std::vector<double> from_start = mesh.geodesics_from(start);
  for (double& v : from_start) {
    if (!std::isfinite(v)) v = -1.0;
  }
  int pick = farthest(from_start);
  std::vector<double> nearest = mesh.geodesics_from(pick);
  picks.push_back(pick);
  while (static_cast<int>(picks.size()) < count) {
    std::vector<double> score = nearest;
    for (int v : picks) score[v] = -1.0;
    for (double& v : score) {
      if (!std::isfinite(v)) throw Error(ErrorCode::DisconnectedMesh, "mesh is not connected");
    }
    pick = farthest(score);
    picks.push_back(pick);
    const std::vector<double> d = mesh.geodesics_from(pick);
    for (int v = 0; v < nv; ++v) nearest[v] = std::min(nearest[v], d[v]);
  }
  return picks;
}

}  // namespace ghrelax
