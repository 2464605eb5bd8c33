#include "ghrelax/metric_io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

namespace ghrelax {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) parts.push_back(trim(item));
  return parts;
}

double parse_double(const std::string& token, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ": cannot parse number '" + token + "'");
  }
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  return in;
}

}  // namespace

LabeledMatrix read_matrix_csv(std::istream& in) {
  LabeledMatrix out;
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const auto pos = t.find("labels:");
      if (pos != std::string::npos && rows.empty()) out.labels = split(t.substr(pos + 7), ',');
      continue;
    }
    std::vector<double> row;
    for (const auto& tok : split(t, ',')) row.push_back(parse_double(tok, lineno));
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw Error(ErrorCode::Empty, "matrix file has no rows");
  out.matrix.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorCode::NotSquare, "row " + std::to_string(i) + " does not have " + std::to_string(n) + " entries");
    }
    for (Eigen::Index j = 0; j < n; ++j) out.matrix(i, j) = row[j];
  }
  if (!out.labels.empty() && static_cast<Eigen::Index>(out.labels.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "label count does not match the matrix");
  }
  return out;
}

LabeledMatrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open(path);
  return read_matrix_csv(in);
}

FiniteMetricSpace read_distance_csv(std::istream& in, double tau_rel) {
  LabeledMatrix m = read_matrix_csv(in);
  return FiniteMetricSpace::validated(std::move(m.matrix), tau_rel, std::move(m.labels));
}

FiniteMetricSpace read_distance_csv(const std::filesystem::path& path, double tau_rel) {
  auto in = open(path);
  return read_distance_csv(in, tau_rel);
}

void write_distance_csv(std::ostream& out, const Eigen::MatrixXd& dist,
                        const std::vector<std::string>& labels) {
  if (!labels.empty()) {
    out << "# labels: ";
    for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
    out << '\n';
  }
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index i = 0; i < dist.rows(); ++i) {
    for (Eigen::Index j = 0; j < dist.cols(); ++j) out << (j ? "," : "") << dist(i, j);
    out << '\n';
  }
}

std::vector<std::vector<double>> read_point_rows(std::istream& in) {
  std::vector<std::vector<double>> points;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream is(t);
    std::vector<double> p;
    std::string tok;
    while (is >> tok) p.push_back(parse_double(tok, lineno));
    points.push_back(std::move(p));
  }
  return points;
}

FiniteMetricSpace read_point_cloud(const std::filesystem::path& path) {
  auto in = open(path);
  return from_point_cloud(read_point_rows(in));
}

SimpleGraph read_graph(std::istream& in) {
  long n = -1, m = -1;
  if (!(in >> n >> m) || n < 1 || m < 0) {
    throw Error(ErrorCode::ParseError, "graph header must be 'n m'");
  }
  std::vector<std::pair<int, int>> edges;
  for (long e = 0; e < m; ++e) {
    int u = 0, v = 0;
    if (!(in >> u >> v)) {
      throw Error(ErrorCode::ParseError, "expected " + std::to_string(m) + " edges");
    }
    edges.emplace_back(u, v);
  }
  return SimpleGraph(static_cast<int>(n), std::move(edges));
}

SimpleGraph read_graph(const std::filesystem::path& path) {
  auto in = open(path);
  return read_graph(in);
}

FiniteMetricSpace read_space(const std::filesystem::path& path) {
  if (path.extension() == ".csv") return read_distance_csv(path);
  return read_point_cloud(path);
}

}  // namespace ghrelax
