#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ghrelax/metric_space.hpp"

namespace ghrelax {

// Distance matrices: n CSV rows of n decimals, optional first line
// "# labels: a,b,c". Point clouds: whitespace-separated coordinate rows.
// Graphs: "n m" then m lines "u v", 0-indexed.

struct LabeledMatrix {
  Eigen::MatrixXd matrix;
  std::vector<std::string> labels;
};

/// Square CSV matrix with the same layout, without metric validation.
/// "nan" entries are accepted.
LabeledMatrix read_matrix_csv(std::istream& in);
LabeledMatrix read_matrix_csv(const std::filesystem::path& path);

FiniteMetricSpace read_distance_csv(std::istream& in, double tau_rel = kDefaultMetricTolerance);
FiniteMetricSpace read_distance_csv(const std::filesystem::path& path,
                                    double tau_rel = kDefaultMetricTolerance);
void write_distance_csv(std::ostream& out, const Eigen::MatrixXd& dist,
                        const std::vector<std::string>& labels = {});

std::vector<std::vector<double>> read_point_rows(std::istream& in);
FiniteMetricSpace read_point_cloud(const std::filesystem::path& path);

SimpleGraph read_graph(std::istream& in);
SimpleGraph read_graph(const std::filesystem::path& path);

/// Dispatches on extension: .csv distance matrix, .pts/.xyz/.txt point cloud.
FiniteMetricSpace read_space(const std::filesystem::path& path);

}  // namespace ghrelax
