#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ghrelax/metric_space.hpp"

namespace ghrelax {

struct ClassificationReport {
  std::vector<int> nearest;
  std::vector<std::string> predicted;
  std::vector<std::string> truth;
  int correct = 0;
  double success_frequency = 0.0;
  Eigen::MatrixXd distances;
};

/// Leave-one-out nearest neighbour. NaN entries never win; ties go to the
/// lowest index.
ClassificationReport nearest_neighbor_classify(const Eigen::MatrixXd& distances,
                                               const std::vector<std::string>& labels);

struct LabeledSpaces {
  std::vector<FiniteMetricSpace> spaces;
  std::vector<std::string> labels;
};

struct SyntheticClassConfig {
  int classes = 4;
  int per_class = 6;
  int points = 16;
  int dim = 2;
  /// Perturbation magnitude as a fraction of Delta / (2 n) of the prototype.
  double perturbation_fraction = 0.5;
  std::uint64_t seed = 0;
};

/// Random generic prototypes in the unit cube; each class member is the
/// prototype with bounded distance noise and shuffled point order.
LabeledSpaces synthetic_classes(const SyntheticClassConfig& cfg);

/// Uniform points in [0,1]^dim, redrawn until the distances are generic.
FiniteMetricSpace random_generic_space(int n, std::mt19937_64& rng, int dim = 2);

/// Uniform random permutation of {0..n-1}.
std::vector<int> random_permutation(int n, std::mt19937_64& rng);

/// G(n, q) random graph.
SimpleGraph random_graph(int n, double edge_probability, std::mt19937_64& rng);

}  // namespace ghrelax
