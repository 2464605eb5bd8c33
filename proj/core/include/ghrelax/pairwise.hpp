#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ghrelax/ghmatch.hpp"
#include "ghrelax/relaxed_distance.hpp"
#include "ghrelax/sdp.hpp"

namespace ghrelax {

enum class PairMethod { Sdp, GhMatch, Exact };

std::string to_string(PairMethod method);
PairMethod parse_pair_method(std::string_view name);

struct PairwiseConfig {
  PairMethod method = PairMethod::Sdp;
  FeasibleSetKind kind = FeasibleSetKind::GH;
  /// kInfinityOrder selects the bisection variant.
  double p = 1.0;
  SolverConfig solver;
  GhMatchConfig ghmatch;
  /// Worker threads; 0 means hardware concurrency.
  int jobs = 1;
};

struct PairDiagnostics {
  int i = 0;
  int j = 0;
  bool ok = false;
  double value = 0.0;
  std::string error;
  int iterations = 0;
  double residual = 0.0;
  std::string status;
};

struct PairwiseResult {
  /// Symmetric with zero diagonal; failed pairs hold NaN.
  Eigen::MatrixXd distances;
  /// One record per unordered pair i < j, sorted.
  std::vector<PairDiagnostics> pairs;

  int failures() const;
};

/// Distance between two spaces with the configured method. Throws on failure.
PairDiagnostics pair_distance(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const PairwiseConfig& cfg);

/// Every unordered pair is computed once; failures are recorded per pair.
PairwiseResult pairwise_distance_matrix(const std::vector<FiniteMetricSpace>& spaces, const PairwiseConfig& cfg);

}  // namespace ghrelax
