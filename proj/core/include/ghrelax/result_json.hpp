#pragma once

#include <string>

#include "ghrelax/classification.hpp"
#include "ghrelax/exact_oracle.hpp"
#include "ghrelax/ghmatch.hpp"
#include "ghrelax/pairwise.hpp"
#include "ghrelax/relaxed_distance.hpp"

namespace ghrelax {

/// {value, p, kind, iterations, rank, soft_assignment, matching, residuals}.
/// An infinite p is written as the string "inf".
std::string to_json(const RelaxedDistanceResult& r, int indent = 2);

/// {upper_bound, p_mean_value, matching, bijective, repaired, constraint_violation, sparsity, trajectory}
std::string to_json(const GhMatchResult& r, int indent = 2);

/// {value, argmin, enumerated_count}
std::string to_json(const OracleResult& r, int indent = 2);

/// {feasible, residuals, objective_T, objective_sum, minkowski_bound}
std::string to_json(const CompositionCertificate& c, double tol, int indent = 2);

/// {success_frequency, correct, items: [{index, nearest, predicted, truth}]}
std::string to_json(const ClassificationReport& r, int indent = 2);

/// {pairs: [{i, j, ok, value, status, iterations, residual, error}]}
std::string to_json(const PairwiseResult& r, int indent = 2);

}  // namespace ghrelax
