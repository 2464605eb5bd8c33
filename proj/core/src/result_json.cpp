#include "ghrelax/result_json.hpp"

#include <cmath>

#include "json.hpp"

namespace ghrelax {

namespace {

using nlohmann::json;

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json residuals_json(const FeasibilityReport& f) {
  return {{"equality", f.equality},         {"inequality", f.inequality}, {"box", f.box},
          {"zero_pattern", f.zero_pattern}, {"pins", f.pins},             {"symmetry", f.symmetry},
          {"min_eigenvalue", f.min_eigenvalue}};
}

json matching_json(const Matching& m) {
  return {{"map", m.map}, {"bijective", m.bijective}, {"distortion", m.distortion}};
}

}  // namespace

std::string to_json(const RelaxedDistanceResult& r, int indent) {
  json j;
  j["value"] = r.value;
  j["p"] = std::isinf(r.p) ? json("inf") : json(r.p);
  j["kind"] = to_string(r.kind);
  j["iterations"] = r.solution.iterations;
  j["status"] = to_string(r.solution.status);
  j["rank"] = r.solution.numerical_rank;
  j["soft_assignment"] = matrix_json(r.soft_assignment);
  j["matching"] = matching_json(r.matching);
  json res = residuals_json(r.solution.feasibility);
  res["primal"] = r.solution.primal_residual;
  res["dual"] = r.solution.dual_residual;
  j["residuals"] = std::move(res);
  j["lower_bound"] = r.lower_bound_of;
  if (std::isinf(r.p)) {
    j["bisection_resolution"] = r.bisection_resolution;
    j["feasibility_solves"] = r.feasibility_solves;
  }
  return j.dump(indent);
}

std::string to_json(const GhMatchResult& r, int indent) {
  json j;
  j["upper_bound"] = r.upper_bound;
  j["p_mean_value"] = r.p_mean_value;
  j["matching"] = matching_json(r.matching);
  j["repaired"] = matching_json(r.repaired);
  j["constraint_violation"] = r.constraint_violation;
  j["sparsity"] = r.sparsity;
  j["inner_stalls"] = r.inner_stalls;
  json traj = json::array();
  for (const auto& t : r.trajectory) {
    traj.push_back({{"iteration", t.outer},
                    {"sigma", t.sigma},
                    {"objective", t.objective},
                    {"violation", t.violation},
                    {"sparsity", t.sparsity},
                    {"inner_iterations", t.inner_iterations}});
  }
  j["trajectory"] = std::move(traj);
  return j.dump(indent);
}

std::string to_json(const OracleResult& r, int indent) {
  json pairs = json::array();
  for (auto [a, b] : r.argmin) pairs.push_back({a, b});
  json j = {{"value", r.value}, {"argmin", std::move(pairs)}, {"enumerated_count", r.enumerated_count}};
  return j.dump(indent);
}

std::string to_json(const CompositionCertificate& c, double tol, int indent) {
  json j;
  j["feasible"] = c.feasibility.feasible(tol);
  j["residuals"] = residuals_json(c.feasibility);
  j["objective_T"] = c.objective_T;
  j["objective_sum"] = c.objective_sum;
  j["minkowski_bound"] = c.minkowski_bound;
  j["objective_chain_holds"] = c.objective_T <= c.objective_sum + tol;
  return j.dump(indent);
}

std::string to_json(const ClassificationReport& r, int indent) {
  json items = json::array();
  for (std::size_t a = 0; a < r.nearest.size(); ++a) {
    items.push_back({{"index", a}, {"nearest", r.nearest[a]}, {"predicted", r.predicted[a]}, {"truth", r.truth[a]}});
  }
  json j = {{"success_frequency", r.success_frequency}, {"correct", r.correct}, {"items", std::move(items)}};
  return j.dump(indent);
}

std::string to_json(const PairwiseResult& r, int indent) {
  json pairs = json::array();
  for (const auto& d : r.pairs) {
    json e = {{"i", d.i},
              {"j", d.j},
              {"ok", d.ok},
              {"value", number_or_null(d.ok ? d.value : NAN)},
              {"status", d.status},
              {"iterations", d.iterations},
              {"residual", d.residual}};
    if (!d.ok) e["error"] = d.error;
    pairs.push_back(std::move(e));
  }
  return json{{"pairs", std::move(pairs)}, {"failures", r.failures()}}.dump(indent);
}

}  // namespace ghrelax
