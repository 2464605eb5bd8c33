#include "ghrelax/pairwise.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "ghrelax/error.hpp"
#include "ghrelax/exact_oracle.hpp"

namespace ghrelax {

std::string to_string(PairMethod method) {
  switch (method) {
    case PairMethod::Sdp: return "sdp";
    case PairMethod::GhMatch: return "ghmatch";
    case PairMethod::Exact: return "exact";
  }
  return "unknown";
}

PairMethod parse_pair_method(std::string_view name) {
  if (name == "sdp") return PairMethod::Sdp;
  if (name == "ghmatch") return PairMethod::GhMatch;
  if (name == "exact") return PairMethod::Exact;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

int PairwiseResult::failures() const {
  return static_cast<int>(std::count_if(pairs.begin(), pairs.end(), [](const PairDiagnostics& d) { return !d.ok; }));
}

PairDiagnostics pair_distance(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const PairwiseConfig& cfg) {
  PairDiagnostics d;
  switch (cfg.method) {
    case PairMethod::Sdp: {
      const RelaxedDistanceResult r = cfg.p == kInfinityOrder ? relaxed_distance_inf(x, y, cfg.kind, cfg.solver)
                                                             : relaxed_distance(x, y, cfg.kind, cfg.p, cfg.solver);
      d.value = r.value;
      d.iterations = r.solution.iterations;
      d.residual = r.solution.primal_residual;
      d.status = to_string(r.solution.status);
      break;
    }
    case PairMethod::GhMatch: {
      GhMatchConfig gcfg = cfg.ghmatch;
      const GhMatchResult r = gh_match(x, y, gcfg);
      d.value = r.upper_bound;
      d.iterations = static_cast<int>(r.trajectory.size());
      d.residual = r.constraint_violation;
      d.status = r.matching.bijective ? "bijective" : "repaired";
      break;
    }
    case PairMethod::Exact: {
      const OracleResult r = exact_gh(x, y);
      d.value = r.value;
      d.iterations = static_cast<int>(std::min<std::uint64_t>(r.enumerated_count, std::numeric_limits<int>::max()));
      d.status = "exact";
      break;
    }
  }
  d.ok = true;
  return d;
}

PairwiseResult pairwise_distance_matrix(const std::vector<FiniteMetricSpace>& spaces, const PairwiseConfig& cfg) {
  const int k = static_cast<int>(spaces.size());
  PairwiseResult out;
  out.distances = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      PairDiagnostics d;
      d.i = i;
      d.j = j;
      out.pairs.push_back(d);
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t t = next++; t < out.pairs.size(); t = next++) {
      PairDiagnostics& slot = out.pairs[t];
      const int i = slot.i;
      const int j = slot.j;
      try {
        slot = pair_distance(spaces[i], spaces[j], cfg);
      } catch (const std::exception& e) {
        slot = PairDiagnostics{};
        slot.error = e.what();
        slot.status = "error";
      }
      slot.i = i;
      slot.j = j;
    }
  };
  int jobs = cfg.jobs > 0 ? cfg.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(out.pairs.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
  }

  for (const auto& d : out.pairs) {
    const double v = d.ok ? d.value : std::numeric_limits<double>::quiet_NaN();
    out.distances(d.i, d.j) = v;
    out.distances(d.j, d.i) = v;
  }
  return out;
}

}  // namespace ghrelax
