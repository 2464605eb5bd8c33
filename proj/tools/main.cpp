// ghrelax command-line front end.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ghrelax/classification.hpp"
#include "ghrelax/exact_oracle.hpp"
#include "ghrelax/ghmatch.hpp"
#include "ghrelax/mesh.hpp"
#include "ghrelax/metric_io.hpp"
#include "ghrelax/pairwise.hpp"
#include "ghrelax/relaxed_distance.hpp"
#include "ghrelax/result_json.hpp"

namespace fs = std::filesystem;
using namespace ghrelax;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kInput = 2, kSolver = 3 };

struct Options {
  std::string kind = "gh";
  std::string p = "1";
  double tol = SolverConfig{}.tol;
  int max_iter = SolverConfig{}.max_iter;
  double sigma0 = GhMatchConfig{}.sigma0;
  double mu = GhMatchConfig{}.mu;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
  std::string trace_dir;
};

double parse_order(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfinityOrder;
  try {
    std::size_t used = 0;
    const double p = std::stod(text, &used);
    if (used == text.size() && p >= 1.0 && std::isfinite(p)) return p;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidArgument, "--p expects a number >= 1 or 'inf', got '" + text + "'");
}

SolverConfig solver_config(const Options& o) {
  SolverConfig cfg;
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  cfg.validate();
  return cfg;
}

GhMatchConfig ghmatch_config(const Options& o) {
  GhMatchConfig cfg;
  cfg.sigma0 = o.sigma0;
  cfg.mu = o.mu;
  cfg.validate();
  return cfg;
}

// Writes to --out when given, stdout otherwise.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write " + o.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

void warn_if_unconverged(const SdpSolution& sol) {
  if (sol.status != SdpStatus::Optimal) {
    std::cerr << "warning: solver stopped with status " << to_string(sol.status) << " after " << sol.iterations
              << " iterations (primal " << sol.primal_residual << ", dual " << sol.dual_residual << ")\n";
  }
}

RelaxedDistanceResult run_relaxed(const FiniteMetricSpace& a, const FiniteMetricSpace& b, const Options& o) {
  const FeasibleSetKind kind = parse_feasible_set_kind(o.kind);
  const double p = parse_order(o.p);
  const SolverConfig cfg = solver_config(o);
  RelaxedDistanceResult r = p == kInfinityOrder ? relaxed_distance_inf(a, b, kind, cfg)
                                                : relaxed_distance(a, b, kind, p, cfg);
  warn_if_unconverged(r.solution);
  return r;
}

std::vector<fs::path> list_inputs(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::ParseError, dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(ErrorCode::Empty, "no input files in " + dir.string());
  return files;
}

std::vector<std::string> read_labels(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    line.erase(line.find_last_not_of(" \t\r\n") + 1);
    line.erase(0, line.find_first_not_of(" \t"));
    if (!line.empty() && line.front() != '#') labels.push_back(line);
  }
  return labels;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NumericalBreakdown:
    case ErrorCode::BisectionExhausted:
      return kSolver;
    default:
      return kInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semidefinite relaxations of the Gromov-Hausdorff distance between finite metric spaces"};
  app.require_subcommand(1);
  Options o;

  auto add_solver_flags = [&o](CLI::App* sub) {
    sub->add_option("--kind", o.kind, "Feasible set: gh, reg or sur")->check(CLI::IsMember({"gh", "reg", "sur"}));
    sub->add_option("--p", o.p, "Order of the objective: a number >= 1 or inf");
    sub->add_option("--tol", o.tol, "Solver tolerance on relative residuals");
    sub->add_option("--max-iter", o.max_iter, "Solver iteration cap");
    sub->add_option("--trace-dir", o.trace_dir, "Write solver iterate traces to this directory");
  };
  auto add_out = [&o](CLI::App* sub) { sub->add_option("--out", o.out, "Output file (default: stdout)"); };
  auto add_match_flags = [&o](CLI::App* sub) {
    sub->add_option("--sigma0", o.sigma0, "Initial penalty");
    sub->add_option("--mu", o.mu, "Penalty growth factor");
  };

  std::string in_a, in_b, in_c, in_dir, labels_path, trajectory_path, diagnostics_path, method = "sdp";
  bool bijective = false, rank1 = false, literal = false, unnormalized = false;
  double graph_k = 2.0;
  int count = 0;
  std::string mode = "random";
  int classes = 4, per_class = 6, points = 16;

  auto* dist = app.add_subcommand("dist", "Relaxed distance between two spaces (JSON)");
  dist->add_option("a", in_a, "First space (.csv distance matrix or point rows)")->required();
  dist->add_option("b", in_b, "Second space")->required();
  add_solver_flags(dist);
  add_out(dist);

  auto* matrix = app.add_subcommand("matrix", "Pairwise distance matrix over a directory of spaces (CSV)");
  matrix->add_option("dir", in_dir, "Directory of input spaces")->required();
  matrix->add_option("--method", method, "sdp, ghmatch or exact")->check(CLI::IsMember({"sdp", "ghmatch", "exact"}));
  matrix->add_option("--jobs", o.jobs, "Concurrent pairs (0 = all cores)");
  matrix->add_option("--diagnostics", diagnostics_path, "Per-pair diagnostics JSON");
  add_solver_flags(matrix);
  add_match_flags(matrix);
  add_out(matrix);

  auto* match = app.add_subcommand("match", "GHMatch registration of two equal-size spaces (JSON)");
  match->add_option("a", in_a)->required();
  match->add_option("b", in_b)->required();
  match->add_option("--trajectory", trajectory_path, "Per-iteration CSV");
  match->add_option("--p", o.p, "Distortion power");
  add_match_flags(match);
  add_out(match);

  auto* exact = app.add_subcommand("exact", "Brute-force Gromov-Hausdorff distance of small spaces (JSON)");
  exact->add_option("a", in_a)->required();
  exact->add_option("b", in_b)->required();
  exact->add_flag("--bijective", bijective, "Restrict to bijections");
  exact->add_flag("--rank1", rank1, "Rank-one p-objective over correspondences");
  exact->add_flag("--unnormalized", unnormalized, "With --rank1: no 1/max(n,m)^2 factor");
  exact->add_option("--p", o.p, "Order for --rank1");
  add_out(exact);

  auto* classify = app.add_subcommand("classify", "Nearest-neighbour classification from a distance matrix (JSON)");
  classify->add_option("matrix", in_a, "Distance matrix CSV")->required();
  classify->add_option("labels", labels_path, "One label per line (default: labels line of the matrix)");
  add_out(classify);

  auto* graph2m = app.add_subcommand("graph2m", "Graph file to distance-matrix CSV");
  graph2m->add_option("graph", in_a, "\"n m\" header then m edges")->required();
  graph2m->add_option("--K", graph_k, "Non-edge distance");
  graph2m->add_flag("--literal", literal, "Allow K > 2 (no triangle check)");
  add_out(graph2m);

  auto* mesh = app.add_subcommand("mesh", "Geodesic distances between sampled vertices of an OFF mesh (CSV)");
  mesh->add_option("off", in_a, "ASCII OFF mesh")->required();
  mesh->add_option("--count", count, "Number of samples")->required();
  mesh->add_option("--mode", mode, "random or farthest")->check(CLI::IsMember({"random", "farthest"}));
  mesh->add_option("--seed", o.seed, "Sampling seed");
  add_out(mesh);

  auto* certify = app.add_subcommand("certify", "Composition certificate for three spaces (JSON)");
  certify->add_option("x", in_a)->required();
  certify->add_option("y", in_b)->required();
  certify->add_option("w", in_c)->required();
  add_solver_flags(certify);
  add_out(certify);

  auto* synth = app.add_subcommand("synth", "Write a labelled synthetic benchmark into a directory");
  synth->add_option("dir", in_dir, "Output directory")->required();
  synth->add_option("--classes", classes);
  synth->add_option("--per-class", per_class);
  synth->add_option("--points", points);
  synth->add_option("--seed", o.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (!o.trace_dir.empty()) ::setenv("GHRELAX_SDP_TRACE", o.trace_dir.c_str(), 1);

    if (*dist) {
      const RelaxedDistanceResult r = run_relaxed(read_space(in_a), read_space(in_b), o);
      emit(o, to_json(r));
    } else if (*matrix) {
      std::vector<FiniteMetricSpace> spaces;
      std::vector<std::string> names;
      for (const auto& f : list_inputs(in_dir)) {
        spaces.push_back(read_space(f));
        names.push_back(f.stem().string());
      }
      PairwiseConfig cfg;
      cfg.method = parse_pair_method(method);
      cfg.kind = parse_feasible_set_kind(o.kind);
      cfg.p = parse_order(o.p);
      cfg.solver = solver_config(o);
      cfg.ghmatch = ghmatch_config(o);
      cfg.jobs = o.jobs;
      const PairwiseResult res = pairwise_distance_matrix(spaces, cfg);
      std::ostringstream csv;
      write_distance_csv(csv, res.distances, names);
      emit(o, csv.str());
      if (!diagnostics_path.empty()) {
        std::ofstream d(diagnostics_path);
        d << to_json(res) << '\n';
      }
      for (const auto& pd : res.pairs) {
        if (!pd.ok) std::cerr << "pair (" << names[pd.i] << ", " << names[pd.j] << ") failed: " << pd.error << '\n';
      }
      if (res.failures() > 0) return kSolver;
    } else if (*match) {
      GhMatchConfig cfg = ghmatch_config(o);
      cfg.p = parse_order(o.p);
      cfg.validate();
      const GhMatchResult r = gh_match(read_space(in_a), read_space(in_b), cfg);
      emit(o, to_json(r));
      if (!trajectory_path.empty()) {
        std::ofstream t(trajectory_path);
        write_trajectory_csv(t, r);
      }
    } else if (*exact) {
      const FiniteMetricSpace a = read_space(in_a);
      const FiniteMetricSpace b = read_space(in_b);
      OracleResult r;
      if (rank1) {
        r = exact_gh_p_rank1(a, b, parse_order(o.p), unnormalized ? Normalization::None : Normalization::MaxSquared);
      } else if (bijective) {
        r = exact_gh_bijective(a, b);
      } else {
        r = exact_gh(a, b);
      }
      emit(o, to_json(r));
    } else if (*classify) {
      LabeledMatrix m = read_matrix_csv(fs::path(in_a));
      const std::vector<std::string> labels = labels_path.empty() ? m.labels : read_labels(labels_path);
      emit(o, to_json(nearest_neighbor_classify(m.matrix, labels)));
    } else if (*graph2m) {
      const SimpleGraph g = read_graph(fs::path(in_a));
      const FiniteMetricSpace s =
          graph_to_metric(g, graph_k, literal ? GraphMetricMode::LiteralLargeK : GraphMetricMode::Strict);
      std::ostringstream csv;
      write_distance_csv(csv, s.matrix());
      emit(o, csv.str());
    } else if (*mesh) {
      const MeshGraph mg = read_off(fs::path(in_a));
      const auto sample =
          sample_vertices(mg, count, mode == "farthest" ? SampleMode::FarthestPoint : SampleMode::Random, o.seed);
      const FiniteMetricSpace s = mesh_geodesic_metric(mg, sample);
      std::vector<std::string> names;
      for (int v : sample) names.push_back("v" + std::to_string(v));
      std::ostringstream csv;
      write_distance_csv(csv, s.matrix(), names);
      emit(o, csv.str());
    } else if (*certify) {
      const FiniteMetricSpace x = read_space(in_a);
      const FiniteMetricSpace y = read_space(in_b);
      const FiniteMetricSpace w = read_space(in_c);
      const double p = parse_order(o.p);
      if (p == kInfinityOrder) throw Error(ErrorCode::InvalidArgument, "certify needs a finite --p");
      const FeasibleSetKind kind = parse_feasible_set_kind(o.kind);
      const SolverConfig cfg = solver_config(o);
      const RelaxedDistanceResult xy = relaxed_distance(x, y, kind, p, cfg);
      const RelaxedDistanceResult yw = relaxed_distance(y, w, kind, p, cfg);
      warn_if_unconverged(xy.solution);
      warn_if_unconverged(yw.solution);
      const CompositionCertificate cert = compose_certificate(xy.solution.Z, yw.solution.Z, x, y, w, kind, p);
      emit(o, to_json(cert, 10.0 * cfg.tol));
    } else if (*synth) {
      SyntheticClassConfig cfg;
      cfg.classes = classes;
      cfg.per_class = per_class;
      cfg.points = points;
      cfg.seed = o.seed;
      const LabeledSpaces set = synthetic_classes(cfg);
      const fs::path space_dir = fs::path(in_dir) / "spaces";
      fs::create_directories(space_dir);
      std::ofstream labels(fs::path(in_dir) / "labels.txt");
      for (std::size_t k = 0; k < set.spaces.size(); ++k) {
        std::ostringstream name;
        name << "space_" << std::setw(3) << std::setfill('0') << k << ".csv";
        std::ofstream f(space_dir / name.str());
        if (!f) throw Error(ErrorCode::ParseError, "cannot write into " + space_dir.string());
        write_distance_csv(f, set.spaces[k].matrix());
        labels << set.labels[k] << '\n';
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}
