#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tndp/bench/batch.hpp"
#include "tndp/bench/metrics.hpp"
#include "tndp/bench/stats.hpp"

namespace tndp::bench {

struct Baseline {
  double travel_time = 0.0;       // T0, the empty design
  double mean_betweenness = 0.0;  // of the base network
  netcore::Weighting weighting = netcore::Weighting::kHops;
};

Baseline make_baseline(const design::DesignProblem& problem, netcore::Weighting weighting);

struct ConvergencePoint {
  std::size_t evals = 0;
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t runs = 0;  // runs that had evaluated at least once by then
};

struct SolverSection {
  std::string solver;
  std::size_t runs_ok = 0;
  std::size_t runs_failed = 0;
  Summary objective;
  Summary travel_time;
  Summary crossings;
  Summary evals_used;
  Summary betweenness;
  double n_fold_objective = 0.0;    // T0 / mean objective
  double n_fold_betweenness = 0.0;  // baseline / mean betweenness
  std::optional<StabilityScore> stability;  // absent with fewer than two runs
  // Against the best-mean solver; absent for the best itself.
  std::optional<MannWhitney> vs_best_objective;
  std::optional<MannWhitney> vs_best_betweenness;
  std::vector<ConvergencePoint> convergence;
};

struct BenchReport {
  std::string problem_id;
  Baseline baseline;
  double alpha = 0.05;
  std::string best_solver;
  std::vector<SolverSection> sections;
  std::vector<RunBatch> batches;
};

// Aggregates batches that share one problem. The solver with the lowest mean
// objective is the reference for the Mann-Whitney tests.
BenchReport compare(const std::vector<RunBatch>& batches, const Baseline& baseline,
                    double alpha = 0.05, std::size_t convergence_step = 100);

// Deterministic report body: no wall times, so equal inputs give equal bytes.
nlohmann::json to_json(const BenchReport& report);
nlohmann::json run_to_json(const RunRecord& run);

// Wall times per run and per solver.
nlohmann::json timing_json(const std::vector<RunBatch>& batches);

// `eval_count,best_objective` rows. A non-empty `comment` is written first
// as a single line starting with '#'.
void write_trace_csv(const std::filesystem::path& path, const std::vector<design::TracePoint>& trace,
                     const std::string& comment = {});

}  // namespace tndp::bench
