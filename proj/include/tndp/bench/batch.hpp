#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tndp/design/problem.hpp"
#include "tndp/netcore/betweenness.hpp"
#include "tndp/solvers/solver.hpp"

namespace tndp::bench {

struct RunRecord {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;  // set when !ok
  solvers::SolverResult result;
  std::vector<netcore::EdgeKey> edges;  // selected candidates as node pairs
  double mean_betweenness = 0.0;        // of the augmented network
};

struct RunBatch {
  std::string solver;  // CLI name, or "empty" for the reference batch
  std::string problem_id;
  std::vector<std::uint64_t> seeds;
  std::vector<RunRecord> runs;
};

// Worker count: TNDP_THREADS if set and positive, else the hardware
// concurrency, never more than `jobs`.
unsigned worker_count(std::size_t jobs);

struct BatchOptions {
  int n_runs = 30;
  std::uint64_t base_seed = 0;
  netcore::Weighting weighting = netcore::Weighting::kHops;
  std::string problem_id = "problem";
  // Sees every evaluate() request of every run; called from worker threads.
  design::EvalObserver observer;
  unsigned threads = 0;           // 0 = worker_count()
};

// Runs n_runs independent runs with seeds base_seed + i, in parallel. A run
// that throws is recorded as failed; the batch carries on. Results do not
// depend on the thread count.
RunBatch run_batch(const design::DesignProblem& problem, solvers::SolverKind kind,
                   const solvers::SolverConfig& cfg, const BatchOptions& opts);

// Reference batch whose every run returns the empty design (objective T0).
RunBatch empty_batch(const design::DesignProblem& problem, const BatchOptions& opts);

// Mean edge betweenness of the network augmented with `y`.
double design_mean_betweenness(const design::DesignProblem& problem, const design::DesignVector& y,
                               netcore::Weighting weighting);

std::vector<netcore::EdgeKey> design_edges(const design::DesignProblem& problem,
                                           const design::DesignVector& y);

}  // namespace tndp::bench
