#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tndp/design/evaluator.hpp"
#include "tndp/solvers/config.hpp"
#include "tndp/solvers/moves.hpp"

namespace tndp::solvers {

struct SolverResult {
  SolverKind solver = SolverKind::kGreedy;
  std::uint64_t seed = 0;
  design::DesignVector best_design;
  std::shared_ptr<const design::ObjectiveValue> best_objective;
  std::vector<design::TracePoint> trace;
  std::size_t evals_used = 0;
  double wall_time_s = 0.0;
  int iterations = 0;
  std::string stop_reason;
};

// What a search loop reports back; the best design lives in the Evaluator.
struct SearchStats {
  int iterations = 0;
  std::string stop_reason;
};

// Stop reasons.
inline constexpr const char* kStopMaxIter = "max_iter";
inline constexpr const char* kStopFevCap = "fev_cap";
inline constexpr const char* kStopStall = "stall";
inline constexpr const char* kStopNoMove = "no_move";
inline constexpr const char* kStopNoImprovement = "no_improvement";
inline constexpr const char* kStopTMin = "t_min";

// Search loops. Each spends evaluations through `ev` and stops at the
// Fev cap, the iteration cap or its own stopping rule.
SearchStats greedy_search(design::Evaluator& ev, const SolverConfig& cfg);
SearchStats ga_search(design::Evaluator& ev, const SolverConfig& cfg, Rng& rng);
SearchStats sa_search(design::Evaluator& ev, const SolverConfig& cfg, Rng& rng,
                      const design::DesignVector& start, double t0);
SearchStats ts_search(design::Evaluator& ev, const SolverConfig& cfg, Rng& rng,
                      const design::DesignVector& start);
SearchStats pso_search(design::Evaluator& ev, const SolverConfig& cfg, Rng& rng);
SearchStats aco_search(design::Evaluator& ev, const SolverConfig& cfg, Rng& rng);

// Greedy phase of the hybrids, run once and reusable across seeds: the
// returned evaluator holds the greedy evaluations and best design.
struct GreedyPhase {
  std::shared_ptr<const design::Evaluator> evaluator;
  SearchStats stats;
  double wall_time_s = 0.0;  // charged to every run that reuses the phase
};
GreedyPhase run_greedy_phase(const design::DesignProblem& problem, const SolverConfig& cfg,
                             design::EvalObserver observer = {});

// Runs one solver end to end. `observer` sees every evaluate() request.
// `greedy` may carry a precomputed greedy phase for gr-sa / gr-ts; it must
// come from the same problem and Fev cap.
SolverResult solve(SolverKind kind, const design::DesignProblem& problem, const SolverConfig& cfg,
                   design::EvalObserver observer = {}, const GreedyPhase* greedy = nullptr);

SolverResult greedy_solve(const design::DesignProblem& problem, const SolverConfig& cfg);
SolverResult ga_solve(const design::DesignProblem& problem, const SolverConfig& cfg);
SolverResult sa_solve(const design::DesignProblem& problem, const SolverConfig& cfg,
                      const std::optional<design::DesignVector>& seed_design = std::nullopt);
SolverResult ts_solve(const design::DesignProblem& problem, const SolverConfig& cfg,
                      const std::optional<design::DesignVector>& seed_design = std::nullopt);
SolverResult pso_solve(const design::DesignProblem& problem, const SolverConfig& cfg);
SolverResult aco_solve(const design::DesignProblem& problem, const SolverConfig& cfg);
SolverResult gr_sa_solve(const design::DesignProblem& problem, const SolverConfig& cfg);
SolverResult gr_ts_solve(const design::DesignProblem& problem, const SolverConfig& cfg);

}  // namespace tndp::solvers
