#include <chrono>
#include <memory>
#include <stdexcept>

#include "tndp/solvers/solver.hpp"

namespace tndp::solvers {

using design::DesignProblem;
using design::DesignVector;
using design::Evaluator;

GreedyPhase run_greedy_phase(const DesignProblem& problem, const SolverConfig& cfg,
                             design::EvalObserver observer) {
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();
  auto ev = std::make_shared<Evaluator>(problem, cfg.fev_cap, std::move(observer));
  GreedyPhase phase;
  phase.stats = greedy_search(*ev, cfg);
  phase.evaluator = std::move(ev);
  phase.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return phase;
}

namespace {

SolverResult run(SolverKind kind, const DesignProblem& problem, const SolverConfig& cfg,
                 design::EvalObserver observer, const GreedyPhase* greedy,
                 const std::optional<DesignVector>& start) {
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();
  Rng rng(cfg.seed);
  std::unique_ptr<Evaluator> ev;
  SearchStats st;

  const bool hybrid = kind == SolverKind::kGrSa || kind == SolverKind::kGrTs;
  if (hybrid) {
    if (greedy != nullptr) {
      if (&greedy->evaluator->problem() != &problem || greedy->evaluator->fev_cap() != cfg.fev_cap) {
        throw std::invalid_argument("greedy phase was computed for a different problem or Fev cap");
      }
      ev = std::make_unique<Evaluator>(*greedy->evaluator);
      ev->set_observer(std::move(observer));
    } else {
      ev = std::make_unique<Evaluator>(problem, cfg.fev_cap, std::move(observer));
      greedy_search(*ev, cfg);
    }
  } else {
    ev = std::make_unique<Evaluator>(problem, cfg.fev_cap, std::move(observer));
  }

  const DesignVector from = start.value_or(DesignVector{});
  switch (kind) {
    case SolverKind::kGreedy:
      st = greedy_search(*ev, cfg);
      break;
    case SolverKind::kGa:
      st = ga_search(*ev, cfg, rng);
      break;
    case SolverKind::kSa:
      st = sa_search(*ev, cfg, rng, from, cfg.sa_t0);
      break;
    case SolverKind::kTs:
      st = ts_search(*ev, cfg, rng, from);
      break;
    case SolverKind::kPso:
      st = pso_search(*ev, cfg, rng);
      break;
    case SolverKind::kAco:
      st = aco_search(*ev, cfg, rng);
      break;
    case SolverKind::kGrSa:
    case SolverKind::kGrTs: {
      if (!ev->has_best()) {
        st.stop_reason = kStopFevCap;
        break;
      }
      // The greedy design is the best the evaluator has seen so far.
      const DesignVector seed = ev->best_design();
      st = kind == SolverKind::kGrSa ? sa_search(*ev, cfg, rng, seed, cfg.sa_t0_seeded)
                                     : ts_search(*ev, cfg, rng, seed);
      break;
    }
  }

  SolverResult r;
  r.solver = kind;
  r.seed = cfg.seed;
  if (ev->has_best()) {
    r.best_design = ev->best_design();
    r.best_objective = ev->best_objective();
  }
  r.trace = ev->trace();
  r.evals_used = ev->evals_used();
  r.iterations = st.iterations;
  r.stop_reason = st.stop_reason;
  r.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  if (hybrid && greedy != nullptr) r.wall_time_s += greedy->wall_time_s;
  return r;
}

}  // namespace

SolverResult solve(SolverKind kind, const DesignProblem& problem, const SolverConfig& cfg,
                   design::EvalObserver observer, const GreedyPhase* greedy) {
  return run(kind, problem, cfg, std::move(observer), greedy, std::nullopt);
}

SolverResult greedy_solve(const DesignProblem& problem, const SolverConfig& cfg) {
  return solve(SolverKind::kGreedy, problem, cfg);
}
SolverResult ga_solve(const DesignProblem& problem, const SolverConfig& cfg) {
  return solve(SolverKind::kGa, problem, cfg);
}
SolverResult sa_solve(const DesignProblem& problem, const SolverConfig& cfg,
                      const std::optional<DesignVector>& seed_design) {
  return run(SolverKind::kSa, problem, cfg, {}, nullptr, seed_design);
}
SolverResult ts_solve(const DesignProblem& problem, const SolverConfig& cfg,
                      const std::optional<DesignVector>& seed_design) {
  return run(SolverKind::kTs, problem, cfg, {}, nullptr, seed_design);
}
SolverResult pso_solve(const DesignProblem& problem, const SolverConfig& cfg) {
  return solve(SolverKind::kPso, problem, cfg);
}
SolverResult aco_solve(const DesignProblem& problem, const SolverConfig& cfg) {
  return solve(SolverKind::kAco, problem, cfg);
}
SolverResult gr_sa_solve(const DesignProblem& problem, const SolverConfig& cfg) {
  return solve(SolverKind::kGrSa, problem, cfg);
}
SolverResult gr_ts_solve(const DesignProblem& problem, const SolverConfig& cfg) {
  return solve(SolverKind::kGrTs, problem, cfg);
}

}  // namespace tndp::solvers
