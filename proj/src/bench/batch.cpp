#include "tndp/bench/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <memory>
#include <thread>

namespace tndp::bench {

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TNDP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

double design_mean_betweenness(const design::DesignProblem& problem, const design::DesignVector& y,
                               netcore::Weighting weighting) {
  return netcore::edge_betweenness(design::augment(problem, y), weighting).mean();
}

std::vector<netcore::EdgeKey> design_edges(const design::DesignProblem& problem,
                                           const design::DesignVector& y) {
  std::vector<netcore::EdgeKey> out;
  for (int i : y.indices()) out.emplace_back(problem.candidates()[static_cast<std::size_t>(i)]);
  return out;
}

namespace {

void finish_record(const design::DesignProblem& problem, const BatchOptions& opts, RunRecord& rec) {
  rec.edges = design_edges(problem, rec.result.best_design);
  rec.mean_betweenness = design_mean_betweenness(problem, rec.result.best_design, opts.weighting);
  rec.ok = rec.result.best_objective != nullptr;
  if (!rec.ok) rec.error = "no design was evaluated";
}

template <typename Fn>
void parallel_for(std::size_t jobs, unsigned threads, Fn fn) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs; i = next++) fn(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace

RunBatch run_batch(const design::DesignProblem& problem, solvers::SolverKind kind,
                   const solvers::SolverConfig& cfg, const BatchOptions& opts) {
  if (opts.n_runs < 1) throw std::invalid_argument("n_runs must be >= 1");
  cfg.validate();
  RunBatch batch;
  batch.solver = solvers::to_string(kind);
  batch.problem_id = opts.problem_id;
  const auto n = static_cast<std::size_t>(opts.n_runs);
  for (std::size_t i = 0; i < n; ++i) batch.seeds.push_back(opts.base_seed + i);
  batch.runs.resize(n);

  // The greedy phase of the hybrids does not depend on the seed: run it once.
  std::optional<solvers::GreedyPhase> greedy;
  std::string greedy_error;
  if (kind == solvers::SolverKind::kGrSa || kind == solvers::SolverKind::kGrTs) {
    try {
      greedy = solvers::run_greedy_phase(problem, cfg, opts.observer);
    } catch (const std::exception& e) {
      greedy_error = e.what();
    }
  }

  const unsigned threads = opts.threads > 0 ? std::min<unsigned>(opts.threads, static_cast<unsigned>(n))
                                            : worker_count(n);
  parallel_for(n, threads, [&](std::size_t i) {
    RunRecord& rec = batch.runs[i];
    rec.seed = batch.seeds[i];
    try {
      if (!greedy_error.empty()) throw std::runtime_error(greedy_error);
      solvers::SolverConfig run_cfg = cfg;
      run_cfg.seed = rec.seed;
      rec.result = solvers::solve(kind, problem, run_cfg, opts.observer,
                                  greedy ? &*greedy : nullptr);
      finish_record(problem, opts, rec);
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
    }
  });
  return batch;
}

RunBatch empty_batch(const design::DesignProblem& problem, const BatchOptions& opts) {
  if (opts.n_runs < 1) throw std::invalid_argument("n_runs must be >= 1");
  RunBatch batch;
  batch.solver = "empty";
  batch.problem_id = opts.problem_id;
  for (int i = 0; i < opts.n_runs; ++i) {
    RunRecord rec;
    rec.seed = opts.base_seed + static_cast<std::uint64_t>(i);
    design::Evaluator ev(problem, 1, opts.observer);
    ev.evaluate(design::DesignVector{});
    rec.result.best_design = ev.best_design();
    rec.result.best_objective = ev.best_objective();
    rec.result.trace = ev.trace();
    rec.result.evals_used = ev.evals_used();
    rec.result.stop_reason = solvers::kStopNoMove;
    finish_record(problem, opts, rec);
    batch.seeds.push_back(rec.seed);
    batch.runs.push_back(std::move(rec));
  }
  return batch;
}

}  // namespace tndp::bench
