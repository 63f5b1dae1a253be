#include "tndp/bench/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "tndp/solvers/config.hpp"

namespace tndp::bench {

Baseline make_baseline(const design::DesignProblem& problem, netcore::Weighting weighting) {
  Baseline b;
  b.travel_time = problem.baseline_travel_time();
  b.mean_betweenness = netcore::edge_betweenness(problem.base_net(), weighting).mean();
  b.weighting = weighting;
  return b;
}

namespace {

std::vector<double> collect(const RunBatch& batch, double (*get)(const RunRecord&)) {
  std::vector<double> v;
  for (const RunRecord& r : batch.runs) {
    if (r.ok) v.push_back(get(r));
  }
  return v;
}

double objective_of(const RunRecord& r) { return r.result.best_objective->total; }

double betweenness_of(const RunRecord& r) { return r.mean_betweenness; }

std::vector<ConvergencePoint> convergence(const RunBatch& batch, std::size_t step) {
  std::size_t last = 0;
  for (const RunRecord& r : batch.runs) {
    if (r.ok && !r.result.trace.empty()) last = std::max(last, r.result.trace.back().evals);
  }
  std::vector<ConvergencePoint> out;
  if (last == 0 || step == 0) return out;
  std::vector<std::size_t> marks;
  for (std::size_t e = 1; e < last; e += step) marks.push_back(e);
  marks.push_back(last);
  for (std::size_t mark : marks) {
    std::vector<double> vals;
    for (const RunRecord& r : batch.runs) {
      if (!r.ok) continue;
      // Best so far after `mark` evaluations; a finished run keeps its final best.
      const design::TracePoint* hit = nullptr;
      for (const auto& t : r.result.trace) {
        if (t.evals > mark) break;
        hit = &t;
      }
      if (hit != nullptr) vals.push_back(hit->best);
    }
    const Summary s = summarize(vals);
    out.push_back({mark, s.mean, s.stddev, s.count});
  }
  return out;
}

double safe_n_fold(double p0, double pi) {
  return pi > 0.0 ? n_fold(p0, pi) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

BenchReport compare(const std::vector<RunBatch>& batches, const Baseline& baseline, double alpha,
                    std::size_t convergence_step) {
  BenchReport rep;
  rep.baseline = baseline;
  rep.alpha = alpha;
  rep.batches = batches;
  if (!batches.empty()) rep.problem_id = batches.front().problem_id;
  for (const RunBatch& b : batches) {
    if (b.problem_id != rep.problem_id) {
      throw std::invalid_argument("compare needs batches of one problem");
    }
  }

  double best_mean = std::numeric_limits<double>::infinity();
  std::size_t best = batches.size();
  for (std::size_t i = 0; i < batches.size(); ++i) {
    const RunBatch& b = batches[i];
    SolverSection s;
    s.solver = b.solver;
    std::vector<std::vector<netcore::EdgeKey>> edge_sets;
    std::vector<double> tt, cross, evals;
    for (const RunRecord& r : b.runs) {
      if (!r.ok) {
        ++s.runs_failed;
        continue;
      }
      ++s.runs_ok;
      edge_sets.push_back(r.edges);
      tt.push_back(r.result.best_objective->travel_time);
      cross.push_back(static_cast<double>(r.result.best_objective->crossings));
      evals.push_back(static_cast<double>(r.result.evals_used));
    }
    s.objective = summarize(collect(b, objective_of));
    s.betweenness = summarize(collect(b, betweenness_of));
    s.travel_time = summarize(tt);
    s.crossings = summarize(cross);
    s.evals_used = summarize(evals);
    if (s.runs_ok > 0) {
      s.n_fold_objective = safe_n_fold(baseline.travel_time, s.objective.mean);
      s.n_fold_betweenness = safe_n_fold(baseline.mean_betweenness, s.betweenness.mean);
      if (s.objective.mean < best_mean) {
        best_mean = s.objective.mean;
        best = i;
      }
    }
    if (edge_sets.size() >= 2) s.stability = stability(edge_sets);
    s.convergence = convergence(b, convergence_step);
    rep.sections.push_back(std::move(s));
  }

  if (best < batches.size()) {
    rep.best_solver = batches[best].solver;
    const std::vector<double> ref_obj = collect(batches[best], objective_of);
    const std::vector<double> ref_btw = collect(batches[best], betweenness_of);
    for (std::size_t i = 0; i < batches.size(); ++i) {
      if (i == best || rep.sections[i].runs_ok == 0) continue;
      rep.sections[i].vs_best_objective =
          mann_whitney_u(collect(batches[i], objective_of), ref_obj, alpha);
      rep.sections[i].vs_best_betweenness =
          mann_whitney_u(collect(batches[i], betweenness_of), ref_btw, alpha);
    }
  }
  return rep;
}

namespace {

nlohmann::json summary_json(const Summary& s) {
  return {{"count", s.count}, {"mean", s.mean}, {"std", s.stddev}, {"min", s.min}, {"max", s.max}};
}

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json mw_json(const std::optional<MannWhitney>& mw) {
  if (!mw) return nullptr;
  return {{"u", mw->u}, {"p_value", mw->p_value}, {"reject", mw->reject}, {"method", mw->method}};
}

}  // namespace

nlohmann::json run_to_json(const RunRecord& run) {
  nlohmann::json j = {{"seed", run.seed}, {"ok", run.ok}};
  if (!run.ok) {
    j["error"] = run.error;
    return j;
  }
  const auto& obj = *run.result.best_objective;
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : run.edges) edges.push_back({e.lo, e.hi});
  j["objective"] = obj.total;
  j["travel_time"] = obj.travel_time;
  j["crossings"] = obj.crossings;
  j["cost_km"] = run.result.best_design.cost_km();
  j["edges"] = std::move(edges);
  j["candidate_indices"] = run.result.best_design.indices();
  j["evals_used"] = run.result.evals_used;
  j["iterations"] = run.result.iterations;
  j["stop_reason"] = run.result.stop_reason;
  j["mean_betweenness"] = run.mean_betweenness;
  j["assignment_gap"] = obj.assignment.relative_gap;
  j["assignment_converged"] = obj.assignment.converged;
  return j;
}

nlohmann::json to_json(const BenchReport& rep) {
  nlohmann::json j;
  j["problem_id"] = rep.problem_id;
  j["baseline"] = {{"travel_time", rep.baseline.travel_time},
                   {"mean_betweenness", rep.baseline.mean_betweenness},
                   {"betweenness_weighting", netcore::to_string(rep.baseline.weighting)}};
  j["hypothesis_test"] = {{"name", "mann-whitney-u"},
                          {"alternative", "two-sided"},
                          {"alpha", rep.alpha},
                          {"reference", rep.best_solver}};
  j["best_solver"] = rep.best_solver;
  nlohmann::json sections = nlohmann::json::array();
  for (std::size_t i = 0; i < rep.sections.size(); ++i) {
    const SolverSection& s = rep.sections[i];
    nlohmann::json sj;
    sj["solver"] = s.solver;
    sj["runs_ok"] = s.runs_ok;
    sj["runs_failed"] = s.runs_failed;
    sj["objective"] = summary_json(s.objective);
    sj["travel_time"] = summary_json(s.travel_time);
    sj["crossings"] = summary_json(s.crossings);
    sj["evals_used"] = summary_json(s.evals_used);
    sj["mean_betweenness"] = summary_json(s.betweenness);
    sj["n_fold_travel_time"] = number_or_null(s.n_fold_objective);
    sj["n_fold_betweenness"] = number_or_null(s.n_fold_betweenness);
    if (s.stability) {
      sj["stability"] = {{"model", s.stability->model}, {"per_run", s.stability->per_run}};
    } else {
      sj["stability"] = nullptr;
    }
    sj["vs_best_objective"] = mw_json(s.vs_best_objective);
    sj["vs_best_betweenness"] = mw_json(s.vs_best_betweenness);
    nlohmann::json conv = nlohmann::json::array();
    for (const auto& c : s.convergence) {
      conv.push_back({{"evals", c.evals}, {"mean", c.mean}, {"std", c.stddev}, {"runs", c.runs}});
    }
    sj["convergence"] = std::move(conv);
    nlohmann::json runs = nlohmann::json::array();
    if (i < rep.batches.size()) {
      for (const RunRecord& r : rep.batches[i].runs) runs.push_back(run_to_json(r));
    }
    sj["runs"] = std::move(runs);
    sections.push_back(std::move(sj));
  }
  j["solvers"] = std::move(sections);
  return j;
}

nlohmann::json timing_json(const std::vector<RunBatch>& batches) {
  nlohmann::json out = nlohmann::json::array();
  for (const RunBatch& b : batches) {
    std::vector<double> times;
    nlohmann::json runs = nlohmann::json::array();
    for (const RunRecord& r : b.runs) {
      runs.push_back({{"seed", r.seed}, {"wall_time_s", r.result.wall_time_s}});
      if (r.ok) times.push_back(r.result.wall_time_s);
    }
    out.push_back({{"solver", b.solver},
                   {"problem_id", b.problem_id},
                   {"wall_time_s", summary_json(summarize(times))},
                   {"runs", std::move(runs)}});
  }
  return out;
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<design::TracePoint>& trace,
                     const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "eval_count,best_objective\n";
  char buf[64];
  for (const auto& t : trace) {
    auto res = std::to_chars(buf, buf + sizeof buf, t.best);
    out << t.evals << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace tndp::bench
