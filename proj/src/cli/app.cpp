#include "tndp/cli/app.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tndp/bench/batch.hpp"
#include "tndp/bench/report.hpp"
#include "tndp/design/problem_file.hpp"
#include "tndp/netcore/io.hpp"
#include "tndp/solvers/config.hpp"
#include "tndp/solvers/solver.hpp"

namespace tndp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProblemOptions {
  std::string nodes;
  std::string edges;
  std::string od;
  std::string config;
  std::optional<double> budget;
  std::string q;  // "0", "1" or (bench only) "0,1"
  std::string lambda;
  std::optional<double> fw_tol;
  std::string out = ".";
};

struct Loaded {
  fs::path nodes, edges, od;
  netcore::RoadNetwork net;
  netcore::ODMatrix od_matrix;
  design::ProblemSettings settings;
};

void add_problem_options(CLI::App& sub, ProblemOptions& o, bool multi_q) {
  sub.add_option("--nodes", o.nodes, "Node CSV (id,lat,lon,name)");
  sub.add_option("--edges", o.edges, "Edge CSV (u,v[,length_km])");
  sub.add_option("--od", o.od, "OD demand CSV (dense or origin,dest,demand)");
  sub.add_option("--config", o.config, "Problem definition JSON");
  sub.add_option("--budget", o.budget, "Budget in km");
  sub.add_option("--q", o.q, multi_q ? "Crossing penalty switch: 0, 1 or 0,1" : "Crossing penalty switch: 0 or 1");
  sub.add_option("--lambda", o.lambda, "Penalty per crossing, or auto");
  sub.add_option("--fw-tol", o.fw_tol, "Relative gap tolerance of the assignment");
  sub.add_option("--out", o.out, "Output directory")->capture_default_str();
}

int parse_q(const std::string& s) {
  if (s == "0") return 0;
  if (s == "1") return 1;
  throw UsageError("--q must be 0 or 1, got '" + s + "'");
}

std::vector<int> parse_q_list(const std::string& s) {
  if (s.empty()) return {};
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const int q = parse_q(item);
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  }
  return out;
}

// Defaults, then the problem file, then flags.
Loaded load_inputs(const ProblemOptions& o) {
  const fs::path data_dir = TNDP_DATA_DIR;
  Loaded l;
  l.nodes = data_dir / "nodes.csv";
  l.edges = data_dir / "edges.csv";
  l.od = data_dir / "od.csv";
  if (!o.config.empty()) {
    const design::ProblemFile pf = design::load_problem_file(o.config);
    l.settings = pf.settings;
    if (pf.nodes) l.nodes = *pf.nodes;
    if (pf.edges) l.edges = *pf.edges;
    if (pf.od) l.od = *pf.od;
  }
  if (!o.nodes.empty()) l.nodes = o.nodes;
  if (!o.edges.empty()) l.edges = o.edges;
  if (!o.od.empty()) l.od = o.od;
  if (o.budget) l.settings.budget_km = *o.budget;
  if (!o.lambda.empty()) {
    if (o.lambda == "auto") {
      l.settings.lambda.reset();
    } else {
      try {
        std::size_t used = 0;
        const double v = std::stod(o.lambda, &used);
        if (used != o.lambda.size()) throw std::invalid_argument("trailing text");
        l.settings.lambda = v;
      } catch (const std::exception&) {
        throw UsageError("--lambda must be a number or auto, got '" + o.lambda + "'");
      }
    }
  }
  if (o.fw_tol) l.settings.assignment.fw_tolerance = *o.fw_tol;
  l.settings.assignment.validate();
  if (l.settings.budget_km < 0.0) throw UsageError("--budget must be >= 0");
  l.net = netcore::load_network(l.nodes, l.edges);
  l.od_matrix = netcore::load_od(l.od, l.net.node_count());
  return l;
}

json problem_config(const Loaded& l, const design::DesignProblem* p) {
  json j = design::to_json(l.settings);
  j["nodes"] = l.nodes.string();
  j["edges"] = l.edges.string();
  j["od"] = l.od.string();
  if (p != nullptr) {
    j["lambda_value"] = p->lambda();
    j["baseline_travel_time"] = p->baseline_travel_time();
    j["candidates"] = p->candidates().size();
  }
  return j;
}

std::string problem_id(const Loaded& l, int q) {
  std::string stem = l.nodes.parent_path().filename().string();
  if (stem.empty()) stem = "problem";
  return stem + "-q" + std::to_string(q);
}

fs::path ensure_dir(const std::string& dir) {
  fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
  fs::create_directories(p);
  return p;
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

std::optional<fs::path> reference_path(const Loaded& l, const std::string& flag) {
  if (!flag.empty()) return fs::path(flag);
  const fs::path guess = l.edges.parent_path() / "edge_reference.csv";
  if (fs::exists(guess)) return guess;
  return std::nullopt;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeOptions {
  ProblemOptions problem;
  std::string reference;
  std::string weighting = "auto";
};

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
  Loaded l = load_inputs(o.problem);
  if (!o.problem.q.empty()) l.settings.q = parse_q(o.problem.q);
  const design::DesignProblem problem(l.net, l.od_matrix, l.settings);

  std::vector<netcore::EdgeReference> reference;
  if (auto ref = reference_path(l, o.reference)) reference = netcore::load_edge_reference(*ref);

  json weighting_info;
  netcore::Weighting weighting = netcore::Weighting::kHops;
  if (o.weighting == "auto") {
    if (!reference.empty()) {
      const auto sel = netcore::select_weighting(l.net, reference);
      weighting = sel.selected;
      auto fit_json = [](const netcore::WeightingFit& f) {
        return json{{"max_abs_deviation", f.max_abs_deviation},
                    {"matched", f.matched},
                    {"compared", f.compared}};
      };
      weighting_info = {{"selected", netcore::to_string(weighting)},
                        {"rule", "lower max abs deviation from reference"},
                        {"hops", fit_json(sel.hops)},
                        {"distance", fit_json(sel.distance)}};
    } else {
      weighting_info = {{"selected", "hops"}, {"rule", "default (no reference table)"}};
    }
  } else {
    try {
      weighting = netcore::weighting_from_string(o.weighting);
    } catch (const std::exception&) {
      throw UsageError("--weighting must be auto, hops or distance");
    }
    weighting_info = {{"selected", netcore::to_string(weighting)}, {"rule", "user choice"}};
  }

  const auto scores = netcore::edge_betweenness(l.net, weighting);
  const design::ObjectiveValue base = design::evaluate_design(problem, design::DesignVector{});
  const auto& flows = base.assignment.link_flows;

  json edges = json::array();
  std::vector<double> btw, flow;
  out << std::left << std::setw(8) << "edge" << std::right << std::setw(11) << "length_km"
      << std::setw(13) << "betweenness" << std::setw(12) << "flow" << "  names\n";
  for (std::size_t i = 0; i < l.net.edge_count(); ++i) {
    const auto& e = l.net.edges()[i];
    json ej = {{"u", e.u},
               {"v", e.v},
               {"u_name", l.net.node(e.u).name},
               {"v_name", l.net.node(e.v).name},
               {"length_km", e.length_km},
               {"betweenness", scores.score[i]},
               {"flow", flows[i]},
               {"travel_time", base.assignment.link_times[i]}};
    for (const auto& r : reference) {
      if (r.key == netcore::EdgeKey(e)) {
        ej["reference_betweenness"] = r.betweenness;
        ej["reference_traffic_volume"] = r.traffic_volume;
      }
    }
    edges.push_back(std::move(ej));
    btw.push_back(scores.score[i]);
    flow.push_back(flows[i]);
    out << std::left << std::setw(8) << (std::to_string(e.u) + "-" + std::to_string(e.v))
        << std::right << std::fixed << std::setprecision(3) << std::setw(11) << e.length_km
        << std::setprecision(6) << std::setw(13) << scores.score[i] << std::setprecision(3)
        << std::setw(12) << flows[i] << std::defaultfloat << "  " << l.net.node(e.u).name
        << " - " << l.net.node(e.v).name << '\n';
  }
  const double pr = bench::pearson(btw, flow);
  const double sr = bench::spearman(btw, flow);
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };

  json report = {{"command", "analyze"},
                 {"config", {{"problem", problem_config(l, &problem)}}},
                 {"weighting", weighting_info},
                 {"mean_betweenness", scores.mean()},
                 {"baseline",
                  {{"travel_time", base.travel_time},
                   {"assignment_gap", base.assignment.relative_gap},
                   {"assignment_iterations", base.assignment.iterations},
                   {"assignment_converged", base.assignment.converged}}},
                 {"correlation_betweenness_flow", {{"pearson", num(pr)}, {"spearman", num(sr)}}},
                 {"edges", std::move(edges)}};
  const fs::path path = ensure_dir(o.problem.out) / "analyze.json";
  netcore::save_report(report, path);

  out << "weighting: " << netcore::to_string(weighting) << "\n"
      << "mean betweenness: " << fmt(scores.mean()) << "\n"
      << "baseline travel time T0: " << fmt(base.travel_time, 10) << "\n"
      << "pearson(betweenness, flow): " << fmt(pr, 4) << "\n"
      << "spearman(betweenness, flow): " << fmt(sr, 4) << "\n"
      << "report: " << path.string() << "\n";
  return 0;
}

// ------------------------------------------------------------------ solve

solvers::SolverConfig solver_config(const std::vector<std::string>& sets, std::uint64_t seed) {
  solvers::SolverConfig cfg;
  for (const std::string& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + kv + "'");
    if (kv.substr(0, eq) == "seed") throw UsageError("use --seed instead of --set seed=...");
    try {
      solvers::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  cfg.seed = seed;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

solvers::SolverKind parse_solver(const std::string& name) {
  try {
    return solvers::solver_from_string(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

struct SolveOptions {
  ProblemOptions problem;
  std::string solver;
  std::uint64_t seed = 0;
  std::vector<std::string> sets;
};

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  const solvers::SolverKind kind = parse_solver(o.solver);
  const solvers::SolverConfig cfg = solver_config(o.sets, o.seed);
  Loaded l = load_inputs(o.problem);
  if (!o.problem.q.empty()) l.settings.q = parse_q(o.problem.q);
  const design::DesignProblem problem(l.net, l.od_matrix, l.settings);

  const solvers::SolverResult r = solvers::solve(kind, problem, cfg);
  if (!r.best_objective) throw std::runtime_error("solver evaluated no design");

  bench::RunRecord rec;
  rec.seed = cfg.seed;
  rec.ok = true;
  rec.result = r;
  rec.edges = bench::design_edges(problem, r.best_design);
  rec.mean_betweenness =
      bench::design_mean_betweenness(problem, r.best_design, netcore::Weighting::kHops);

  const json config = {{"command", "solve"},
                       {"solver", solvers::to_string(kind)},
                       {"problem", problem_config(l, &problem)},
                       {"solver_config", solvers::to_json(cfg)}};
  json report = {{"config", config},
                 {"result", bench::run_to_json(rec)},
                 {"wall_time_s", r.wall_time_s},
                 {"n_fold_travel_time",
                  r.best_objective->total > 0.0
                      ? json(problem.baseline_travel_time() / r.best_objective->total)
                      : json(nullptr)}};
  const fs::path dir = ensure_dir(o.problem.out);
  const std::string stem = "solve_" + solvers::to_string(kind);
  netcore::save_report(report, dir / (stem + ".json"));
  bench::write_trace_csv(dir / (stem + "_trace.csv"), r.trace, config.dump());

  out << "Recommended roads (" << solvers::to_string(kind) << ", budget "
      << fmt(problem.budget_km()) << " km, q=" << problem.q() << ")\n";
  int rank = 0;
  for (int idx : r.best_design.indices()) {
    const auto& e = problem.candidates()[static_cast<std::size_t>(idx)];
    out << std::setw(3) << ++rank << "  " << e.u << "-" << e.v << "  " << std::fixed
        << std::setprecision(2) << e.length_km << " km  " << std::defaultfloat
        << l.net.node(e.u).name << " - " << l.net.node(e.v).name << '\n';
  }
  if (rank == 0) out << "  (no edges)\n";
  out << "total length: " << fmt(r.best_design.cost_km()) << " km\n"
      << "objective: " << fmt(r.best_objective->total, 10) << "\n"
      << "baseline T0: " << fmt(problem.baseline_travel_time(), 10) << "\n"
      << "crossings: " << r.best_objective->crossings << "\n"
      << "evaluations: " << r.evals_used << " (" << r.stop_reason << ")\n"
      << "report: " << (dir / (stem + ".json")).string() << "\n";
  return 0;
}

// ------------------------------------------------------------------ bench

struct BenchOptions {
  ProblemOptions problem;
  std::string solvers = "greedy,ga,sa,ts,pso,aco,gr-sa,gr-ts";
  int runs = 30;
  std::uint64_t seed = 0;
  std::vector<std::string> sets;
  bool traces = false;
};

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<solvers::SolverKind> kinds;
  {
    std::stringstream ss(o.solvers);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto k = parse_solver(item);
      if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) kinds.push_back(k);
    }
  }
  if (kinds.empty()) throw UsageError("--solvers is empty");
  if (o.runs < 1) throw UsageError("--runs must be >= 1");
  const solvers::SolverConfig cfg = solver_config(o.sets, o.seed);
  Loaded l = load_inputs(o.problem);
  std::vector<int> qs = parse_q_list(o.problem.q);
  if (qs.empty()) qs.push_back(l.settings.q);

  const fs::path dir = ensure_dir(o.problem.out);
  bool all_ok = true;
  for (int q : qs) {
    design::ProblemSettings settings = l.settings;
    settings.q = q;
    const design::DesignProblem problem(l.net, l.od_matrix, settings);
    const std::string id = problem_id(l, q);

    bench::BatchOptions bo;
    bo.n_runs = o.runs;
    bo.base_seed = o.seed;
    bo.problem_id = id;
    std::vector<bench::RunBatch> batches;
    for (auto k : kinds) {
      err << "[" << id << "] " << solvers::to_string(k) << " x" << o.runs << "\n";
      batches.push_back(bench::run_batch(problem, k, cfg, bo));
    }
    const bench::BenchReport rep =
        bench::compare(batches, bench::make_baseline(problem, netcore::Weighting::kHops));

    json config = {{"command", "bench"},
                   {"problem_id", id},
                   {"problem", problem_config(l, &problem)},
                   {"solvers", o.solvers},
                   {"runs", o.runs},
                   {"base_seed", o.seed},
                   {"solver_config", solvers::to_json(cfg)}};
    config["problem"]["q"] = q;
    json report = bench::to_json(rep);
    report["config"] = config;
    const std::string suffix = "q" + std::to_string(q);
    netcore::save_report(report, dir / ("bench_" + suffix + ".json"));
    json timing = {{"config", config}, {"timing", bench::timing_json(batches)}};
    netcore::save_report(timing, dir / ("timing_" + suffix + ".json"));
    if (o.traces) {
      const fs::path tdir = dir / ("traces_" + suffix);
      fs::create_directories(tdir);
      for (const auto& b : batches) {
        for (const auto& r : b.runs) {
          if (!r.ok) continue;
          bench::write_trace_csv(tdir / (b.solver + "_seed" + std::to_string(r.seed) + ".csv"),
                                 r.result.trace, config.dump());
        }
      }
    }

    out << "problem " << id << "  T0 " << fmt(rep.baseline.travel_time, 10) << "  best "
        << rep.best_solver << "\n";
    out << std::left << std::setw(8) << "solver" << std::right << std::setw(15) << "mean obj"
        << std::setw(15) << "std obj" << std::setw(10) << "n-fold" << std::setw(10) << "C_B"
        << std::setw(11) << "stability" << std::setw(10) << "p(best)" << std::setw(6) << "ok"
        << "\n";
    for (const auto& s : rep.sections) {
      out << std::left << std::setw(8) << s.solver << std::right << std::setw(15)
          << fmt(s.objective.mean, 8) << std::setw(15) << fmt(s.objective.stddev, 6)
          << std::setw(10) << fmt(s.n_fold_objective, 5) << std::setw(10)
          << fmt(s.betweenness.mean, 4) << std::setw(11)
          << (s.stability ? fmt(s.stability->model, 4) : std::string("-")) << std::setw(10)
          << (s.vs_best_objective ? fmt(s.vs_best_objective->p_value, 3) : std::string("-"))
          << std::setw(6) << (std::to_string(s.runs_ok) + "/" +
                              std::to_string(s.runs_ok + s.runs_failed))
          << "\n";
      if (s.runs_failed > 0) all_ok = false;
    }
    for (const auto& b : batches) {
      for (const auto& r : b.runs) {
        if (!r.ok) err << "run failed: " << b.solver << " seed " << r.seed << ": " << r.error << "\n";
      }
    }
    out << "report: " << (dir / ("bench_" + suffix + ".json")).string() << "\n";
  }
  return all_ok ? 0 : 1;
}

// --------------------------------------------------------------- validate

int cmd_validate(const ProblemOptions& o, const std::string& reference_flag, std::ostream& out,
                 std::ostream& err) {
  const Loaded l = load_inputs(o);
  int problems = 0;
  const std::size_t n = l.net.node_count();

  // Components by BFS over the undirected edges.
  std::vector<std::vector<int>> adj(n + 1);
  for (const auto& e : l.net.edges()) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<int> comp(n + 1, 0);
  int components = 0;
  for (std::size_t s = 1; s <= n; ++s) {
    if (comp[s] != 0) continue;
    ++components;
    std::queue<std::size_t> bfs;
    bfs.push(s);
    comp[s] = components;
    while (!bfs.empty()) {
      const std::size_t u = bfs.front();
      bfs.pop();
      for (int v : adj[u]) {
        if (comp[static_cast<std::size_t>(v)] == 0) {
          comp[static_cast<std::size_t>(v)] = components;
          bfs.push(static_cast<std::size_t>(v));
        }
      }
    }
  }
  for (std::size_t r = 1; r <= n; ++r) {
    for (std::size_t s = 1; s <= n; ++s) {
      if (l.od_matrix.at(static_cast<int>(r), static_cast<int>(s)) > 0.0 && comp[r] != comp[s]) {
        err << "demand " << r << "->" << s << " has no connecting path\n";
        ++problems;
      }
    }
  }
  if (auto ref = reference_path(l, reference_flag)) {
    for (const auto& r : netcore::load_edge_reference(*ref)) {
      if (!l.net.has_edge(r.key.lo, r.key.hi)) {
        err << ref->string() << ": reference edge " << r.key.lo << "-" << r.key.hi
            << " is not in the network\n";
        ++problems;
      }
    }
  }
  const std::size_t pairs = n * (n - 1) / 2;
  out << "nodes: " << n << "\n"
      << "edges: " << l.net.edge_count() << "\n"
      << "candidates: " << pairs - l.net.edge_count() << "\n"
      << "components: " << components << "\n"
      << "od nonzero: " << l.od_matrix.nonzero_count() << "\n"
      << "od total: " << fmt(l.od_matrix.total()) << "\n"
      << (problems == 0 ? "ok\n" : "problems: " + std::to_string(problems) + "\n");
  return problems == 0 ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Budget-constrained road network design on a user-equilibrium traffic model"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  AnalyzeOptions analyze;
  auto* a = app.add_subcommand("analyze", "Edge betweenness, baseline flows and their correlation");
  add_problem_options(*a, analyze.problem, false);
  a->add_option("--reference", analyze.reference, "Reference table u,v,betweenness,traffic_volume");
  a->add_option("--weighting", analyze.weighting, "auto, hops or distance")->capture_default_str();

  SolveOptions solve;
  auto* s = app.add_subcommand("solve", "Run one solver once");
  add_problem_options(*s, solve.problem, false);
  s->add_option("--solver", solve.solver, "greedy, ga, sa, ts, pso, aco, gr-sa or gr-ts")->required();
  s->add_option("--seed", solve.seed, "RNG seed")->capture_default_str();
  s->add_option("--set", solve.sets, "Solver setting override key=value (repeatable)");

  BenchOptions bench_opts;
  auto* b = app.add_subcommand("bench", "Seeded multi-run comparison of solvers");
  add_problem_options(*b, bench_opts.problem, true);
  b->add_option("--solvers", bench_opts.solvers, "Comma-separated solver names")->capture_default_str();
  b->add_option("--runs", bench_opts.runs, "Runs per solver")->capture_default_str();
  b->add_option("--seed", bench_opts.seed, "Base seed; run i uses seed + i")->capture_default_str();
  b->add_option("--set", bench_opts.sets, "Solver setting override key=value (repeatable)");
  b->add_flag("--traces", bench_opts.traces, "Write one convergence CSV per run");

  ProblemOptions validate;
  std::string validate_ref;
  auto* v = app.add_subcommand("validate", "Lint network, demand and reference files");
  v->add_option("--nodes", validate.nodes, "Node CSV");
  v->add_option("--edges", validate.edges, "Edge CSV");
  v->add_option("--od", validate.od, "OD demand CSV");
  v->add_option("--config", validate.config, "Problem definition JSON");
  v->add_option("--reference", validate_ref, "Reference table to cross-check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (a->parsed()) return cmd_analyze(analyze, out);
    if (s->parsed()) return cmd_solve(solve, out);
    if (b->parsed()) return cmd_bench(bench_opts, out, err);
    if (v->parsed()) return cmd_validate(validate, validate_ref, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace tndp::cli
