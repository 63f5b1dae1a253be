#include <doctest.h>

#include <fstream>
#include <iterator>
#include <sstream>

#include "fixtures.hpp"
#include "tndp/cli/app.hpp"
#include "tndp/netcore/io.hpp"

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome tndp_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tndp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = tndp::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("validate passes on the bundled data") {
  const auto r = tndp_cli({"validate"});
  CHECK(r.code == 0);
  CHECK(r.out.find("candidates: 401") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("usage errors") {
  CHECK(tndp_cli({}).code != 0);
  const auto unknown = tndp_cli({"solve", "--solver", "hill-climb"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("unknown solver") != std::string::npos);
  CHECK(tndp_cli({"solve", "--solver", "sa", "--set", "warp=9"}).code == 2);
  CHECK(tndp_cli({"solve", "--solver", "sa", "--set", "pop_size"}).code == 2);
  CHECK(tndp_cli({"solve", "--solver", "sa", "--set", "seed=4"}).code == 2);
  CHECK(tndp_cli({"solve", "--solver", "greedy", "--q", "2"}).code == 2);
  CHECK(tndp_cli({"solve", "--solver", "greedy", "--lambda", "lots"}).code == 2);
  CHECK(tndp_cli({"bench", "--runs", "0"}).code == 2);
  CHECK(tndp_cli({"frobnicate"}).code != 0);
}

TEST_CASE("data errors name the file and line") {
  const auto dir = fixtures::temp_dir("cli_data");
  std::ofstream(dir / "od.csv") << "origin,dest,demand\n1,2,1\n1,99,2\n";
  const auto r = tndp_cli({"validate", "--od", (dir / "od.csv").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find((dir / "od.csv").string() + ":3") != std::string::npos);
}

TEST_CASE("validate flags demand without a path") {
  const auto dir = fixtures::temp_dir("cli_split");
  std::ofstream(dir / "nodes.csv") << "id,lat,lon,name\n1,0,0,a\n2,0,0.1,b\n3,0.1,0,c\n";
  std::ofstream(dir / "edges.csv") << "u,v\n1,2\n";
  std::ofstream(dir / "od.csv") << "origin,dest,demand\n1,3,1\n";
  const auto r = tndp_cli({"validate", "--nodes", (dir / "nodes.csv").string(), "--edges",
                           (dir / "edges.csv").string(), "--od", (dir / "od.csv").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("1->3") != std::string::npos);
}

TEST_CASE("analyze writes the edge report") {
  const auto dir = fixtures::temp_dir("cli_analyze");
  const auto r = tndp_cli({"analyze", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto j = tndp::netcore::load_report(dir / "analyze.json");
  CHECK(j["edges"].size() == 34);
  CHECK(j["weighting"]["selected"] == "hops");
  CHECK(j["correlation_betweenness_flow"]["spearman"].get<double>() > 0.0);
  CHECK(j["config"]["problem"]["budget_km"] == 100.0);
  for (const auto& e : j["edges"]) {
    if (e["u"] == 1 && e["v"] == 27) CHECK(std::abs(e["betweenness"].get<double>() - 0.066667) <= 1e-6);
  }
}

TEST_CASE("solve with no budget recommends nothing") {
  const auto dir = fixtures::temp_dir("cli_solve0");
  const auto r = tndp_cli({"solve", "--solver", "greedy", "--budget", "0", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("(no edges)") != std::string::npos);
  const auto j = tndp::netcore::load_report(dir / "solve_greedy.json");
  CHECK(j["result"]["edges"].empty());
  CHECK(j["result"]["objective"] == j["config"]["problem"]["baseline_travel_time"]);
  CHECK(j["n_fold_travel_time"] == 1.0);
  const std::string trace = slurp(dir / "solve_greedy_trace.csv");
  CHECK(trace.rfind("# {", 0) == 0);
  CHECK(trace.find("eval_count,best_objective\n") != std::string::npos);
}

TEST_CASE("bench is byte-identical across reruns") {
  const auto a = fixtures::temp_dir("cli_bench_a");
  const auto b = fixtures::temp_dir("cli_bench_b");
  const std::vector<std::string> common = {"bench", "--solvers", "greedy,gr-sa", "--runs", "2", "--seed", "7",
                                           "--set", "fev_cap=40", "--q", "0,1"};
  auto args_a = common;
  args_a.insert(args_a.end(), {"--out", a.string()});
  auto args_b = common;
  args_b.insert(args_b.end(), {"--out", b.string(), "--traces"});
  REQUIRE(tndp_cli(args_a).code == 0);
  REQUIRE(tndp_cli(args_b).code == 0);
  for (const char* f : {"bench_q0.json", "bench_q1.json"}) {
    CHECK(slurp(a / f) == slurp(b / f));
  }
  const auto j = tndp::netcore::load_report(a / "bench_q1.json");
  CHECK(j["config"]["problem"]["q"] == 1);
  CHECK(j["solvers"].size() == 2);
  CHECK(j["hypothesis_test"]["alternative"] == "two-sided");
  CHECK(std::filesystem::exists(b / "traces_q0" / "gr-sa_seed8.csv"));
  CHECK(std::filesystem::exists(a / "timing_q0.json"));
}

TEST_CASE("a single run omits stability") {
  const auto dir = fixtures::temp_dir("cli_bench_one");
  REQUIRE(tndp_cli({"bench", "--solvers", "greedy", "--runs", "1", "--set", "fev_cap=10", "--out", dir.string()}).code == 0);
  const auto j = tndp::netcore::load_report(dir / "bench_q0.json");
  CHECK(j["solvers"][0]["stability"].is_null());
}

TEST_CASE("problem file then flags") {
  const auto dir = fixtures::temp_dir("cli_cfg");
  std::ofstream(dir / "p.json") << R"({"budget_km": 0, "q": 1, "lambda": 5})";
  REQUIRE(tndp_cli({"solve", "--solver", "greedy", "--config", (dir / "p.json").string(), "--out", dir.string()}).code == 0);
  auto j = tndp::netcore::load_report(dir / "solve_greedy.json");
  CHECK(j["config"]["problem"]["budget_km"] == 0.0);
  CHECK(j["config"]["problem"]["q"] == 1);
  CHECK(j["config"]["problem"]["lambda"] == 5.0);
  REQUIRE(tndp_cli({"solve", "--solver", "greedy", "--config", (dir / "p.json").string(), "--q", "0",
                    "--lambda", "auto", "--out", dir.string()}).code == 0);
  j = tndp::netcore::load_report(dir / "solve_greedy.json");
  CHECK(j["config"]["problem"]["q"] == 0);
  CHECK(j["config"]["problem"]["lambda"] == "auto");
  std::ofstream(dir / "bad.json") << R"({"budjet": 1})";
  CHECK(tndp_cli({"solve", "--solver", "greedy", "--config", (dir / "bad.json").string()}).code == 1);
}
