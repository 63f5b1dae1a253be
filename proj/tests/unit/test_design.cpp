#include <doctest.h>

#include <cstring>
#include <thread>

#include "fixtures.hpp"
#include "tndp/design/evaluator.hpp"
#include "tndp/design/problem.hpp"
#include "tndp/design/problem_file.hpp"

using namespace tndp::design;

namespace {

int candidate_index(const DesignProblem& p, int u, int v) {
  for (std::size_t i = 0; i < p.candidates().size(); ++i) {
    const auto& e = p.candidates()[i];
    if (e.u == std::min(u, v) && e.v == std::max(u, v)) return static_cast<int>(i);
  }
  return -1;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("design vectors") {
  const DesignProblem p = fixtures::toy_problem();
  const DesignVector y(p, {3, 0, 1});
  CHECK(y.indices() == std::vector<int>{0, 1, 3});
  CHECK(y.contains(3));
  CHECK_FALSE(y.contains(2));
  CHECK(y.cost_km() == doctest::Approx(p.candidates().cost_km(0) + p.candidates().cost_km(1) + p.candidates().cost_km(3)));
  CHECK_THROWS_AS(DesignVector(p, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(DesignVector(p, {-1}), std::out_of_range);
  CHECK_THROWS_AS(DesignVector(p, {static_cast<int>(p.candidates().size())}), std::out_of_range);
}

TEST_CASE("augmentation") {
  const DesignProblem p = fixtures::toy_problem();
  CHECK(augment(p, DesignVector{}) == p.base_net());
  std::vector<int> all(p.candidates().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  const auto complete = augment(p, DesignVector(p, all));
  CHECK(complete.edge_count() == 15);

  const DesignProblem k = fixtures::kinshasa_problem();
  const int c13 = candidate_index(k, 1, 3);
  REQUIRE(c13 >= 0);
  const auto aug = augment(k, DesignVector(k, {c13}));
  CHECK(aug.edge_count() == 35);
  for (std::size_t i = 0; i < 34; ++i) {
    CHECK(aug.edges()[i].u == k.base_net().edges()[i].u);
    CHECK(aug.edges()[i].v == k.base_net().edges()[i].v);
  }
}

TEST_CASE("budget check is a closed constraint") {
  const DesignProblem p = fixtures::toy_problem();
  CHECK(budget_check(p, DesignVector{}).feasible);
  CHECK(budget_check(p, DesignVector{}).cost_km == 0.0);

  // Budget equal to one candidate's length.
  const double len = p.candidates().cost_km(0);
  tndp::design::ProblemSettings s;
  s.budget_km = len;
  const DesignProblem exact(p.base_net(), p.od(), s);
  CHECK(budget_check(exact, DesignVector(exact, {0})).feasible);
  s.budget_km = len * (1.0 - 1e-9);
  const DesignProblem under(p.base_net(), p.od(), s);
  CHECK_FALSE(budget_check(under, DesignVector(under, {0})).feasible);
  CHECK_THROWS_AS(evaluate_design(under, DesignVector(under, {0})), InfeasibleDesign);
}

TEST_CASE("crossing counts") {
  const DesignProblem p = fixtures::toy_problem();
  CHECK(crossings(p, DesignVector{}) == 0);
  // 1-4 and 3-6 are the two long diagonals of the 2x1 block; they also cross
  // the middle rung 2-5 when it is selected.
  const int d14 = candidate_index(p, 1, 4);
  const int d36 = candidate_index(p, 3, 6);
  const int r25 = candidate_index(p, 2, 5);
  const int d15 = candidate_index(p, 1, 5);
  const int d26 = candidate_index(p, 2, 6);
  CHECK(crossings(p, DesignVector(p, {d14})) == 0);
  CHECK(crossings(p, DesignVector(p, {d14, d36})) == 1);
  CHECK(crossings(p, DesignVector(p, {d14, r25})) == 1);
  CHECK(crossings(p, DesignVector(p, {d15, r25})) == 0);  // meet at node 5
  CHECK(crossings(p, DesignVector(p, {d15, d26})) == 1);
}

TEST_CASE("selected edge crossing a base edge") {
  using tndp::netcore::Edge;
  using tndp::netcore::Node;
  // Square 1-2-3-4 with base diagonal 1-3; candidate 2-4 crosses it.
  std::vector<Node> nodes = {fixtures::grid_node(1, 0, 0), fixtures::grid_node(2, 1, 0),
                             fixtures::grid_node(3, 1, 1), fixtures::grid_node(4, 0, 1)};
  std::vector<Edge> edges = {{1, 2, 0}, {2, 3, 0}, {3, 4, 0}, {1, 4, 0}, {1, 3, 0}};
  tndp::netcore::ODMatrix od(4);
  od.set(2, 4, 1.0);
  ProblemSettings s;
  s.q = 1;
  s.lambda = 7.0;
  const DesignProblem p(tndp::netcore::RoadNetwork(nodes, edges), od, s);
  REQUIRE(p.candidates().size() == 1);
  const DesignVector y(p, {0});
  CHECK(crossings(p, y) == 1);
  const auto v = evaluate_design(p, y);
  CHECK(v.total == doctest::Approx(v.travel_time + 7.0));
}

TEST_CASE("objective assembly") {
  const DesignProblem p0 = fixtures::toy_problem(60.0, 0);
  const DesignProblem p1 = fixtures::toy_problem(60.0, 1);
  const auto e0 = evaluate_design(p0, DesignVector{});
  const auto e1 = evaluate_design(p1, DesignVector{});
  CHECK(e0.total == p0.baseline_travel_time());
  CHECK(e1.total == p1.baseline_travel_time());
  CHECK(e0.total == e1.total);
  CHECK(p1.lambda() == doctest::Approx(p1.baseline_travel_time() / 10.0));
  CHECK(p1.lambda_auto());

  const int d14 = candidate_index(p0, 1, 4);
  const int d36 = candidate_index(p0, 3, 6);
  const DesignVector y(p0, {d14, d36});
  const auto v0 = evaluate_design(p0, y);
  CHECK(v0.total == v0.travel_time);
  CHECK(v0.travel_time == v0.assignment.total_travel_time);

  // q = 0 ignores lambda.
  ProblemSettings s;
  s.budget_km = 60.0;
  s.lambda = 1e9;
  const DesignProblem big(p0.base_net(), p0.od(), s);
  CHECK(same_bits(evaluate_design(big, y).total, v0.total));

  const DesignVector y1(p1, {d14, d36});
  const auto v1 = evaluate_design(p1, y1);
  CHECK(v1.crossings == 1);
  CHECK(v1.total == doctest::Approx(v1.travel_time + p1.lambda()));
}

TEST_CASE("evaluation is deterministic") {
  const DesignProblem p = fixtures::toy_problem();
  const DesignVector y(p, {4});
  const auto a = evaluate_design(p, y);
  const auto b = evaluate_design(p, y);
  CHECK(same_bits(a.total, b.total));
  CHECK(a.assignment.link_flows == b.assignment.link_flows);
  CHECK(a.assignment.iterations == b.assignment.iterations);
}

TEST_CASE("kinshasa baseline") {
  const DesignProblem p = fixtures::kinshasa_problem();
  CHECK(p.candidates().size() == 401);
  CHECK(p.baseline_travel_time() > 0.0);
  const auto base = evaluate_design(p, DesignVector{});
  CHECK(base.assignment.converged);
  CHECK(same_bits(base.total, p.baseline_travel_time()));
}

TEST_CASE("evaluator counts distinct designs and caches") {
  const DesignProblem p = fixtures::toy_problem();
  Evaluator ev(p, 3);
  const DesignVector a(p, {0});
  const DesignVector b(p, {1});
  const DesignVector c(p, {2});
  const DesignVector d(p, {3});
  const double fa = ev.objective(a);
  CHECK(ev.evals_used() == 1);
  CHECK(ev.is_cached(a));
  CHECK(ev.objective(a) == fa);
  CHECK(ev.evals_used() == 1);
  ev.objective(b);
  ev.objective(c);
  CHECK(ev.evals_used() == 3);
  CHECK(ev.remaining() == 0);
  CHECK_THROWS_AS(ev.objective(d), EvalBudgetExhausted);
  CHECK(ev.objective(b) == ev.evaluate(b)->total);  // cached still served

  const auto trace = ev.trace();
  REQUIRE(trace.size() == 3);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    CHECK(trace[i].evals == i + 1);
    if (i > 0) CHECK(trace[i].best <= trace[i - 1].best);
  }
  CHECK(ev.best_objective()->total == trace.back().best);
}

TEST_CASE("evaluator rejects infeasible designs before solving") {
  const DesignProblem p = fixtures::toy_problem(5.0);
  int seen = 0, infeasible = 0;
  Evaluator ev(p, 10, [&](const DesignVector&, bool ok) {
    ++seen;
    if (!ok) ++infeasible;
  });
  std::vector<int> all(p.candidates().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  CHECK_THROWS_AS(ev.evaluate(DesignVector(p, all)), InfeasibleDesign);
  CHECK(ev.evals_used() == 0);
  CHECK(seen == 1);
  CHECK(infeasible == 1);
}

TEST_CASE("evaluator counts exactly under concurrency") {
  const DesignProblem p = fixtures::toy_problem();
  Evaluator ev(p, 1000);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&] {
      for (int i = 0; i < 6; ++i) ev.objective(DesignVector(p, {i}));
    });
  }
  for (auto& th : pool) th.join();
  CHECK(ev.evals_used() == 6);
}

TEST_CASE("problem definition documents") {
  const auto pf = parse_problem_json(nlohmann::json::parse(R"({
    "budget_km": 50, "q": 1, "lambda": 12.5,
    "assignment": {"fw_tolerance": 1e-4, "direction": "conjugate"},
    "nodes": "n.csv"})"),
                                     "/data");
  CHECK(pf.settings.budget_km == 50.0);
  CHECK(pf.settings.q == 1);
  CHECK(*pf.settings.lambda == 12.5);
  CHECK(pf.settings.assignment.fw_tolerance == 1e-4);
  CHECK(pf.settings.assignment.direction == tndp::assignment::Direction::kConjugate);
  CHECK(*pf.nodes == std::filesystem::path("/data/n.csv"));
  CHECK_FALSE(pf.edges.has_value());

  CHECK_FALSE(parse_problem_json(nlohmann::json::parse(R"({"lambda": "auto"})")).settings.lambda.has_value());
  CHECK_THROWS(parse_problem_json(nlohmann::json::parse(R"({"budget": 5})")));
  CHECK_THROWS(parse_problem_json(nlohmann::json::parse(R"({"q": 2})")));
  CHECK_THROWS(parse_problem_json(nlohmann::json::parse(R"({"lambda": "big"})")));
  CHECK_THROWS(parse_problem_json(nlohmann::json::parse(R"({"assignment": {"tol": 1}})")));

  ProblemSettings s;
  s.budget_km = 42;
  s.lambda = 3.0;
  const auto back = parse_problem_json(to_json(s)).settings;
  CHECK(back.budget_km == 42.0);
  CHECK(*back.lambda == 3.0);
}
