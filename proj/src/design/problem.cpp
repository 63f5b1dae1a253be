#include "tndp/design/problem.hpp"

#include <algorithm>
#include <string>

#include "tndp/netcore/geometry.hpp"

namespace tndp::design {

DesignVector::DesignVector(const DesignProblem& problem, std::vector<int> indices)
    : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  const auto n = static_cast<int>(problem.candidates().size());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const int idx = indices_[i];
    if (idx < 0 || idx >= n) {
      throw std::out_of_range("candidate index " + std::to_string(idx) + " out of range");
    }
    if (i > 0 && indices_[i - 1] == idx) {
      throw std::invalid_argument("duplicate candidate index " + std::to_string(idx));
    }
    cost_km_ += problem.candidates().cost_km(static_cast<std::size_t>(idx));
  }
}

bool DesignVector::contains(int index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

std::vector<char> DesignVector::bits(std::size_t candidate_count) const {
  std::vector<char> b(candidate_count, 0);
  for (int i : indices_) b[static_cast<std::size_t>(i)] = 1;
  return b;
}

InfeasibleDesign::InfeasibleDesign(double cost_km, double budget_km)
    : std::runtime_error("design costs " + std::to_string(cost_km) + " km, budget is " +
                         std::to_string(budget_km) + " km") {}

DesignProblem::DesignProblem(netcore::RoadNetwork base, netcore::ODMatrix od,
                             const ProblemSettings& settings)
    : base_(std::move(base)),
      candidates_(netcore::build_candidates(base_)),
      od_(std::move(od)),
      budget_km_(settings.budget_km),
      q_(settings.q),
      assignment_cfg_(settings.assignment) {
  if (budget_km_ < 0.0) throw std::invalid_argument("budget_km must be >= 0");
  if (q_ != 0 && q_ != 1) throw std::invalid_argument("q must be 0 or 1");
  if (settings.lambda && *settings.lambda < 0.0) {
    throw std::invalid_argument("lambda must be >= 0");
  }
  if (od_.size() != base_.node_count()) {
    throw std::invalid_argument("OD matrix size does not match the network");
  }
  assignment_cfg_.validate();

  const std::size_t m = candidates_.size();
  base_crossings_.assign(m, 0);
  candidate_cross_.assign(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i) {
    const netcore::Edge& ci = candidates_[i];
    for (const netcore::Edge& b : base_.edges()) {
      if (netcore::edges_cross(base_, ci, b)) ++base_crossings_[i];
    }
    for (std::size_t j = i + 1; j < m; ++j) {
      if (netcore::edges_cross(base_, ci, candidates_[j])) {
        candidate_cross_[i][j] = true;
        candidate_cross_[j][i] = true;
      }
    }
  }

  baseline_travel_time_ = evaluate_design(*this, DesignVector{}).travel_time;
  if (settings.lambda) {
    lambda_ = *settings.lambda;
    lambda_auto_ = false;
  } else {
    lambda_ = baseline_travel_time_ / 10.0;
    lambda_auto_ = true;
  }
}

bool DesignProblem::candidates_cross(std::size_t i, std::size_t j) const {
  return candidate_cross_[i][j];
}

netcore::RoadNetwork augment(const DesignProblem& problem, const DesignVector& y) {
  std::vector<netcore::Edge> extra;
  extra.reserve(y.size());
  for (int i : y.indices()) {
    if (i < 0 || static_cast<std::size_t>(i) >= problem.candidates().size()) {
      throw std::out_of_range("candidate index " + std::to_string(i) + " out of range");
    }
    extra.push_back(problem.candidates()[static_cast<std::size_t>(i)]);
  }
  return problem.base_net().with_edges(extra);
}

BudgetCheck budget_check(const DesignProblem& problem, const DesignVector& y) {
  double cost = 0.0;
  for (int i : y.indices()) cost += problem.candidates().cost_km(static_cast<std::size_t>(i));
  return {cost <= problem.budget_km(), cost};
}

std::size_t crossings(const DesignProblem& problem, const DesignVector& y) {
  std::size_t count = 0;
  const auto& idx = y.indices();
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const auto i = static_cast<std::size_t>(idx[a]);
    count += static_cast<std::size_t>(problem.base_crossings(i));
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (problem.candidates_cross(i, static_cast<std::size_t>(idx[b]))) ++count;
    }
  }
  return count;
}

ObjectiveValue evaluate_design(const DesignProblem& problem, const DesignVector& y) {
  const BudgetCheck bc = budget_check(problem, y);
  if (!bc.feasible) throw InfeasibleDesign(bc.cost_km, problem.budget_km());

  assignment::ArcNetwork arcs;
  const auto& base = problem.base_net();
  arcs.node_count = base.node_count();
  arcs.link_length.reserve(base.edge_count() + y.size());
  arcs.arcs.reserve(2 * (base.edge_count() + y.size()));
  auto add_link = [&arcs](const netcore::Edge& e) {
    const auto link = static_cast<int>(arcs.link_length.size());
    arcs.link_length.push_back(e.length_km);
    arcs.arcs.push_back({e.u - 1, e.v - 1, link});
    arcs.arcs.push_back({e.v - 1, e.u - 1, link});
  };
  for (const netcore::Edge& e : base.edges()) add_link(e);
  for (int i : y.indices()) add_link(problem.candidates()[static_cast<std::size_t>(i)]);
  arcs.finalize();

  ObjectiveValue out;
  out.assignment = assignment::frank_wolfe(arcs, problem.od(), problem.assignment_config());
  out.travel_time = out.assignment.total_travel_time;
  out.crossings = crossings(problem, y);
  out.feasible = true;
  out.total = out.travel_time +
              static_cast<double>(problem.q()) * problem.lambda() * static_cast<double>(out.crossings);
  return out;
}

}  // namespace tndp::design
