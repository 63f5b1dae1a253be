#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tndp/assignment/frank_wolfe.hpp"
#include "tndp/netcore/network.hpp"

namespace tndp::design {

struct ProblemSettings {
  double budget_km = 100.0;
  int q = 0;                     // 1 enables the crossing penalty
  std::optional<double> lambda;  // per-crossing penalty; empty = T0 / 10
  assignment::AssignmentConfig assignment;
};

class DesignProblem;

// A selection of candidate edges, stored as sorted unique candidate indices.
class DesignVector {
 public:
  DesignVector() = default;
  // Throws std::out_of_range on an invalid index, std::invalid_argument on
  // duplicates.
  DesignVector(const DesignProblem& problem, std::vector<int> indices);

  const std::vector<int>& indices() const { return indices_; }
  double cost_km() const { return cost_km_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(int index) const;

  std::vector<char> bits(std::size_t candidate_count) const;

  bool operator==(const DesignVector& o) const { return indices_ == o.indices_; }

 private:
  std::vector<int> indices_;
  double cost_km_ = 0.0;
};

struct ObjectiveValue {
  double total = 0.0;        // travel_time + q * lambda * crossings
  double travel_time = 0.0;
  std::size_t crossings = 0;
  bool feasible = true;
  assignment::AssignmentResult assignment;
};

class InfeasibleDesign : public std::runtime_error {
 public:
  InfeasibleDesign(double cost_km, double budget_km);
};

class DesignProblem {
 public:
  // Builds the candidate set and crossing tables, evaluates the empty design
  // for T0 and resolves an automatic lambda.
  DesignProblem(netcore::RoadNetwork base, netcore::ODMatrix od, const ProblemSettings& settings);

  const netcore::RoadNetwork& base_net() const { return base_; }
  const netcore::CandidateSet& candidates() const { return candidates_; }
  const netcore::ODMatrix& od() const { return od_; }
  double budget_km() const { return budget_km_; }
  int q() const { return q_; }
  double lambda() const { return lambda_; }
  bool lambda_auto() const { return lambda_auto_; }
  const assignment::AssignmentConfig& assignment_config() const { return assignment_cfg_; }

  // Travel time of the unaugmented network (the empty design).
  double baseline_travel_time() const { return baseline_travel_time_; }

  // Candidate i crosses this many base edges.
  int base_crossings(std::size_t i) const { return base_crossings_[i]; }
  bool candidates_cross(std::size_t i, std::size_t j) const;

 private:
  netcore::RoadNetwork base_;
  netcore::CandidateSet candidates_;
  netcore::ODMatrix od_;
  double budget_km_;
  int q_;
  double lambda_ = 0.0;
  bool lambda_auto_ = true;
  assignment::AssignmentConfig assignment_cfg_;
  double baseline_travel_time_ = 0.0;
  std::vector<int> base_crossings_;
  std::vector<std::vector<bool>> candidate_cross_;
};

netcore::RoadNetwork augment(const DesignProblem& problem, const DesignVector& y);

struct BudgetCheck {
  bool feasible = true;
  double cost_km = 0.0;
};

BudgetCheck budget_check(const DesignProblem& problem, const DesignVector& y);

// Crossing pairs with at least one selected member, excluding pairs that
// share an endpoint node.
std::size_t crossings(const DesignProblem& problem, const DesignVector& y);

// Solves the equilibrium on the augmented network and assembles the
// objective. Throws InfeasibleDesign for over-budget input and propagates
// assignment::DisconnectedDemand. Does not count evaluations; see Evaluator.
ObjectiveValue evaluate_design(const DesignProblem& problem, const DesignVector& y);

}  // namespace tndp::design
