#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace tndp::solvers {

enum class SolverKind { kGreedy, kGa, kSa, kTs, kPso, kAco, kGrSa, kGrTs };

// CLI names: greedy, ga, sa, ts, pso, aco, gr-sa, gr-ts.
std::string to_string(SolverKind kind);
SolverKind solver_from_string(const std::string& name);
const std::vector<SolverKind>& all_solvers();
bool is_stochastic(SolverKind kind);

struct SolverConfig {
  int pop_size = 20;
  int max_iter = 200;
  std::size_t fev_cap = 4000;
  std::uint64_t seed = 0;
  // Iterations without a new best before GA/SA/TS/PSO give up; 0 disables.
  int stall_limit = 50;

  int ga_elite = 2;
  int ga_crossover = 14;
  double ga_mutation_rate = 0.0;  // per bit; 0 means 1 / |candidates|

  double sa_t0 = 100.0;
  double sa_t0_seeded = 1.0;  // used by gr-sa
  double sa_t_min = 1e-3;
  double sa_cooling = 0.97;

  int ts_neighborhood = 20;
  int ts_tenure = 5;

  double pso_c1 = 2.0;
  double pso_c2 = 2.0;
  double pso_w_max = 0.9;
  double pso_w_min = 0.3;
  double pso_v_max = 4.0;

  double aco_q = 100.0;
  double aco_rho = 0.5;
  double aco_alpha = 2.0;
  double aco_beta = 2.0;
  double aco_tau0 = 1.0;

  void validate() const;
};

// Sets one field from text, e.g. ("sa_t0", "50"). Throws std::invalid_argument
// on unknown keys or values that do not parse.
void apply_override(SolverConfig& cfg, const std::string& key, const std::string& value);
std::vector<std::string> override_keys();

nlohmann::json to_json(const SolverConfig& cfg);

// Number of temperature levels before T drops to t_min or below.
int sa_max_cooling_steps(double t0, double t_min, double cooling);

// Linear inertia schedule from w_max at k = 0 to w_min at k = k_max.
double pso_inertia(double w_max, double w_min, int k, int k_max);

}  // namespace tndp::solvers
