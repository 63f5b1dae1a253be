#include "tndp/solvers/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace tndp::solvers {

namespace {

const std::vector<std::pair<SolverKind, std::string>>& names() {
  static const std::vector<std::pair<SolverKind, std::string>> n = {
      {SolverKind::kGreedy, "greedy"}, {SolverKind::kGa, "ga"},     {SolverKind::kSa, "sa"},
      {SolverKind::kTs, "ts"},         {SolverKind::kPso, "pso"},   {SolverKind::kAco, "aco"},
      {SolverKind::kGrSa, "gr-sa"},    {SolverKind::kGrTs, "gr-ts"}};
  return n;
}

template <typename T>
T parse(const std::string& key, const std::string& text) {
  T v{};
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end) {
    throw std::invalid_argument("bad value '" + text + "' for '" + key + "'");
  }
  return v;
}

using Setter = std::function<void(SolverConfig&, const std::string&, const std::string&)>;

template <typename T>
Setter field(T SolverConfig::*member) {
  return [member](SolverConfig& c, const std::string& k, const std::string& v) {
    c.*member = parse<T>(k, v);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> s = {
      {"pop_size", field(&SolverConfig::pop_size)},
      {"max_iter", field(&SolverConfig::max_iter)},
      {"fev_cap", field(&SolverConfig::fev_cap)},
      {"seed", field(&SolverConfig::seed)},
      {"stall_limit", field(&SolverConfig::stall_limit)},
      {"ga_elite", field(&SolverConfig::ga_elite)},
      {"ga_crossover", field(&SolverConfig::ga_crossover)},
      {"ga_mutation_rate", field(&SolverConfig::ga_mutation_rate)},
      {"sa_t0", field(&SolverConfig::sa_t0)},
      {"sa_t0_seeded", field(&SolverConfig::sa_t0_seeded)},
      {"sa_t_min", field(&SolverConfig::sa_t_min)},
      {"sa_cooling", field(&SolverConfig::sa_cooling)},
      {"ts_neighborhood", field(&SolverConfig::ts_neighborhood)},
      {"ts_tenure", field(&SolverConfig::ts_tenure)},
      {"pso_c1", field(&SolverConfig::pso_c1)},
      {"pso_c2", field(&SolverConfig::pso_c2)},
      {"pso_w_max", field(&SolverConfig::pso_w_max)},
      {"pso_w_min", field(&SolverConfig::pso_w_min)},
      {"pso_v_max", field(&SolverConfig::pso_v_max)},
      {"aco_q", field(&SolverConfig::aco_q)},
      {"aco_rho", field(&SolverConfig::aco_rho)},
      {"aco_alpha", field(&SolverConfig::aco_alpha)},
      {"aco_beta", field(&SolverConfig::aco_beta)},
      {"aco_tau0", field(&SolverConfig::aco_tau0)},
  };
  return s;
}

}  // namespace

std::string to_string(SolverKind kind) {
  for (const auto& [k, n] : names()) {
    if (k == kind) return n;
  }
  throw std::logic_error("unhandled solver kind");
}

SolverKind solver_from_string(const std::string& name) {
  for (const auto& [k, n] : names()) {
    if (n == name) return k;
  }
  throw std::invalid_argument("unknown solver '" + name +
                              "' (expected greedy, ga, sa, ts, pso, aco, gr-sa or gr-ts)");
}

const std::vector<SolverKind>& all_solvers() {
  static const std::vector<SolverKind> all = [] {
    std::vector<SolverKind> v;
    for (const auto& [k, _] : names()) v.push_back(k);
    return v;
  }();
  return all;
}

bool is_stochastic(SolverKind kind) { return kind != SolverKind::kGreedy; }

void SolverConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(pop_size > 0, "pop_size must be > 0");
  require(max_iter >= 0, "max_iter must be >= 0");
  require(stall_limit >= 0, "stall_limit must be >= 0");
  require(ga_elite >= 0 && ga_crossover >= 0 && ga_crossover % 2 == 0,
          "ga_elite must be >= 0 and ga_crossover even and >= 0");
  require(ga_elite + ga_crossover <= pop_size, "ga_elite + ga_crossover must not exceed pop_size");
  require(ga_mutation_rate >= 0.0 && ga_mutation_rate <= 1.0, "ga_mutation_rate must be in [0, 1]");
  require(sa_t0 > 0.0 && sa_t0_seeded > 0.0 && sa_t_min > 0.0, "SA temperatures must be > 0");
  require(sa_cooling > 0.0 && sa_cooling < 1.0, "sa_cooling must be in (0, 1)");
  require(ts_neighborhood > 0, "ts_neighborhood must be > 0");
  require(ts_tenure >= 1, "ts_tenure must be >= 1");
  require(pso_v_max > 0.0, "pso_v_max must be > 0");
  require(pso_c1 >= 0.0 && pso_c2 >= 0.0, "PSO acceleration coefficients must be >= 0");
  require(aco_rho >= 0.0 && aco_rho <= 1.0, "aco_rho must be in [0, 1]");
  require(aco_q > 0.0 && aco_tau0 > 0.0, "aco_q and aco_tau0 must be > 0");
}

void apply_override(SolverConfig& cfg, const std::string& key, const std::string& value) {
  auto it = setters().find(key);
  if (it == setters().end()) throw std::invalid_argument("unknown solver setting '" + key + "'");
  it->second(cfg, key, value);
}

std::vector<std::string> override_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

nlohmann::json to_json(const SolverConfig& c) {
  return {{"pop_size", c.pop_size},
          {"max_iter", c.max_iter},
          {"fev_cap", c.fev_cap},
          {"seed", c.seed},
          {"stall_limit", c.stall_limit},
          {"ga_elite", c.ga_elite},
          {"ga_crossover", c.ga_crossover},
          {"ga_mutation_rate", c.ga_mutation_rate},
          {"sa_t0", c.sa_t0},
          {"sa_t0_seeded", c.sa_t0_seeded},
          {"sa_t_min", c.sa_t_min},
          {"sa_cooling", c.sa_cooling},
          {"ts_neighborhood", c.ts_neighborhood},
          {"ts_tenure", c.ts_tenure},
          {"pso_c1", c.pso_c1},
          {"pso_c2", c.pso_c2},
          {"pso_w_max", c.pso_w_max},
          {"pso_w_min", c.pso_w_min},
          {"pso_v_max", c.pso_v_max},
          {"aco_q", c.aco_q},
          {"aco_rho", c.aco_rho},
          {"aco_alpha", c.aco_alpha},
          {"aco_beta", c.aco_beta},
          {"aco_tau0", c.aco_tau0}};
}

int sa_max_cooling_steps(double t0, double t_min, double cooling) {
  if (t0 <= t_min) return 0;
  return static_cast<int>(std::ceil(std::log(t_min / t0) / std::log(cooling)));
}

double pso_inertia(double w_max, double w_min, int k, int k_max) {
  if (k_max <= 0) return w_max;
  return w_max - (w_max - w_min) * static_cast<double>(k) / static_cast<double>(k_max);
}

}  // namespace tndp::solvers
