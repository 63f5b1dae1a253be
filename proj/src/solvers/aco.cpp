#include <cmath>

#include "tndp/solvers/solver.hpp"

namespace tndp::solvers {

SearchStats aco_search(design::Evaluator& ev, const SolverConfig& cfg, Rng& rng) {
  const design::DesignProblem& p = ev.problem();
  const auto& cands = p.candidates();
  const std::size_t n = cands.size();
  std::vector<double> tau(n, cfg.aco_tau0);
  std::vector<double> eta(n);
  for (std::size_t i = 0; i < n; ++i) eta[i] = 1.0 / cands.cost_km(i);

  SearchStats st;
  try {
    for (;;) {
      if (st.iterations >= cfg.max_iter) {
        st.stop_reason = kStopMaxIter;
        break;
      }
      std::vector<std::vector<int>> tours;
      std::vector<double> tour_f;
      for (int a = 0; a < cfg.pop_size; ++a) {
        std::vector<char> bits(n, 0);
        std::vector<int> chosen;
        double residual = p.budget_km();
        for (;;) {
          const std::vector<int> options = affordable(p, bits, residual);
          if (options.empty()) break;
          std::vector<double> w(options.size());
          for (std::size_t k = 0; k < options.size(); ++k) {
            const auto e = static_cast<std::size_t>(options[k]);
            w[k] = std::pow(tau[e], cfg.aco_alpha) * std::pow(eta[e], cfg.aco_beta);
          }
          const int e = options[roulette(w, rng)];
          bits[static_cast<std::size_t>(e)] = 1;
          chosen.push_back(e);
          residual -= cands.cost_km(static_cast<std::size_t>(e));
        }
        design::DesignVector y(p, chosen);
        while (!design::budget_check(p, y).feasible) {
          chosen.pop_back();
          y = design::DesignVector(p, chosen);
        }
        tour_f.push_back(ev.objective(y));
        tours.push_back(y.indices());
      }

      pheromone_update(tau, tours, tour_f, cfg.aco_rho, cfg.aco_q);
      ++st.iterations;
    }
  } catch (const design::EvalBudgetExhausted&) {
    st.stop_reason = kStopFevCap;
  }
  return st;
}

}  // namespace tndp::solvers
