#include <algorithm>

#include "tndp/solvers/solver.hpp"

namespace tndp::solvers {

SearchStats pso_search(design::Evaluator& ev, const SolverConfig& cfg, Rng& rng) {
  const design::DesignProblem& p = ev.problem();
  const std::size_t n = p.candidates().size();
  const auto swarm_n = static_cast<std::size_t>(cfg.pop_size);
  SearchStats st;
  try {
    std::vector<std::vector<char>> x(swarm_n);
    std::vector<std::vector<double>> v(swarm_n, std::vector<double>(n));
    std::vector<std::vector<char>> pbest(swarm_n);
    std::vector<double> pbest_f(swarm_n);
    std::vector<char> gbest;
    double gbest_f = 0.0;
    std::uniform_real_distribution<double> init_v(-cfg.pso_v_max, cfg.pso_v_max);
    for (std::size_t j = 0; j < swarm_n; ++j) {
      x[j] = random_feasible(p, rng).bits(n);
      for (double& vi : v[j]) vi = init_v(rng);
      pbest[j] = x[j];
      pbest_f[j] = ev.objective(from_bits(p, x[j]));
      if (j == 0 || pbest_f[j] < gbest_f) {
        gbest = x[j];
        gbest_f = pbest_f[j];
      }
    }

    int stall = 0;
    for (;;) {
      if (st.iterations >= cfg.max_iter) {
        st.stop_reason = kStopMaxIter;
        break;
      }
      const double w = pso_inertia(cfg.pso_w_max, cfg.pso_w_min, st.iterations, cfg.max_iter);
      bool improved = false;
      for (std::size_t j = 0; j < swarm_n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
          const double r1 = uniform01(rng);
          const double r2 = uniform01(rng);
          const double xi = x[j][i];
          const double vi = pso_velocity(w, v[j][i], cfg.pso_c1, r1, pbest[j][i] - xi, cfg.pso_c2,
                                         r2, gbest[i] - xi, cfg.pso_v_max);
          v[j][i] = vi;
          x[j][i] = sigmoid(vi) > uniform01(rng) ? 1 : 0;
        }
        // Repaired bits are written back into the particle.
        repair(p, x[j]);
        const double f = ev.objective(from_bits(p, x[j]));
        if (f < pbest_f[j]) {
          pbest_f[j] = f;
          pbest[j] = x[j];
        }
        if (f < gbest_f) {
          gbest_f = f;
          gbest = x[j];
          improved = true;
        }
      }
      ++st.iterations;
      stall = improved ? 0 : stall + 1;
      if (cfg.stall_limit > 0 && stall >= cfg.stall_limit) {
        st.stop_reason = kStopStall;
        break;
      }
    }
  } catch (const design::EvalBudgetExhausted&) {
    st.stop_reason = kStopFevCap;
  }
  return st;
}

}  // namespace tndp::solvers
