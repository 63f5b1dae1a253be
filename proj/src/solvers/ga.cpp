#include <algorithm>
#include <limits>

#include "tndp/solvers/solver.hpp"

namespace tndp::solvers {

SearchStats ga_search(design::Evaluator& ev, const SolverConfig& cfg, Rng& rng) {
  const design::DesignProblem& p = ev.problem();
  const std::size_t n = p.candidates().size();
  const auto pop_n = static_cast<std::size_t>(cfg.pop_size);
  const auto elite_n = static_cast<std::size_t>(cfg.ga_elite);
  const auto cross_n = static_cast<std::size_t>(cfg.ga_crossover);
  const std::size_t mut_n = pop_n - elite_n - cross_n;
  const double rate = cfg.ga_mutation_rate > 0.0 ? cfg.ga_mutation_rate
                                                 : (n > 0 ? 1.0 / static_cast<double>(n) : 0.0);
  SearchStats st;
  try {
    std::vector<std::vector<char>> pop;
    std::vector<double> fit;
    for (std::size_t j = 0; j < pop_n; ++j) {
      pop.push_back(random_feasible(p, rng).bits(n));
      fit.push_back(ev.objective(from_bits(p, pop.back())));
    }
    double best_f = *std::min_element(fit.begin(), fit.end());
    int stall = 0;

    for (;;) {
      if (st.iterations >= cfg.max_iter) {
        st.stop_reason = kStopMaxIter;
        break;
      }
      std::vector<std::size_t> order(pop_n);
      for (std::size_t j = 0; j < pop_n; ++j) order[j] = j;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return fit[a] < fit[b]; });

      std::vector<std::vector<char>> next;
      for (std::size_t j = 0; j < elite_n; ++j) next.push_back(pop[order[j]]);

      const std::size_t n_parents = cross_n + mut_n;
      std::vector<std::size_t> parents =
          stochastic_uniform(rank_scaled(fit, static_cast<double>(n_parents)), n_parents, rng);
      std::shuffle(parents.begin(), parents.end(), rng);

      for (std::size_t j = 0; j + 1 < cross_n; j += 2) {
        const std::size_t point = n > 1 ? 1 + uniform_index(rng, n - 1) : 0;
        auto [c1, c2] = one_point_crossover(pop[parents[j]], pop[parents[j + 1]], point);
        repair(p, c1);
        repair(p, c2);
        next.push_back(std::move(c1));
        next.push_back(std::move(c2));
      }
      for (std::size_t l = 0; l < mut_n; ++l) {
        std::vector<char> child = pop[parents[cross_n + l]];
        for (char& bit : child) {
          if (uniform01(rng) < rate) bit = static_cast<char>(!bit);
        }
        repair(p, child);
        next.push_back(std::move(child));
      }

      pop = std::move(next);
      for (std::size_t j = 0; j < pop_n; ++j) fit[j] = ev.objective(from_bits(p, pop[j]));
      ++st.iterations;
      const double gen_best = *std::min_element(fit.begin(), fit.end());
      const bool improved = gen_best < best_f;
      if (improved) best_f = gen_best;
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
