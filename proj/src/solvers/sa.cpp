#include <cmath>

#include "tndp/solvers/solver.hpp"

namespace tndp::solvers {

SearchStats sa_search(design::Evaluator& ev, const SolverConfig& cfg, Rng& rng,
                      const design::DesignVector& start, double t0) {
  const design::DesignProblem& p = ev.problem();
  SearchStats st;
  try {
    design::DesignVector current = start;
    double f_cur = ev.objective(current);
    double best_f = f_cur;
    double temp = t0;
    int stall = 0;
    for (;;) {
      if (st.iterations >= cfg.max_iter) {
        st.stop_reason = kStopMaxIter;
        break;
      }
      if (!(temp > cfg.sa_t_min)) {
        st.stop_reason = kStopTMin;
        break;
      }
      bool improved = false;
      // pop_size proposals per temperature level.
      for (int j = 0; j < cfg.pop_size; ++j) {
        std::optional<Move> mv = random_move(p, current, rng);
        if (!mv) {
          st.stop_reason = kStopNoMove;
          return st;
        }
        const double f = ev.objective(mv->result);
        const double delta = f - f_cur;
        if (delta < 0.0 || uniform01(rng) < sa_acceptance(delta, temp)) {
          current = std::move(mv->result);
          f_cur = f;
        }
        if (f_cur < best_f) {
          best_f = f_cur;
          improved = true;
        }
      }
      temp *= cfg.sa_cooling;
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
