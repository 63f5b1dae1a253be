#include <limits>

#include "tndp/solvers/solver.hpp"

namespace tndp::solvers {

using design::DesignVector;

SearchStats greedy_search(design::Evaluator& ev, const SolverConfig& /*cfg*/) {
  const design::DesignProblem& p = ev.problem();
  SearchStats st;
  DesignVector current;
  try {
    double f_cur = ev.objective(current);
    for (;;) {
      const std::vector<int> options =
          affordable(p, current.bits(p.candidates().size()), p.budget_km() - current.cost_km());
      double best_f = std::numeric_limits<double>::infinity();
      DesignVector best_y;
      for (int e : options) {
        std::vector<int> idx = current.indices();
        idx.push_back(e);
        DesignVector y(p, std::move(idx));
        if (!design::budget_check(p, y).feasible) continue;
        const double f = ev.objective(y);
        if (f < best_f) {
          best_f = f;
          best_y = std::move(y);
        }
      }
      if (best_y.empty()) {
        st.stop_reason = kStopNoMove;
        break;
      }
      if (!(best_f < f_cur)) {
        st.stop_reason = kStopNoImprovement;
        break;
      }
      current = std::move(best_y);
      f_cur = best_f;
      ++st.iterations;
    }
  } catch (const design::EvalBudgetExhausted&) {
    st.stop_reason = kStopFevCap;
  }
  return st;
}

}  // namespace tndp::solvers
