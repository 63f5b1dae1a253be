#include <limits>
#include <set>

#include "tndp/solvers/solver.hpp"

namespace tndp::solvers {

SearchStats ts_search(design::Evaluator& ev, const SolverConfig& cfg, Rng& rng,
                      const design::DesignVector& start) {
  const design::DesignProblem& p = ev.problem();
  SearchStats st;
  try {
    design::DesignVector current = start;
    double best_f = ev.objective(current);
    TabuList tabu(cfg.ts_tenure);
    int stall = 0;
    for (;;) {
      if (st.iterations >= cfg.max_iter) {
        st.stop_reason = kStopMaxIter;
        break;
      }
      std::vector<Move> hood;
      std::set<std::vector<int>> seen;
      for (int j = 0; j < cfg.ts_neighborhood; ++j) {
        std::optional<Move> mv = random_move(p, current, rng);
        if (!mv) break;
        if (seen.insert(mv->result.indices()).second) hood.push_back(std::move(*mv));
      }
      if (hood.empty()) {
        st.stop_reason = kStopNoMove;
        break;
      }

      // Best admissible neighbour, even when it is worse than the current
      // design; a tabu move is admissible if it beats the best so far.
      const Move* pick = nullptr;
      double pick_f = std::numeric_limits<double>::infinity();
      for (const Move& m : hood) {
        const double f = ev.objective(m.result);
        if (!ts_admissible(tabu.forbids(m), f, best_f)) continue;
        if (f < pick_f) {
          pick_f = f;
          pick = &m;
        }
      }
      ++st.iterations;
      bool improved = false;
      if (pick != nullptr) {
        current = pick->result;
        tabu.push(*pick);
        if (pick_f < best_f) {
          best_f = pick_f;
          improved = true;
        }
      }
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
