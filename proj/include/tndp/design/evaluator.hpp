#pragma once

#include <cstddef>
#include <functional>
#include <future>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "tndp/design/problem.hpp"

namespace tndp::design {

class EvalBudgetExhausted : public std::runtime_error {
 public:
  explicit EvalBudgetExhausted(std::size_t cap);
};

struct TracePoint {
  std::size_t evals = 0;
  double best = 0.0;
};

// Called on every evaluate() request before feasibility is enforced.
using EvalObserver = std::function<void(const DesignVector& y, bool feasible)>;

// Counted, memoised objective evaluation for one solver run.
//
// Every distinct design costs one evaluation; repeats are served from the
// cache for free. Once `fev_cap` evaluations are spent further cache misses
// throw EvalBudgetExhausted. Safe to share between threads; the count is the
// exact number of distinct designs evaluated. Copies snapshot the state.
class Evaluator {
 public:
  Evaluator(const DesignProblem& problem, std::size_t fev_cap, EvalObserver observer = {});
  Evaluator(const Evaluator& other);
  Evaluator& operator=(const Evaluator&) = delete;

  const DesignProblem& problem() const { return *problem_; }
  std::size_t fev_cap() const { return fev_cap_; }

  std::shared_ptr<const ObjectiveValue> evaluate(const DesignVector& y);
  double objective(const DesignVector& y) { return evaluate(y)->total; }

  bool is_cached(const DesignVector& y) const;
  std::size_t evals_used() const;
  std::size_t remaining() const;

  // Best design over all evaluations so far (first found wins ties).
  bool has_best() const;
  DesignVector best_design() const;
  std::shared_ptr<const ObjectiveValue> best_objective() const;

  // (evaluation count, best-so-far) after each new evaluation.
  std::vector<TracePoint> trace() const;

  void set_observer(EvalObserver observer);

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<int>& k) const noexcept;
  };
  using Entry = std::shared_future<std::shared_ptr<const ObjectiveValue>>;

  const DesignProblem* problem_;
  std::size_t fev_cap_;
  EvalObserver observer_;

  mutable std::mutex mu_;
  std::unordered_map<std::vector<int>, Entry, KeyHash> cache_;
  std::size_t used_ = 0;
  DesignVector best_design_;
  std::shared_ptr<const ObjectiveValue> best_;
  std::vector<TracePoint> trace_;
};

}  // namespace tndp::design
