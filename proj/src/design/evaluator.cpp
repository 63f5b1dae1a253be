#include "tndp/design/evaluator.hpp"

#include <string>

namespace tndp::design {

EvalBudgetExhausted::EvalBudgetExhausted(std::size_t cap)
    : std::runtime_error("evaluation budget of " + std::to_string(cap) + " exhausted") {}

std::size_t Evaluator::KeyHash::operator()(const std::vector<int>& k) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (int v : k) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Evaluator::Evaluator(const DesignProblem& problem, std::size_t fev_cap, EvalObserver observer)
    : problem_(&problem), fev_cap_(fev_cap), observer_(std::move(observer)) {}

Evaluator::Evaluator(const Evaluator& other) : problem_(other.problem_), fev_cap_(other.fev_cap_) {
  std::lock_guard lock(other.mu_);
  observer_ = other.observer_;
  cache_ = other.cache_;
  used_ = other.used_;
  best_design_ = other.best_design_;
  best_ = other.best_;
  trace_ = other.trace_;
}

std::shared_ptr<const ObjectiveValue> Evaluator::evaluate(const DesignVector& y) {
  const BudgetCheck bc = budget_check(*problem_, y);
  EvalObserver observer;
  {
    std::lock_guard lock(mu_);
    observer = observer_;
  }
  if (observer) observer(y, bc.feasible);
  if (!bc.feasible) throw InfeasibleDesign(bc.cost_km, problem_->budget_km());

  std::promise<std::shared_ptr<const ObjectiveValue>> promise;
  {
    std::unique_lock lock(mu_);
    if (auto it = cache_.find(y.indices()); it != cache_.end()) {
      Entry entry = it->second;
      lock.unlock();
      return entry.get();
    }
    if (used_ >= fev_cap_) throw EvalBudgetExhausted(fev_cap_);
    ++used_;
    cache_.emplace(y.indices(), promise.get_future().share());
  }

  std::shared_ptr<const ObjectiveValue> value;
  try {
    value = std::make_shared<const ObjectiveValue>(evaluate_design(*problem_, y));
  } catch (...) {
    promise.set_exception(std::current_exception());
    throw;
  }
  promise.set_value(value);

  std::lock_guard lock(mu_);
  if (!best_ || value->total < best_->total) {
    best_ = value;
    best_design_ = y;
  }
  trace_.push_back({trace_.size() + 1, best_->total});
  return value;
}

bool Evaluator::is_cached(const DesignVector& y) const {
  std::lock_guard lock(mu_);
  return cache_.contains(y.indices());
}

std::size_t Evaluator::evals_used() const {
  std::lock_guard lock(mu_);
  return used_;
}

std::size_t Evaluator::remaining() const {
  std::lock_guard lock(mu_);
  return fev_cap_ - used_;
}

bool Evaluator::has_best() const {
  std::lock_guard lock(mu_);
  return best_ != nullptr;
}

DesignVector Evaluator::best_design() const {
  std::lock_guard lock(mu_);
  return best_design_;
}

std::shared_ptr<const ObjectiveValue> Evaluator::best_objective() const {
  std::lock_guard lock(mu_);
  return best_;
}

std::vector<TracePoint> Evaluator::trace() const {
  std::lock_guard lock(mu_);
  return trace_;
}

void Evaluator::set_observer(EvalObserver observer) {
  std::lock_guard lock(mu_);
  observer_ = std::move(observer);
}

}  // namespace tndp::design
