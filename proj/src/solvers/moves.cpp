#include "tndp/solvers/moves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tndp::solvers {

using design::DesignProblem;
using design::DesignVector;

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

std::vector<int> affordable(const DesignProblem& problem, const std::vector<char>& selected,
                            double residual_km) {
  std::vector<int> out;
  const auto& cands = problem.candidates();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (!selected[i] && cands.cost_km(i) <= residual_km) out.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

std::optional<Move> propose(const DesignProblem& problem, const DesignVector& current, Rng& rng) {
  const auto& cands = problem.candidates();
  const std::vector<char> bits = current.bits(cands.size());
  const double residual = problem.budget_km() - current.cost_km();

  const std::vector<int> adds = affordable(problem, bits, residual);
  // Selected edges that have at least one affordable replacement.
  std::vector<int> swappable;
  for (int e : current.indices()) {
    const double room = residual + cands.cost_km(static_cast<std::size_t>(e));
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (!bits[i] && cands.cost_km(i) <= room) {
        swappable.push_back(e);
        break;
      }
    }
  }

  std::vector<MoveKind> kinds;
  if (!adds.empty()) kinds.push_back(MoveKind::kAdd);
  if (!current.empty()) kinds.push_back(MoveKind::kRemove);
  if (!swappable.empty()) kinds.push_back(MoveKind::kSwap);
  if (kinds.empty()) return std::nullopt;

  Move m;
  m.kind = kinds[uniform_index(rng, kinds.size())];
  std::vector<int> next = current.indices();
  switch (m.kind) {
    case MoveKind::kAdd:
      m.added = adds[uniform_index(rng, adds.size())];
      next.push_back(m.added);
      break;
    case MoveKind::kRemove:
      m.removed = next[uniform_index(rng, next.size())];
      std::erase(next, m.removed);
      break;
    case MoveKind::kSwap: {
      m.removed = swappable[uniform_index(rng, swappable.size())];
      const std::vector<int> options = affordable(
          problem, bits, residual + cands.cost_km(static_cast<std::size_t>(m.removed)));
      m.added = options[uniform_index(rng, options.size())];
      std::erase(next, m.removed);
      next.push_back(m.added);
      break;
    }
  }
  m.result = DesignVector(problem, std::move(next));
  return m;
}

}  // namespace

std::optional<Move> random_move(const DesignProblem& problem, const DesignVector& current,
                                Rng& rng) {
  // A sum that lands exactly on the budget can round either way; redraw.
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::optional<Move> m = propose(problem, current, rng);
    if (!m || design::budget_check(problem, m->result).feasible) return m;
  }
  return std::nullopt;
}

namespace {

std::vector<int> move_edges(const Move& m) {
  std::vector<int> e;
  if (m.added >= 0) e.push_back(m.added);
  if (m.removed >= 0) e.push_back(m.removed);
  return e;
}

}  // namespace

void TabuList::push(const Move& m) {
  entries_.push_back(move_edges(m));
  while (entries_.size() > static_cast<std::size_t>(tenure_)) entries_.pop_front();
}

bool TabuList::forbids(const Move& m) const {
  for (int e : move_edges(m)) {
    for (const auto& entry : entries_) {
      if (std::find(entry.begin(), entry.end(), e) != entry.end()) return true;
    }
  }
  return false;
}

void repair(const DesignProblem& problem, std::vector<char>& bits) {
  const auto& cands = problem.candidates();
  std::vector<int> on;
  double cost = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      on.push_back(static_cast<int>(i));
      cost += cands.cost_km(i);
    }
  }
  if (cost <= problem.budget_km()) return;
  // Longest first; lower index first among equal lengths.
  std::stable_sort(on.begin(), on.end(), [&](int a, int b) {
    return cands.cost_km(static_cast<std::size_t>(a)) > cands.cost_km(static_cast<std::size_t>(b));
  });
  for (int i : on) {
    if (cost <= problem.budget_km()) break;
    bits[static_cast<std::size_t>(i)] = 0;
    cost -= cands.cost_km(static_cast<std::size_t>(i));
  }
  // The running sum can drift from the sorted-order sum the budget check uses.
  for (int i : on) {
    if (design::budget_check(problem, from_bits(problem, bits)).feasible) break;
    bits[static_cast<std::size_t>(i)] = 0;
  }
}

DesignVector from_bits(const DesignProblem& problem, const std::vector<char>& bits) {
  std::vector<int> idx;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) idx.push_back(static_cast<int>(i));
  }
  return DesignVector(problem, std::move(idx));
}

DesignVector random_feasible(const DesignProblem& problem, Rng& rng) {
  const auto& cands = problem.candidates();
  std::vector<int> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> chosen;
  double cost = 0.0;
  for (int i : order) {
    const double c = cands.cost_km(static_cast<std::size_t>(i));
    if (cost + c <= problem.budget_km()) {
      chosen.push_back(i);
      cost += c;
    }
  }
  DesignVector y(problem, chosen);
  while (!design::budget_check(problem, y).feasible) {
    chosen.pop_back();
    y = DesignVector(problem, chosen);
  }
  return y;
}

std::vector<double> rank_scaled(const std::vector<double>& objective, double total) {
  const std::size_t n = objective.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return objective[a] < objective[b]; });
  std::vector<double> w(n, 0.0);
  double sum = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    w[order[r]] = 1.0 / std::sqrt(static_cast<double>(r + 1));
    sum += w[order[r]];
  }
  for (double& x : w) x *= total / sum;
  return w;
}

std::vector<std::size_t> stochastic_uniform(const std::vector<double>& weights, std::size_t count,
                                            Rng& rng) {
  std::vector<std::size_t> out;
  if (count == 0 || weights.empty()) return out;
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double step = total / static_cast<double>(count);
  double pos = uniform01(rng) * step;
  double cum = weights[0];
  std::size_t i = 0;
  for (std::size_t k = 0; k < count; ++k) {
    while (cum < pos && i + 1 < weights.size()) cum += weights[++i];
    out.push_back(i);
    pos += step;
  }
  return out;
}

std::pair<std::vector<char>, std::vector<char>> one_point_crossover(const std::vector<char>& a,
                                                                    const std::vector<char>& b,
                                                                    std::size_t point) {
  std::vector<char> c1(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(point));
  c1.insert(c1.end(), b.begin() + static_cast<std::ptrdiff_t>(point), b.end());
  std::vector<char> c2(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(point));
  c2.insert(c2.end(), a.begin() + static_cast<std::ptrdiff_t>(point), a.end());
  return {std::move(c1), std::move(c2)};
}

double sa_acceptance(double delta, double temp) {
  if (delta < 0.0) return 1.0;
  if (temp <= 0.0) return 0.0;
  return std::exp(-delta / temp);
}

double pso_velocity(double w, double v, double c1, double r1, double to_pbest, double c2,
                    double r2, double to_gbest, double v_max) {
  return std::clamp(w * v + c1 * r1 * to_pbest + c2 * r2 * to_gbest, -v_max, v_max);
}

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

std::size_t roulette(const std::vector<double>& weights, Rng& rng) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total)) return uniform_index(rng, weights.size());
  double r = uniform01(rng) * total;
  std::size_t pick = 0;
  while (pick + 1 < weights.size() && r >= weights[pick]) r -= weights[pick++];
  return pick;
}

void pheromone_update(std::vector<double>& tau, const std::vector<std::vector<int>>& tours,
                      const std::vector<double>& tour_objective, double rho, double q) {
  for (double& t : tau) t *= 1.0 - rho;
  for (std::size_t a = 0; a < tours.size(); ++a) {
    const double deposit = tour_objective[a] > 0.0 ? q / tour_objective[a] : 0.0;
    for (int e : tours[a]) tau[static_cast<std::size_t>(e)] += deposit;
  }
}

}  // namespace tndp::solvers
