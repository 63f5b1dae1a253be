#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <vector>

#include "tndp/design/problem.hpp"

namespace tndp::solvers {

using Rng = std::mt19937_64;

double uniform01(Rng& rng);
// Uniform integer in [0, n).
std::size_t uniform_index(Rng& rng, std::size_t n);

// Unselected candidates whose length fits into `residual_km`.
std::vector<int> affordable(const design::DesignProblem& problem, const std::vector<char>& selected,
                            double residual_km);

enum class MoveKind { kAdd, kRemove, kSwap };

struct Move {
  MoveKind kind = MoveKind::kAdd;
  int added = -1;
  int removed = -1;
  design::DesignVector result;
};

// Random feasible neighbour: add an affordable edge, remove an edge, or swap
// one selected edge for an affordable unselected one, each kind equally
// likely among those available. Empty when no move exists.
std::optional<Move> random_move(const design::DesignProblem& problem,
                                const design::DesignVector& current, Rng& rng);

// Recently moved edge indices, one entry per accepted move, holding at most
// `tenure` entries.
class TabuList {
 public:
  explicit TabuList(int tenure) : tenure_(tenure) {}
  void push(const Move& m);
  // True if the move touches an edge in any entry.
  bool forbids(const Move& m) const;
  std::size_t size() const { return entries_.size(); }

 private:
  int tenure_;
  std::deque<std::vector<int>> entries_;
};

// Drops selected edges longest first until the budget holds.
void repair(const design::DesignProblem& problem, std::vector<char>& bits);

design::DesignVector from_bits(const design::DesignProblem& problem, const std::vector<char>& bits);

// Visits candidates in random order, keeping each one that still fits.
design::DesignVector random_feasible(const design::DesignProblem& problem, Rng& rng);

// Rank scaling: the i-th best of n gets weight 1/sqrt(i), normalised to sum
// to `total`. Ties keep input order.
std::vector<double> rank_scaled(const std::vector<double>& objective, double total);

// Stochastic uniform sampling: `count` evenly spaced pointers with one random
// offset over the cumulative weights. Returns chosen indices in pointer order.
std::vector<std::size_t> stochastic_uniform(const std::vector<double>& weights, std::size_t count,
                                            Rng& rng);

// One-point crossover at `point`: children take a[0, point) + b[point, n)
// and b[0, point) + a[point, n).
std::pair<std::vector<char>, std::vector<char>> one_point_crossover(const std::vector<char>& a,
                                                                    const std::vector<char>& b,
                                                                    std::size_t point);

double sigmoid(double v);

// Metropolis rule: 1 for an improvement, else exp(-delta / temp); 0 at temp 0.
double sa_acceptance(double delta, double temp);

// Binary PSO velocity update, clamped to [-v_max, v_max]. `to_pbest` and
// `to_gbest` are the bit differences pbest - x and gbest - x.
double pso_velocity(double w, double v, double c1, double r1, double to_pbest, double c2,
                    double r2, double to_gbest, double v_max);

// Tabu search admissibility: a tabu move only passes by aspiration, when it
// beats the best objective found so far.
inline bool ts_admissible(bool tabu, double f, double best_f) { return !tabu || f < best_f; }

// Index drawn with probability proportional to `weights`; uniform when the
// weights sum to zero or overflow.
std::size_t roulette(const std::vector<double>& weights, Rng& rng);

// Evaporates every trail by `rho`, then each tour deposits q / f on its edges.
void pheromone_update(std::vector<double>& tau, const std::vector<std::vector<int>>& tours,
                      const std::vector<double>& tour_objective, double rho, double q);

}  // namespace tndp::solvers
