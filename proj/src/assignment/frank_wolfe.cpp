#include "tndp/assignment/frank_wolfe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

namespace tndp::assignment {

std::string to_string(Direction d) {
  switch (d) {
    case Direction::kConjugate:
      return "conjugate";
    case Direction::kBiconjugate:
      return "biconjugate";
    case Direction::kFrankWolfe:
      break;
  }
  return "frank-wolfe";
}

Direction direction_from_string(const std::string& s) {
  if (s == "conjugate") return Direction::kConjugate;
  if (s == "biconjugate") return Direction::kBiconjugate;
  if (s == "frank-wolfe") return Direction::kFrankWolfe;
  throw std::invalid_argument("unknown assignment direction '" + s + "'");
}

void AssignmentConfig::validate() const {
  if (!(alpha >= 0.0)) throw std::invalid_argument("assignment alpha must be >= 0");
  if (!(fw_tolerance > 0.0)) throw std::invalid_argument("fw_tolerance must be > 0");
  if (!(line_search_tol > 0.0)) throw std::invalid_argument("line_search_tol must be > 0");
  if (fw_max_iters < 0) throw std::invalid_argument("fw_max_iters must be >= 0");
}

DisconnectedDemand::DisconnectedDemand(int origin, int dest)
    : std::runtime_error("no path carries demand from node " + std::to_string(origin) +
                         " to node " + std::to_string(dest)),
      origin_(origin),
      dest_(dest) {}

ArcNetwork ArcNetwork::from_road(const netcore::RoadNetwork& net) {
  ArcNetwork out;
  out.node_count = net.node_count();
  out.link_length.reserve(net.edge_count());
  out.arcs.reserve(2 * net.edge_count());
  for (std::size_t i = 0; i < net.edge_count(); ++i) {
    const netcore::Edge& e = net.edges()[i];
    out.link_length.push_back(e.length_km);
    const int link = static_cast<int>(i);
    out.arcs.push_back({e.u - 1, e.v - 1, link});
    out.arcs.push_back({e.v - 1, e.u - 1, link});
  }
  out.finalize();
  return out;
}

void ArcNetwork::finalize() {
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return std::tie(a.tail, a.head, a.link) < std::tie(b.tail, b.head, b.link);
  });
  out_begin.assign(node_count + 1, 0);
  for (const Arc& a : arcs) ++out_begin[static_cast<std::size_t>(a.tail) + 1];
  for (std::size_t v = 0; v < node_count; ++v) out_begin[v + 1] += out_begin[v];
}

double beckmann(const ArcNetwork& net, const std::vector<double>& link_flows, double alpha) {
  double f = 0.0;
  for (std::size_t l = 0; l < net.link_length.size(); ++l) {
    f += bpr_integral(net.link_length[l], link_flows[l], alpha);
  }
  return f;
}

bool ShortestPathTree::reachable(std::size_t node) const {
  return cost[node] < std::numeric_limits<double>::infinity();
}

ShortestPathTree shortest_path_costs(const ArcNetwork& net, const std::vector<double>& link_times,
                                     std::size_t origin) {
  const std::size_t n = net.node_count;
  ShortestPathTree tree;
  tree.cost.assign(n, std::numeric_limits<double>::infinity());
  tree.pred_arc.assign(n, -1);
  std::vector<char> done(n, 0);
  tree.cost[origin] = 0.0;

  using Item = std::pair<double, std::size_t>;
  std::vector<Item> storage;
  storage.reserve(net.arcs.size() + 1);
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap(std::greater<>{},
                                                                    std::move(storage));
  heap.push({0.0, origin});
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (std::size_t a = net.out_begin[u]; a < net.out_begin[u + 1]; ++a) {
      const Arc& arc = net.arcs[a];
      const auto v = static_cast<std::size_t>(arc.head);
      if (done[v]) continue;
      const double nd = du + link_times[static_cast<std::size_t>(arc.link)];
      if (nd < tree.cost[v]) {
        tree.cost[v] = nd;
        tree.pred_arc[v] = static_cast<int>(a);
        heap.push({nd, v});
      } else if (nd == tree.cost[v] && static_cast<int>(a) < tree.pred_arc[v]) {
        // Equal cost: lowest arc index wins.
        tree.pred_arc[v] = static_cast<int>(a);
      }
    }
  }
  return tree;
}

std::vector<double> all_or_nothing(const ArcNetwork& net, const netcore::ODMatrix& od,
                                   const std::vector<double>& link_times,
                                   std::vector<double>* origin_arc_flows) {
  const std::size_t n = net.node_count;
  std::vector<double> flows(net.link_length.size(), 0.0);
  if (origin_arc_flows != nullptr) origin_arc_flows->assign(n * net.arcs.size(), 0.0);

  for (std::size_t r = 0; r < n; ++r) {
    bool has_demand = false;
    for (std::size_t s = 0; s < n && !has_demand; ++s) has_demand = od(r, s) > 0.0;
    if (!has_demand) continue;

    const ShortestPathTree tree = shortest_path_costs(net, link_times, r);
    for (std::size_t s = 0; s < n; ++s) {
      const double d = od(r, s);
      if (!(d > 0.0)) continue;
      if (!tree.reachable(s)) {
        throw DisconnectedDemand(static_cast<int>(r) + 1, static_cast<int>(s) + 1);
      }
      for (std::size_t v = s; v != r;) {
        const auto a = static_cast<std::size_t>(tree.pred_arc[v]);
        const Arc& arc = net.arcs[a];
        flows[static_cast<std::size_t>(arc.link)] += d;
        if (origin_arc_flows != nullptr) (*origin_arc_flows)[r * net.arcs.size() + a] += d;
        v = static_cast<std::size_t>(arc.tail);
      }
    }
  }
  return flows;
}

namespace {

void compute_times(const ArcNetwork& net, const std::vector<double>& flows, double alpha,
                   std::vector<double>& times) {
  times.resize(flows.size());
  for (std::size_t l = 0; l < flows.size(); ++l) {
    times[l] = bpr_time(net.link_length[l], flows[l], alpha);
  }
}

// Minimises the Beckmann restriction along x + s*d over s in [0, 1] by
// bisection on its derivative, which is monotone. Returns the left bracket
// so the objective never increases.
double line_search(const ArcNetwork& net, const std::vector<double>& x,
                   const std::vector<double>& d, double alpha, double tol) {
  auto slope = [&](double s) {
    double g = 0.0;
    for (std::size_t l = 0; l < x.size(); ++l) {
      if (d[l] == 0.0) continue;
      g += d[l] * bpr_time(net.link_length[l], std::max(0.0, x[l] + s * d[l]), alpha);
    }
    return g;
  };
  if (slope(1.0) <= 0.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (slope(mid) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

AssignmentResult frank_wolfe(const ArcNetwork& net, const netcore::ODMatrix& od,
                             const AssignmentConfig& cfg) {
  cfg.validate();
  if (od.size() != net.node_count) {
    throw std::invalid_argument("OD matrix size does not match the network");
  }
  const std::size_t links = net.link_length.size();
  std::vector<double>* keep = nullptr;

  AssignmentResult res;
  std::vector<double> origin_y;
  if (cfg.keep_origin_flows) keep = &res.origin_arc_flows;

  std::vector<double> times(net.link_length);
  std::vector<double> x = all_or_nothing(net, od, times, keep);
  double f = beckmann(net, x, cfg.alpha);
  res.beckmann_history.push_back(f);

  // Targets are convex combinations of all-or-nothing solutions: s1 is the
  // previous target, s2 the one before. Plain Frank-Wolfe uses y directly.
  std::vector<double> s1(links), s2(links), target(links), dir(links), hess(links);
  std::vector<double> o1, o2, origin_target;
  int history = 0;
  double prev_step = 0.0;
  constexpr double kMaxWeight = 0.99;

  for (;;) {
    compute_times(net, x, cfg.alpha, times);
    const std::vector<double> y = all_or_nothing(net, od, times, keep != nullptr ? &origin_y : nullptr);
    double gap = 0.0;
    for (std::size_t l = 0; l < links; ++l) gap += times[l] * (x[l] - y[l]);
    gap = std::max(gap, 0.0);
    res.relative_gap = f > 0.0 ? gap / std::abs(f) : 0.0;
    if (res.relative_gap <= cfg.fw_tolerance) {
      res.converged = true;
      break;
    }
    if (res.iterations >= cfg.fw_max_iters) break;

    // Weights on y, s1 and s2.
    double b0 = 1.0, b1 = 0.0, b2 = 0.0;
    if (cfg.direction != Direction::kFrankWolfe && history >= 1) {
      for (std::size_t l = 0; l < links; ++l) {
        hess[l] = 4.0 * cfg.alpha * net.link_length[l] * x[l] * x[l] * x[l];
      }
      const bool bi = cfg.direction == Direction::kBiconjugate && history >= 2 && prev_step < 1.0;
      if (bi) {
        // Conjugate to both previous directions under the diagonal Hessian.
        double mu_n = 0.0, mu_d = 0.0, nu_n = 0.0, nu_d = 0.0;
        for (std::size_t l = 0; l < links; ++l) {
          const double d1 = s1[l] - x[l];
          const double d2 = prev_step * s1[l] - x[l] + (1.0 - prev_step) * s2[l];
          const double dfw = y[l] - x[l];
          mu_n += d2 * hess[l] * dfw;
          mu_d += d2 * hess[l] * (s2[l] - s1[l]);
          nu_n += d1 * hess[l] * dfw;
          nu_d += d1 * hess[l] * d1;
        }
        const double mu = mu_d != 0.0 ? std::max(0.0, -mu_n / mu_d) : 0.0;
        const double nu =
            nu_d != 0.0 ? std::max(0.0, -nu_n / nu_d + mu * prev_step / (1.0 - prev_step)) : 0.0;
        b0 = 1.0 / (1.0 + mu + nu);
        b1 = nu * b0;
        b2 = mu * b0;
      } else {
        double num = 0.0, den = 0.0;
        for (std::size_t l = 0; l < links; ++l) {
          num += hess[l] * (s1[l] - x[l]) * (y[l] - x[l]);
          den += hess[l] * (s1[l] - x[l]) * (y[l] - s1[l]);
        }
        const double w = den != 0.0 ? std::clamp(num / den, 0.0, kMaxWeight) : 0.0;
        b0 = 1.0 - w;
        b1 = w;
      }
    }
    for (std::size_t l = 0; l < links; ++l) {
      target[l] = b0 * y[l] + b1 * s1[l] + b2 * s2[l];
      dir[l] = target[l] - x[l];
    }
    double slope = 0.0;
    for (std::size_t l = 0; l < links; ++l) slope += times[l] * dir[l];
    if (b0 < 1.0 && slope >= 0.0) {
      // Not a descent direction: fall back to the plain Frank-Wolfe target.
      b0 = 1.0;
      b1 = b2 = 0.0;
      target = y;
      for (std::size_t l = 0; l < links; ++l) dir[l] = y[l] - x[l];
    }
    if (keep != nullptr) {
      origin_target.resize(origin_y.size());
      for (std::size_t i = 0; i < origin_y.size(); ++i) {
        origin_target[i] = b0 * origin_y[i];
        if (b1 != 0.0) origin_target[i] += b1 * o1[i];
        if (b2 != 0.0) origin_target[i] += b2 * o2[i];
      }
    }

    const double step = line_search(net, x, dir, cfg.alpha, cfg.line_search_tol);
    for (std::size_t l = 0; l < links; ++l) x[l] = std::max(0.0, x[l] + step * dir[l]);
    if (keep != nullptr) {
      for (std::size_t i = 0; i < keep->size(); ++i) {
        (*keep)[i] = std::max(0.0, (*keep)[i] + step * (origin_target[i] - (*keep)[i]));
      }
      o2.swap(o1);
      o1 = origin_target;
    }
    s2.swap(s1);
    s1 = target;
    history = b0 == 1.0 ? 1 : history + 1;
    prev_step = step;
    f = beckmann(net, x, cfg.alpha);
    res.beckmann_history.push_back(f);
    ++res.iterations;
  }

  res.link_flows = std::move(x);
  res.link_times = std::move(times);
  res.beckmann_value = f;
  res.total_travel_time = total_travel_time(res);
  return res;
}

AssignmentResult frank_wolfe(const netcore::RoadNetwork& net, const netcore::ODMatrix& od,
                             const AssignmentConfig& cfg) {
  return frank_wolfe(ArcNetwork::from_road(net), od, cfg);
}

double total_travel_time(const AssignmentResult& result) {
  double t = 0.0;
  for (std::size_t l = 0; l < result.link_flows.size(); ++l) {
    t += result.link_flows[l] * result.link_times[l];
  }
  return t;
}

double total_travel_time(const std::vector<double>& link_lengths,
                         const std::vector<double>& link_flows, double alpha) {
  double t = 0.0;
  for (std::size_t l = 0; l < link_flows.size(); ++l) {
    t += link_flows[l] * bpr_time(link_lengths[l], link_flows[l], alpha);
  }
  return t;
}

}  // namespace tndp::assignment
