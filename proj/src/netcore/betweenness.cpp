#include "tndp/netcore/betweenness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>

namespace tndp::netcore {

std::string_view to_string(Weighting w) { return w == Weighting::kHops ? "hops" : "distance"; }

Weighting weighting_from_string(std::string_view s) {
  if (s == "hops") return Weighting::kHops;
  if (s == "distance") return Weighting::kDistance;
  throw std::invalid_argument("unknown betweenness weighting '" + std::string(s) + "'");
}

double BetweennessScores::mean() const {
  if (score.empty()) return 0.0;
  double s = 0.0;
  for (double v : score) s += v;
  return s / static_cast<double>(score.size());
}

namespace {

struct Incidence {
  int to;
  int edge;
  double weight;
};

// Brandes accumulation from a single source over an adjacency list.
void accumulate_from(int source, const std::vector<std::vector<Incidence>>& adj, bool weighted,
                     std::vector<double>& edge_score) {
  const std::size_t n = adj.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<double> sigma(n, 0.0);
  std::vector<std::vector<std::pair<int, int>>> preds(n);  // (node, edge)
  std::vector<int> order;
  order.reserve(n);

  dist[source] = 0.0;
  sigma[source] = 1.0;

  if (!weighted) {
    std::queue<int> q;
    q.push(source);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      order.push_back(v);
      for (const Incidence& inc : adj[v]) {
        if (dist[inc.to] == kInf) {
          dist[inc.to] = dist[v] + 1.0;
          q.push(inc.to);
        }
        if (dist[inc.to] == dist[v] + 1.0) {
          sigma[inc.to] += sigma[v];
          preds[inc.to].emplace_back(v, inc.edge);
        }
      }
    }
  } else {
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    std::vector<bool> done(n, false);
    pq.emplace(0.0, source);
    while (!pq.empty()) {
      const auto [d, v] = pq.top();
      pq.pop();
      if (done[v] || d > dist[v]) continue;
      done[v] = true;
      order.push_back(v);
      for (const Incidence& inc : adj[v]) {
        const double nd = dist[v] + inc.weight;
        const double tol = 1e-12 * std::max(1.0, nd);
        if (nd < dist[inc.to] - tol) {
          dist[inc.to] = nd;
          sigma[inc.to] = sigma[v];
          preds[inc.to].assign(1, {v, inc.edge});
          pq.emplace(nd, inc.to);
        } else if (std::abs(nd - dist[inc.to]) <= tol && !done[inc.to]) {
          sigma[inc.to] += sigma[v];
          preds[inc.to].emplace_back(v, inc.edge);
        }
      }
    }
  }

  std::vector<double> delta(n, 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int w = *it;
    for (const auto& [v, e] : preds[w]) {
      const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
      edge_score[e] += c;
      delta[v] += c;
    }
  }
}

}  // namespace

BetweennessScores edge_betweenness(const RoadNetwork& net, Weighting weighting) {
  const std::size_t n = net.node_count();
  std::vector<std::vector<Incidence>> adj(n);
  for (std::size_t i = 0; i < net.edge_count(); ++i) {
    const Edge& e = net.edges()[i];
    adj[e.u - 1].push_back({e.v - 1, static_cast<int>(i), e.length_km});
    adj[e.v - 1].push_back({e.u - 1, static_cast<int>(i), e.length_km});
  }

  BetweennessScores out;
  out.weighting = weighting;
  out.score.assign(net.edge_count(), 0.0);
  if (n < 2) return out;

  for (std::size_t s = 0; s < n; ++s) {
    accumulate_from(static_cast<int>(s), adj, weighting == Weighting::kDistance, out.score);
  }
  // Each unordered pair was visited from both ends.
  const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
  for (double& v : out.score) v *= scale;
  return out;
}

WeightingFit fit_against_reference(const RoadNetwork& net, const BetweennessScores& scores,
                                   const std::vector<EdgeReference>& reference,
                                   double match_tolerance) {
  WeightingFit fit;
  fit.weighting = scores.weighting;
  for (const EdgeReference& ref : reference) {
    const int idx = net.edge_index(ref.key.lo, ref.key.hi);
    if (idx < 0) continue;
    const double dev = std::abs(scores.score[static_cast<std::size_t>(idx)] - ref.betweenness);
    fit.max_abs_deviation = std::max(fit.max_abs_deviation, dev);
    if (dev <= match_tolerance) ++fit.matched;
    ++fit.compared;
  }
  return fit;
}

WeightingSelection select_weighting(const RoadNetwork& net,
                                    const std::vector<EdgeReference>& reference,
                                    double match_tolerance) {
  WeightingSelection sel;
  sel.hops = fit_against_reference(net, edge_betweenness(net, Weighting::kHops), reference,
                                   match_tolerance);
  sel.distance = fit_against_reference(net, edge_betweenness(net, Weighting::kDistance), reference,
                                       match_tolerance);
  sel.selected = sel.distance.max_abs_deviation < sel.hops.max_abs_deviation ? Weighting::kDistance
                                                                             : Weighting::kHops;
  return sel;
}

}  // namespace tndp::netcore
