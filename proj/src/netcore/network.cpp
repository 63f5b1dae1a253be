#include "tndp/netcore/network.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "tndp/netcore/geometry.hpp"

namespace tndp::netcore {

RoadNetwork::RoadNetwork(std::vector<Node> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.id != static_cast<int>(i) + 1) {
      throw std::invalid_argument("node ids must be contiguous from 1; found id " +
                                  std::to_string(n.id) + " at position " + std::to_string(i + 1));
    }
    if (!(n.lat >= -90.0 && n.lat <= 90.0) || !(n.lon >= -180.0 && n.lon <= 180.0)) {
      throw std::invalid_argument("node " + std::to_string(n.id) + " has out-of-range coordinates");
    }
  }
  std::set<EdgeKey> seen;
  for (Edge& e : edges_) {
    if (!has_node(e.u) || !has_node(e.v)) {
      throw std::invalid_argument("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                  " references an unknown node");
    }
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert(EdgeKey(e)).second) {
      throw std::invalid_argument("duplicate edge " + std::to_string(e.u) + "-" +
                                  std::to_string(e.v));
    }
    if (!(e.length_km > 0.0)) e.length_km = haversine_km(node(e.u), node(e.v));
  }
}

int RoadNetwork::edge_index(int a, int b) const {
  const EdgeKey key(a, b);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (EdgeKey(edges_[i]) == key) return static_cast<int>(i);
  }
  return -1;
}

bool RoadNetwork::has_edge(int a, int b) const { return edge_index(a, b) >= 0; }

RoadNetwork RoadNetwork::with_edges(const std::vector<Edge>& extra) const {
  std::vector<Edge> all = edges_;
  all.insert(all.end(), extra.begin(), extra.end());
  return RoadNetwork(nodes_, std::move(all));
}

bool RoadNetwork::operator==(const RoadNetwork& other) const {
  auto node_eq = [](const Node& a, const Node& b) {
    return a.id == b.id && a.lat == b.lat && a.lon == b.lon && a.name == b.name;
  };
  auto edge_eq = [](const Edge& a, const Edge& b) {
    return a.u == b.u && a.v == b.v && a.length_km == b.length_km;
  };
  return std::equal(nodes_.begin(), nodes_.end(), other.nodes_.begin(), other.nodes_.end(),
                    node_eq) &&
         std::equal(edges_.begin(), edges_.end(), other.edges_.begin(), other.edges_.end(),
                    edge_eq);
}

CandidateSet build_candidates(const RoadNetwork& net) {
  std::set<EdgeKey> existing;
  for (const Edge& e : net.edges()) existing.insert(EdgeKey(e));

  CandidateSet out;
  const int n = static_cast<int>(net.node_count());
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (existing.contains(EdgeKey(u, v))) continue;
      out.candidates.push_back({u, v, haversine_km(net.node(u), net.node(v))});
    }
  }
  return out;
}

void ODMatrix::set(int origin, int dest, double value) {
  if (origin < 1 || dest < 1 || static_cast<std::size_t>(origin) > n_ ||
      static_cast<std::size_t>(dest) > n_) {
    throw std::out_of_range("OD index out of range");
  }
  if (!(value >= 0.0)) throw std::invalid_argument("negative demand");
  if (origin == dest && value != 0.0) throw std::invalid_argument("nonzero diagonal demand");
  demand_[static_cast<std::size_t>(origin - 1) * n_ + static_cast<std::size_t>(dest - 1)] = value;
}

double ODMatrix::total() const {
  double s = 0.0;
  for (double d : demand_) s += d;
  return s;
}

std::size_t ODMatrix::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(demand_.begin(), demand_.end(),
                                                [](double d) { return d > 0.0; }));
}

}  // namespace tndp::netcore
