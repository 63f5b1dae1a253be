#pragma once

#include <cstddef>
#include <compare>
#include <functional>
#include <string>
#include <vector>

namespace tndp::netcore {

// Geographic node. Ids are 1-based and contiguous within a RoadNetwork.
struct Node {
  int id = 0;
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees
  std::string name;
};

// Undirected road segment. RoadNetwork stores u < v.
struct Edge {
  int u = 0;
  int v = 0;
  double length_km = 0.0;
};

// Order-independent identity of an undirected node pair, always lo < hi.
struct EdgeKey {
  int lo = 0;
  int hi = 0;

  EdgeKey() = default;
  EdgeKey(int a, int b) : lo(a < b ? a : b), hi(a < b ? b : a) {}
  explicit EdgeKey(const Edge& e) : EdgeKey(e.u, e.v) {}

  auto operator<=>(const EdgeKey&) const = default;
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& k) const noexcept {
    return std::hash<long long>{}((static_cast<long long>(k.lo) << 32) ^ k.hi);
  }
};

class RoadNetwork {
 public:
  RoadNetwork() = default;

  // Validates ids, coordinates, endpoints and duplicate pairs; throws
  // std::invalid_argument on violation. Edges with length_km <= 0 get the
  // haversine length of their endpoints.
  RoadNetwork(std::vector<Node> nodes, std::vector<Edge> edges);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const Node& node(int id) const { return nodes_.at(static_cast<std::size_t>(id - 1)); }
  bool has_node(int id) const { return id >= 1 && static_cast<std::size_t>(id) <= nodes_.size(); }

  bool has_edge(int a, int b) const;
  // Index into edges() or -1.
  int edge_index(int a, int b) const;

  // Copy with extra edges appended after the existing ones.
  RoadNetwork with_edges(const std::vector<Edge>& extra) const;

  bool operator==(const RoadNetwork&) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

// The set of node pairs missing from a base network, in (u, v) order.
struct CandidateSet {
  std::vector<Edge> candidates;

  std::size_t size() const { return candidates.size(); }
  double cost_km(std::size_t i) const { return candidates[i].length_km; }
  const Edge& operator[](std::size_t i) const { return candidates[i]; }
};

CandidateSet build_candidates(const RoadNetwork& net);

// Dense origin-destination demand, indexed by node id - 1.
class ODMatrix {
 public:
  ODMatrix() = default;
  explicit ODMatrix(std::size_t n) : n_(n), demand_(n * n, 0.0) {}

  std::size_t size() const { return n_; }

  // 1-based node ids.
  double at(int origin, int dest) const {
    return demand_[static_cast<std::size_t>(origin - 1) * n_ + static_cast<std::size_t>(dest - 1)];
  }
  void set(int origin, int dest, double value);

  // 0-based indices, for inner loops.
  double operator()(std::size_t r, std::size_t s) const { return demand_[r * n_ + s]; }

  double total() const;
  std::size_t nonzero_count() const;

  bool operator==(const ODMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> demand_;
};

}  // namespace tndp::netcore
