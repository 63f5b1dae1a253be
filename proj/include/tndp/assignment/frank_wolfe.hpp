#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "tndp/netcore/network.hpp"

namespace tndp::assignment {

enum class Direction {
  kFrankWolfe,  // classic: towards the all-or-nothing solution
  kConjugate,   // conjugate Frank-Wolfe (Mitradjieva & Lindberg)
  kBiconjugate, // bi-conjugate Frank-Wolfe, same authors
};

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

struct AssignmentConfig {
  double alpha = 0.15;           // BPR coefficient
  double fw_tolerance = 1e-3;    // relative gap stopping threshold
  int fw_max_iters = 200;
  double line_search_tol = 1e-6; // on the step size
  Direction direction = Direction::kBiconjugate;
  // Keep per-origin arc flows in the result (for conservation checks).
  bool keep_origin_flows = false;

  void validate() const;
};

// Raised when positive demand has no connecting path.
class DisconnectedDemand : public std::runtime_error {
 public:
  DisconnectedDemand(int origin, int dest);
  int origin() const { return origin_; }
  int dest() const { return dest_; }

 private:
  int origin_;
  int dest_;
};

// Directed arc carrying flow for an undirected link; both directions of a
// road map to the same link and share its travel time.
struct Arc {
  int tail = 0;  // 0-based node index
  int head = 0;
  int link = 0;
};

// Links with lengths plus the arcs that traverse them. Parallel links
// between the same nodes are allowed here.
struct ArcNetwork {
  std::size_t node_count = 0;
  std::vector<double> link_length;
  std::vector<Arc> arcs;  // sorted by (tail, head, link) after finalize()
  std::vector<std::size_t> out_begin;  // arcs leaving node v: [out_begin[v], out_begin[v+1])

  // Each undirected edge becomes a link with two opposing arcs.
  static ArcNetwork from_road(const netcore::RoadNetwork& net);

  // Sorts arcs and builds the outgoing index; call after editing arcs.
  void finalize();
};

// t(x) = length * (1 + alpha * x^4)
inline double bpr_time(double length_km, double flow, double alpha) {
  const double x2 = flow * flow;
  return length_km * (1.0 + alpha * x2 * x2);
}

// Integral of bpr_time from 0 to flow.
inline double bpr_integral(double length_km, double flow, double alpha) {
  const double x2 = flow * flow;
  return length_km * (flow + alpha * x2 * x2 * flow / 5.0);
}

double beckmann(const ArcNetwork& net, const std::vector<double>& link_flows, double alpha);

struct ShortestPathTree {
  std::vector<double> cost;      // +inf when unreachable
  std::vector<int> pred_arc;     // -1 at the origin and unreachable nodes
  bool reachable(std::size_t node) const;
};

// Dijkstra from origin (0-based) under per-link times. Among equal-cost
// predecessors the lowest arc index wins.
ShortestPathTree shortest_path_costs(const ArcNetwork& net, const std::vector<double>& link_times,
                                     std::size_t origin);

// Loads every OD demand onto one current shortest path and returns per-link
// flows. When origin_arc_flows is non-null it receives per-origin arc flows
// (origin-major, arcs inner).
std::vector<double> all_or_nothing(const ArcNetwork& net, const netcore::ODMatrix& od,
                                   const std::vector<double>& link_times,
                                   std::vector<double>* origin_arc_flows = nullptr);

struct AssignmentResult {
  std::vector<double> link_flows;
  std::vector<double> link_times;
  double total_travel_time = 0.0;
  double beckmann_value = 0.0;
  double relative_gap = 0.0;
  int iterations = 0;
  bool converged = false;
  // Beckmann value after initialisation and after every iteration.
  std::vector<double> beckmann_history;
  std::vector<double> origin_arc_flows;  // only with keep_origin_flows
};

// User-equilibrium assignment by Frank-Wolfe with exact line search.
AssignmentResult frank_wolfe(const ArcNetwork& net, const netcore::ODMatrix& od,
                             const AssignmentConfig& cfg);

// Per-undirected-edge flows, aligned with net.edges().
AssignmentResult frank_wolfe(const netcore::RoadNetwork& net, const netcore::ODMatrix& od,
                             const AssignmentConfig& cfg);

double total_travel_time(const AssignmentResult& result);

double total_travel_time(const std::vector<double>& link_lengths,
                         const std::vector<double>& link_flows, double alpha);

}  // namespace tndp::assignment
