#pragma once

#include <string_view>
#include <vector>

#include "tndp/netcore/network.hpp"

namespace tndp::netcore {

enum class Weighting { kHops, kDistance };

std::string_view to_string(Weighting w);
Weighting weighting_from_string(std::string_view s);

// Per-edge scores aligned with RoadNetwork::edges().
struct BetweennessScores {
  Weighting weighting = Weighting::kHops;
  std::vector<double> score;

  double mean() const;
};

// Edge betweenness over all unordered node pairs, each pair contributing the
// fraction of its shortest paths that use the edge, scaled by 2/(n(n-1)).
// All shortest paths are counted under ties; unreachable pairs contribute 0.
BetweennessScores edge_betweenness(const RoadNetwork& net, Weighting weighting);

// Published per-edge values for a network (betweenness and traffic volume).
struct EdgeReference {
  EdgeKey key;
  double betweenness = 0.0;
  double traffic_volume = 0.0;
};

struct WeightingFit {
  Weighting weighting = Weighting::kHops;
  double max_abs_deviation = 0.0;
  std::size_t matched = 0;  // edges within the match tolerance
  std::size_t compared = 0;
};

struct WeightingSelection {
  Weighting selected = Weighting::kHops;
  WeightingFit hops;
  WeightingFit distance;
};

WeightingFit fit_against_reference(const RoadNetwork& net, const BetweennessScores& scores,
                                   const std::vector<EdgeReference>& reference,
                                   double match_tolerance = 5e-3);

// Computes both weightings and keeps the one with the lower maximum absolute
// deviation from the reference; hop counts win exact ties.
WeightingSelection select_weighting(const RoadNetwork& net,
                                    const std::vector<EdgeReference>& reference,
                                    double match_tolerance = 5e-3);

}  // namespace tndp::netcore
