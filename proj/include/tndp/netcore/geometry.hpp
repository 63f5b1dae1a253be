#pragma once

#include <span>

#include "tndp/netcore/network.hpp"

namespace tndp::netcore {

inline constexpr double kEarthRadiusKm = 6371.0;

double haversine_km(double lat1, double lon1, double lat2, double lon2);
double haversine_km(const Node& a, const Node& b);

// Planar point, x = longitude, y = latitude.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

// True when the open segments p1-p2 and q1-q2 share a point. Touching at an
// endpoint (T-junction) does not count; collinear overlap of positive length
// does.
bool segments_cross(Point p1, Point p2, Point q1, Point q2);

// Edges cross if their segments cross and they share no endpoint node.
bool edges_cross(const RoadNetwork& net, const Edge& a, const Edge& b);

// Number of distinct unordered pairs {e, f}, e from a and f from b, whose
// segments cross. Pairs sharing an endpoint node are excluded.
std::size_t segment_intersections(const RoadNetwork& net, std::span<const Edge> a,
                                  std::span<const Edge> b);

}  // namespace tndp::netcore
