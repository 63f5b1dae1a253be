#include "tndp/netcore/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>

namespace tndp::netcore {

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  constexpr double kRad = std::numbers::pi / 180.0;
  const double dlat = (lat2 - lat1) * kRad;
  const double dlon = (lon2 - lon1) * kRad;
  const double s = std::sin(dlat / 2.0);
  const double t = std::sin(dlon / 2.0);
  double h = s * s + std::cos(lat1 * kRad) * std::cos(lat2 * kRad) * t * t;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

double haversine_km(const Node& a, const Node& b) { return haversine_km(a.lat, a.lon, b.lat, b.lon); }

namespace {

int orientation(Point a, Point b, Point c) {
  const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (cross > 0.0) return 1;
  if (cross < 0.0) return -1;
  return 0;
}

}  // namespace

bool segments_cross(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);

  if (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return o1 != o2 && o3 != o4;

  if (o1 == 0 && o2 == 0) {
    // Collinear: project onto the axis with the larger extent and require the
    // open intervals to overlap.
    const bool use_x = std::abs(p2.x - p1.x) + std::abs(q2.x - q1.x) >=
                       std::abs(p2.y - p1.y) + std::abs(q2.y - q1.y);
    auto coord = [use_x](Point p) { return use_x ? p.x : p.y; };
    const double pa = std::min(coord(p1), coord(p2));
    const double pb = std::max(coord(p1), coord(p2));
    const double qa = std::min(coord(q1), coord(q2));
    const double qb = std::max(coord(q1), coord(q2));
    return std::max(pa, qa) < std::min(pb, qb);
  }
  // One endpoint lies on the other segment's line: a touch, not a crossing.
  return false;
}

bool edges_cross(const RoadNetwork& net, const Edge& a, const Edge& b) {
  if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) return false;
  auto pt = [&net](int id) {
    const Node& n = net.node(id);
    return Point{n.lon, n.lat};
  };
  return segments_cross(pt(a.u), pt(a.v), pt(b.u), pt(b.v));
}

std::size_t segment_intersections(const RoadNetwork& net, std::span<const Edge> a,
                                  std::span<const Edge> b) {
  std::set<std::pair<EdgeKey, EdgeKey>> pairs;
  for (const Edge& e : a) {
    for (const Edge& f : b) {
      if (!edges_cross(net, e, f)) continue;
      EdgeKey ke(e);
      EdgeKey kf(f);
      if (kf < ke) std::swap(ke, kf);
      pairs.emplace(ke, kf);
    }
  }
  return pairs.size();
}

}  // namespace tndp::netcore
