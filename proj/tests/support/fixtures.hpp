#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "tndp/design/problem.hpp"
#include "tndp/netcore/io.hpp"
#include "tndp/netcore/network.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return TNDP_DATA_DIR; }

inline tndp::netcore::RoadNetwork kinshasa_network() {
  return tndp::netcore::load_network(data_dir() / "nodes.csv", data_dir() / "edges.csv");
}

inline tndp::netcore::ODMatrix kinshasa_od() {
  return tndp::netcore::load_od(data_dir() / "od.csv", 30);
}

inline tndp::design::DesignProblem kinshasa_problem(int q = 0, double budget = 100.0) {
  tndp::design::ProblemSettings s;
  s.q = q;
  s.budget_km = budget;
  return tndp::design::DesignProblem(kinshasa_network(), kinshasa_od(), s);
}

// Nodes on a small planar grid (lat/lon degrees, roughly 11 km apart).
inline tndp::netcore::Node grid_node(int id, double x, double y) {
  return {id, -4.4 + 0.1 * y, 15.2 + 0.1 * x, "n" + std::to_string(id)};
}

// Six nodes on a 3x2 grid joined in a ring; the diagonals and the middle
// rung are candidates. Demand between the far corners makes shortcuts pay.
inline tndp::design::DesignProblem toy_problem(double budget = 30.0, int q = 0) {
  using tndp::netcore::Edge;
  std::vector<tndp::netcore::Node> nodes = {grid_node(1, 0, 0), grid_node(2, 1, 0),
                                            grid_node(3, 2, 0), grid_node(4, 2, 1),
                                            grid_node(5, 1, 1), grid_node(6, 0, 1)};
  std::vector<Edge> edges = {{1, 2, 0}, {2, 3, 0}, {3, 4, 0}, {4, 5, 0}, {5, 6, 0}, {1, 6, 0}};
  tndp::netcore::ODMatrix od(6);
  od.set(1, 4, 2.0);
  od.set(4, 1, 1.5);
  od.set(6, 3, 2.0);
  od.set(2, 5, 0.5);
  od.set(3, 6, 1.0);
  tndp::design::ProblemSettings s;
  s.budget_km = budget;
  s.q = q;
  return tndp::design::DesignProblem(tndp::netcore::RoadNetwork(nodes, edges), od, s);
}

// Connected random network: a random spanning tree plus extra edges.
inline tndp::netcore::RoadNetwork random_network(std::mt19937_64& rng, int n, int extra) {
  std::uniform_real_distribution<double> coord(0.0, 3.0);
  std::vector<tndp::netcore::Node> nodes;
  for (int i = 1; i <= n; ++i) nodes.push_back(grid_node(i, coord(rng), coord(rng)));
  std::vector<tndp::netcore::Edge> edges;
  auto has = [&edges](int a, int b) {
    for (const auto& e : edges) {
      if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return true;
    }
    return false;
  };
  for (int v = 2; v <= n; ++v) {
    const int u = std::uniform_int_distribution<int>(1, v - 1)(rng);
    edges.push_back({u, v, 0.0});
  }
  for (int k = 0; k < extra; ++k) {
    const int a = std::uniform_int_distribution<int>(1, n)(rng);
    const int b = std::uniform_int_distribution<int>(1, n)(rng);
    if (a != b && !has(a, b)) edges.push_back({std::min(a, b), std::max(a, b), 0.0});
  }
  return tndp::netcore::RoadNetwork(nodes, edges);
}

inline tndp::netcore::ODMatrix random_od(std::mt19937_64& rng, int n, double density, double scale) {
  tndp::netcore::ODMatrix od(static_cast<std::size_t>(n));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int r = 1; r <= n; ++r) {
    for (int s = 1; s <= n; ++s) {
      if (r != s && u(rng) < density) od.set(r, s, scale * u(rng));
    }
  }
  return od;
}

// Fresh directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("tndp_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace fixtures
