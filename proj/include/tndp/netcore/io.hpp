#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tndp/netcore/betweenness.hpp"
#include "tndp/netcore/network.hpp"

namespace tndp::netcore {

inline constexpr int kReportSchemaVersion = 1;

// Input error carrying the offending file and 1-based line (0 = whole file).
class DataError : public std::runtime_error {
 public:
  DataError(std::string path, std::size_t line, const std::string& message);

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string path_;
  std::size_t line_;
  std::string detail_;
};

// Minimal RFC 4180 field splitter (quoted fields, doubled quotes).
std::vector<std::string> split_csv_line(const std::string& line);

std::vector<Node> load_nodes(const std::filesystem::path& path);
// Edge lengths are left at 0 when the optional column is absent.
std::vector<Edge> load_edges(const std::filesystem::path& path);
RoadNetwork load_network(const std::filesystem::path& nodes_csv,
                         const std::filesystem::path& edges_csv);

// Dense matrix (header row of node ids) or triplets (origin,dest,demand).
ODMatrix load_od(const std::filesystem::path& path, std::size_t node_count);

std::vector<EdgeReference> load_edge_reference(const std::filesystem::path& path);

void save_nodes(const RoadNetwork& net, const std::filesystem::path& path);
void save_edges(const RoadNetwork& net, const std::filesystem::path& path);
void save_od(const ODMatrix& od, const std::filesystem::path& path);

// Reports are JSON objects; save stamps "schema" when missing.
void save_report(nlohmann::json report, const std::filesystem::path& path);
nlohmann::json load_report(const std::filesystem::path& path);

}  // namespace tndp::netcore
