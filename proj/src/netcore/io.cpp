#include "tndp/netcore/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

namespace tndp::netcore {

DataError::DataError(std::string path, std::size_t line, const std::string& message)
    : std::runtime_error(path + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                         message),
      path_(std::move(path)),
      line_(line),
      detail_(message) {}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  for (std::string& f : fields) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return fields;
}

namespace {

struct Row {
  std::size_t line;
  std::vector<std::string> fields;
};

struct CsvFile {
  std::string path;
  Row header;
  std::vector<Row> rows;
};

CsvFile read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string(), 0, "cannot open file");
  CsvFile file{path.string(), {}, {}};
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Row row{lineno, split_csv_line(line)};
    if (!have_header) {
      file.header = std::move(row);
      have_header = true;
    } else {
      file.rows.push_back(std::move(row));
    }
  }
  if (!have_header || file.rows.empty()) throw DataError(file.path, 0, "no data rows");
  return file;
}

double parse_double(const CsvFile& f, const Row& row, std::size_t col, const char* what) {
  const std::string& s = row.fields[col];
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError(f.path, row.line, std::string("malformed ") + what + " '" + s + "'");
  }
  return value;
}

int parse_int(const CsvFile& f, const Row& row, std::size_t col, const char* what) {
  const std::string& s = row.fields[col];
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError(f.path, row.line, std::string("malformed ") + what + " '" + s + "'");
  }
  return value;
}

void expect_header(const CsvFile& f, const std::vector<std::string>& required,
                   std::size_t optional_extra = 0) {
  const auto& h = f.header.fields;
  const bool ok = h.size() >= required.size() && h.size() <= required.size() + optional_extra &&
                  std::equal(required.begin(), required.end(), h.begin());
  if (!ok) {
    std::string want;
    for (const auto& r : required) want += (want.empty() ? "" : ",") + r;
    throw DataError(f.path, f.header.line, "unexpected header, expected '" + want + "'");
  }
}

void expect_columns(const CsvFile& f, const Row& row, std::size_t n) {
  if (row.fields.size() != n) {
    throw DataError(f.path, row.line,
                    "malformed row: expected " + std::to_string(n) + " fields, found " +
                        std::to_string(row.fields.size()));
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path.string(), 0, "cannot open file for writing");
  return out;
}

}  // namespace

std::vector<Node> load_nodes(const std::filesystem::path& path) {
  const CsvFile f = read_csv(path);
  expect_header(f, {"id", "lat", "lon", "name"});
  std::vector<Node> nodes;
  for (const Row& row : f.rows) {
    expect_columns(f, row, 4);
    Node n;
    n.id = parse_int(f, row, 0, "node id");
    n.lat = parse_double(f, row, 1, "latitude");
    n.lon = parse_double(f, row, 2, "longitude");
    n.name = row.fields[3];
    if (n.id != static_cast<int>(nodes.size()) + 1) {
      throw DataError(f.path, row.line,
                      "node ids must be contiguous from 1, expected " +
                          std::to_string(nodes.size() + 1) + " got " + std::to_string(n.id));
    }
    if (n.lat < -90.0 || n.lat > 90.0 || n.lon < -180.0 || n.lon > 180.0) {
      throw DataError(f.path, row.line, "coordinates out of range");
    }
    nodes.push_back(std::move(n));
  }
  return nodes;
}

std::vector<Edge> load_edges(const std::filesystem::path& path) {
  const CsvFile f = read_csv(path);
  expect_header(f, {"u", "v"}, 1);
  const bool has_length = f.header.fields.size() == 3;
  if (has_length && f.header.fields[2] != "length_km") {
    throw DataError(f.path, f.header.line, "unexpected header, expected 'u,v[,length_km]'");
  }
  std::vector<Edge> edges;
  for (const Row& row : f.rows) {
    expect_columns(f, row, has_length ? 3 : 2);
    Edge e;
    e.u = parse_int(f, row, 0, "node id");
    e.v = parse_int(f, row, 1, "node id");
    if (has_length) {
      e.length_km = parse_double(f, row, 2, "length");
      if (!(e.length_km > 0.0)) throw DataError(f.path, row.line, "length_km must be positive");
    }
    edges.push_back(e);
  }
  return edges;
}

RoadNetwork load_network(const std::filesystem::path& nodes_csv,
                         const std::filesystem::path& edges_csv) {
  std::vector<Node> nodes = load_nodes(nodes_csv);
  std::vector<Edge> edges = load_edges(edges_csv);

  // Re-read rows to attach line numbers to topology errors.
  const CsvFile f = read_csv(edges_csv);
  std::set<EdgeKey> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    const std::size_t line = f.rows[i].line;
    for (int id : {e.u, e.v}) {
      if (id < 1 || static_cast<std::size_t>(id) > nodes.size()) {
        throw DataError(f.path, line, "unknown node id " + std::to_string(id));
      }
    }
    if (e.u == e.v) throw DataError(f.path, line, "self-loop at node " + std::to_string(e.u));
    if (!seen.insert(EdgeKey(e)).second) {
      throw DataError(f.path, line,
                      "duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
  }
  return RoadNetwork(std::move(nodes), std::move(edges));
}

ODMatrix load_od(const std::filesystem::path& path, std::size_t node_count) {
  const CsvFile f = read_csv(path);
  ODMatrix od(node_count);
  const int n = static_cast<int>(node_count);

  auto check_id = [&](const Row& row, int id) {
    if (id < 1 || id > n) throw DataError(f.path, row.line, "unknown node id " + std::to_string(id));
  };
  auto store = [&](const Row& row, int r, int s, double d) {
    if (d < 0.0) throw DataError(f.path, row.line, "negative demand");
    if (r == s && d != 0.0) throw DataError(f.path, row.line, "nonzero diagonal demand");
    od.set(r, s, d);
  };

  const auto& h = f.header.fields;
  if (h.size() == 3 && h[0] == "origin" && h[1] == "dest" && h[2] == "demand") {
    std::set<std::pair<int, int>> seen;
    for (const Row& row : f.rows) {
      expect_columns(f, row, 3);
      const int r = parse_int(f, row, 0, "origin");
      const int s = parse_int(f, row, 1, "destination");
      check_id(row, r);
      check_id(row, s);
      if (!seen.emplace(r, s).second) {
        throw DataError(f.path, row.line, "duplicate OD pair");
      }
      store(row, r, s, parse_double(f, row, 2, "demand"));
    }
    return od;
  }

  // Dense: first header cell is a label, the rest are destination ids.
  std::vector<int> cols;
  for (std::size_t c = 1; c < h.size(); ++c) {
    cols.push_back(parse_int(f, f.header, c, "node id"));
    check_id(f.header, cols.back());
  }
  if (cols.size() != node_count) {
    throw DataError(f.path, f.header.line,
                    "dense OD header must list " + std::to_string(node_count) + " node ids");
  }
  std::set<int> rows_seen;
  for (const Row& row : f.rows) {
    expect_columns(f, row, node_count + 1);
    const int r = parse_int(f, row, 0, "origin");
    check_id(row, r);
    if (!rows_seen.insert(r).second) throw DataError(f.path, row.line, "duplicate origin row");
    for (std::size_t c = 0; c < cols.size(); ++c) {
      store(row, r, cols[c], parse_double(f, row, c + 1, "demand"));
    }
  }
  if (rows_seen.size() != node_count) {
    throw DataError(f.path, 0, "dense OD matrix must have " + std::to_string(node_count) + " rows");
  }
  return od;
}

std::vector<EdgeReference> load_edge_reference(const std::filesystem::path& path) {
  const CsvFile f = read_csv(path);
  expect_header(f, {"u", "v", "betweenness", "traffic_volume"});
  std::vector<EdgeReference> out;
  for (const Row& row : f.rows) {
    expect_columns(f, row, 4);
    EdgeReference r;
    r.key = EdgeKey(parse_int(f, row, 0, "node id"), parse_int(f, row, 1, "node id"));
    r.betweenness = parse_double(f, row, 2, "betweenness");
    r.traffic_volume = parse_double(f, row, 3, "traffic volume");
    out.push_back(r);
  }
  return out;
}

void save_nodes(const RoadNetwork& net, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "id,lat,lon,name\n";
  for (const Node& n : net.nodes()) {
    out << n.id << ',' << format_double(n.lat) << ',' << format_double(n.lon) << ','
        << quote(n.name) << '\n';
  }
}

void save_edges(const RoadNetwork& net, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "u,v,length_km\n";
  for (const Edge& e : net.edges()) {
    out << e.u << ',' << e.v << ',' << format_double(e.length_km) << '\n';
  }
}

void save_od(const ODMatrix& od, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "node";
  for (std::size_t s = 1; s <= od.size(); ++s) out << ',' << s;
  out << '\n';
  for (std::size_t r = 0; r < od.size(); ++r) {
    out << r + 1;
    for (std::size_t s = 0; s < od.size(); ++s) out << ',' << format_double(od(r, s));
    out << '\n';
  }
}

void save_report(nlohmann::json report, const std::filesystem::path& path) {
  if (!report.is_object()) throw std::invalid_argument("report must be a JSON object");
  if (!report.contains("schema")) report["schema"] = kReportSchemaVersion;
  auto out = open_out(path);
  out << report.dump(2) << '\n';
}

nlohmann::json load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string(), 0, "cannot open file");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string(), 0, e.what());
  }
  if (!j.is_object() || !j.contains("schema")) {
    throw DataError(path.string(), 0, "report lacks a schema version");
  }
  if (j["schema"] != kReportSchemaVersion) {
    throw DataError(path.string(), 0, "unsupported report schema " + j["schema"].dump());
  }
  return j;
}

}  // namespace tndp::netcore
