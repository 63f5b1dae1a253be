#include "tndp/design/problem_file.hpp"

#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

#include "tndp/netcore/io.hpp"

namespace tndp::design {

namespace {

void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      throw std::invalid_argument("unknown key '" + key + "' in " + where);
    }
  }
}

double number(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw std::invalid_argument("'" + key + "' must be a number");
  return v.get<double>();
}

int integer(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer()) throw std::invalid_argument("'" + key + "' must be an integer");
  return v.get<int>();
}

std::filesystem::path path_value(const nlohmann::json& v, const std::string& key,
                                 const std::filesystem::path& base_dir) {
  if (!v.is_string()) throw std::invalid_argument("'" + key + "' must be a path string");
  std::filesystem::path p = v.get<std::string>();
  return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
}

}  // namespace

ProblemFile parse_problem_json(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw std::invalid_argument("problem definition must be a JSON object");
  reject_unknown(doc, {"budget_km", "q", "lambda", "assignment", "nodes", "edges", "od", "schema"},
                 "problem definition");

  ProblemFile pf;
  if (doc.contains("budget_km")) pf.settings.budget_km = number(doc["budget_km"], "budget_km");
  if (doc.contains("q")) {
    pf.settings.q = integer(doc["q"], "q");
    if (pf.settings.q != 0 && pf.settings.q != 1) throw std::invalid_argument("'q' must be 0 or 1");
  }
  if (doc.contains("lambda")) {
    const auto& l = doc["lambda"];
    if (l.is_string()) {
      if (l.get<std::string>() != "auto") {
        throw std::invalid_argument("'lambda' must be \"auto\" or a number");
      }
    } else {
      pf.settings.lambda = number(l, "lambda");
    }
  }
  if (doc.contains("assignment")) {
    const auto& a = doc["assignment"];
    if (!a.is_object()) throw std::invalid_argument("'assignment' must be an object");
    reject_unknown(a, {"alpha", "fw_tolerance", "fw_max_iters", "line_search_tol", "direction"},
                   "assignment");
    auto& cfg = pf.settings.assignment;
    if (a.contains("alpha")) cfg.alpha = number(a["alpha"], "alpha");
    if (a.contains("fw_tolerance")) cfg.fw_tolerance = number(a["fw_tolerance"], "fw_tolerance");
    if (a.contains("fw_max_iters")) cfg.fw_max_iters = integer(a["fw_max_iters"], "fw_max_iters");
    if (a.contains("line_search_tol")) {
      cfg.line_search_tol = number(a["line_search_tol"], "line_search_tol");
    }
    if (a.contains("direction")) {
      const auto& d = a["direction"];
      if (!d.is_string()) throw std::invalid_argument("'direction' must be a string");
      cfg.direction = assignment::direction_from_string(d.get<std::string>());
    }
    cfg.validate();
  }
  if (doc.contains("nodes")) pf.nodes = path_value(doc["nodes"], "nodes", base_dir);
  if (doc.contains("edges")) pf.edges = path_value(doc["edges"], "edges", base_dir);
  if (doc.contains("od")) pf.od = path_value(doc["od"], "od", base_dir);
  return pf;
}

ProblemFile load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw netcore::DataError(path.string(), 0, "cannot open file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw netcore::DataError(path.string(), 0, e.what());
  }
  try {
    return parse_problem_json(doc, path.parent_path());
  } catch (const std::invalid_argument& e) {
    throw netcore::DataError(path.string(), 0, e.what());
  }
}

nlohmann::json to_json(const assignment::AssignmentConfig& cfg) {
  return {{"alpha", cfg.alpha},
          {"fw_tolerance", cfg.fw_tolerance},
          {"fw_max_iters", cfg.fw_max_iters},
          {"line_search_tol", cfg.line_search_tol},
          {"direction", assignment::to_string(cfg.direction)}};
}

nlohmann::json to_json(const ProblemSettings& settings) {
  nlohmann::json j = {{"budget_km", settings.budget_km},
                      {"q", settings.q},
                      {"assignment", to_json(settings.assignment)}};
  if (settings.lambda) {
    j["lambda"] = *settings.lambda;
  } else {
    j["lambda"] = "auto";
  }
  return j;
}

}  // namespace tndp::design
