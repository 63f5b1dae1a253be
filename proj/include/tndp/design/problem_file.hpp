#pragma once

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "tndp/design/problem.hpp"

namespace tndp::design {

// Problem definition document:
//
//   {
//     "budget_km": 100, "q": 0, "lambda": "auto" | <number>,
//     "assignment": {"alpha": 0.15, "fw_tolerance": 1e-3,
//                    "fw_max_iters": 200, "line_search_tol": 1e-6,
//                    "direction": "biconjugate" | "conjugate" | "frank-wolfe"},
//     "nodes": "nodes.csv", "edges": "edges.csv", "od": "od.csv"
//   }
//
// Every key is optional; unknown keys are rejected. Relative paths resolve
// against the document's directory.
struct ProblemFile {
  ProblemSettings settings;
  std::optional<std::filesystem::path> nodes;
  std::optional<std::filesystem::path> edges;
  std::optional<std::filesystem::path> od;
};

ProblemFile parse_problem_json(const nlohmann::json& doc,
                               const std::filesystem::path& base_dir = {});
ProblemFile load_problem_file(const std::filesystem::path& path);

nlohmann::json to_json(const ProblemSettings& settings);
nlohmann::json to_json(const assignment::AssignmentConfig& cfg);

}  // namespace tndp::design
