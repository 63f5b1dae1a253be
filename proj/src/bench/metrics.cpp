#include "tndp/bench/metrics.hpp"

#include <set>
#include <unordered_map>

#include "tndp/bench/stats.hpp"

namespace tndp::bench {

StabilityScore stability(const std::vector<std::vector<netcore::EdgeKey>>& runs) {
  if (runs.size() < 2) throw SingleRun();
  // Deduplicate within each run before counting.
  std::vector<std::set<netcore::EdgeKey>> sets;
  std::unordered_map<netcore::EdgeKey, int, netcore::EdgeKeyHash> freq;
  for (const auto& r : runs) {
    sets.emplace_back(r.begin(), r.end());
    for (const auto& e : sets.back()) ++freq[e];
  }
  StabilityScore out;
  const double others = static_cast<double>(runs.size() - 1);
  for (const auto& s : sets) {
    if (s.empty()) {
      out.per_run.push_back(0.0);
      continue;
    }
    double hits = 0.0;
    for (const auto& e : s) hits += freq[e] - 1;
    out.per_run.push_back(hits / (others * static_cast<double>(s.size())));
  }
  out.model = summarize(out.per_run).mean;
  return out;
}

double n_fold(double p0, double pi) {
  if (!(pi > 0.0)) throw std::domain_error("n-fold ratio needs a positive denominator");
  return p0 / pi;
}

}  // namespace tndp::bench
