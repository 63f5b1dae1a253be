#pragma once

#include <string>
#include <vector>

namespace tndp::bench {

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample (n - 1); 0 for fewer than two values
  double min = 0.0;
  double max = 0.0;
};

// Running mean, so identical inputs give that value back exactly.
Summary summarize(const std::vector<double>& values);

// Average ranks (1-based) with ties sharing their mean rank.
std::vector<double> midranks(const std::vector<double>& values);

// NaN when either input has zero variance or sizes differ / are < 2.
double pearson(const std::vector<double>& x, const std::vector<double>& y);
double spearman(const std::vector<double>& x, const std::vector<double>& y);

enum class MwMethod { kAuto, kExact, kNormal };

struct MannWhitney {
  double u = 0.0;        // U of the first sample: pairs a > b, ties count 1/2
  double p_value = 1.0;  // two-sided
  bool reject = false;   // p_value < alpha
  std::string method;    // "exact" or "normal"
};

// Largest C(n + m, n) that still uses the exact null distribution.
inline constexpr double kExactLimit = 20000.0;

// Two-sided Mann-Whitney U test. kAuto enumerates the exact null
// distribution when C(n + m, n) <= kExactLimit and otherwise uses the
// normal approximation with tie and continuity correction. Throws
// std::invalid_argument on an empty sample.
MannWhitney mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b,
                           double alpha = 0.05, MwMethod method = MwMethod::kAuto);

}  // namespace tndp::bench
