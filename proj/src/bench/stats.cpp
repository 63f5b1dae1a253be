#include "tndp/bench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tndp::bench {

Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double mean = 0.0;
  double m2 = 0.0;
  s.min = s.max = values[0];
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = values[i];
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.mean = mean;
  s.stddev = values.size() > 1 ? std::sqrt(m2 / static_cast<double>(values.size() - 1)) : 0.0;
  return s;
}

std::vector<double> midranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (x.size() != y.size() || x.size() < 2) return nan;
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return nan;
  return sxy / std::sqrt(sxx * syy);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) return std::numeric_limits<double>::quiet_NaN();
  return pearson(midranks(x), midranks(y));
}

namespace {

// C(n, k) as a double, saturating once it passes `cap`.
double binomial_capped(std::size_t n, std::size_t k, double cap) {
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    if (c > cap) return c;
  }
  return std::round(c);
}

double u_statistic(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0.0;
  for (double x : a) {
    for (double y : b) {
      if (x > y) {
        u += 1.0;
      } else if (x == y) {
        u += 0.5;
      }
    }
  }
  return u;
}

// Exact two-sided p without ties: counts arrangements by U with the
// recurrence f(i, j, u) = f(i - 1, j, u - j) + f(i, j - 1, u).
double exact_p_no_ties(std::size_t n, std::size_t m, double u_obs) {
  const std::size_t umax = n * m;
  // f[i][j] is a distribution over u in [0, i*j].
  std::vector<std::vector<std::vector<double>>> f(
      n + 1, std::vector<std::vector<double>>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      f[i][j].assign(i * j + 1, 0.0);
      if (i == 0 || j == 0) {
        f[i][j][0] = 1.0;
        continue;
      }
      for (std::size_t u = 0; u <= i * j; ++u) {
        double c = 0.0;
        if (u >= j && u - j <= (i - 1) * j) c += f[i - 1][j][u - j];
        if (u <= i * (j - 1)) c += f[i][j - 1][u];
        f[i][j][u] = c;
      }
    }
  }
  const auto& dist = f[n][m];
  const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
  double lower = 0.0, upper = 0.0;
  for (std::size_t u = 0; u <= umax; ++u) {
    const double ud = static_cast<double>(u);
    if (ud <= u_obs + 1e-9) lower += dist[u];
    if (ud >= u_obs - 1e-9) upper += dist[u];
  }
  return std::min(1.0, 2.0 * std::min(lower, upper) / total);
}

// Exact two-sided p with ties: enumerates every split of the pooled
// midranks into groups of n and m.
double exact_p_ties(const std::vector<double>& pooled_ranks, std::size_t n, double u_obs) {
  const std::size_t total_n = pooled_ranks.size();
  const double offset = static_cast<double>(n * (n + 1)) / 2.0;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  double lower = 0.0, upper = 0.0, count = 0.0;
  for (;;) {
    double r = 0.0;
    for (std::size_t i : idx) r += pooled_ranks[i];
    const double u = r - offset;
    if (u <= u_obs + 1e-9) lower += 1.0;
    if (u >= u_obs - 1e-9) upper += 1.0;
    count += 1.0;
    // Next combination in lexicographic order.
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == total_n - n + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return std::min(1.0, 2.0 * std::min(lower, upper) / count);
}

double normal_p(const std::vector<double>& pooled, std::size_t n, std::size_t m, double u) {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  const double big_n = nn + mm;
  // Tie correction from the sizes of tied groups.
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double ties = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    ties += t * t * t - t;
    i = j + 1;
  }
  const double var = nn * mm / 12.0 * ((big_n + 1.0) - ties / (big_n * (big_n - 1.0)));
  if (!(var > 0.0)) return 1.0;
  const double z = std::max(0.0, std::abs(u - nn * mm / 2.0) - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

}  // namespace

MannWhitney mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b,
                           double alpha, MwMethod method) {
  if (a.empty() || b.empty()) throw std::invalid_argument("Mann-Whitney needs two non-empty samples");
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());

  MannWhitney r;
  r.u = u_statistic(a, b);
  bool exact = method == MwMethod::kExact;
  if (method == MwMethod::kAuto) exact = binomial_capped(n + m, n, kExactLimit) <= kExactLimit;

  if (exact) {
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    const bool has_ties = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    r.p_value = has_ties ? exact_p_ties(midranks(pooled), n, r.u) : exact_p_no_ties(n, m, r.u);
    r.method = "exact";
  } else {
    r.p_value = normal_p(pooled, n, m, r.u);
    r.method = "normal";
  }
  r.reject = r.p_value < alpha;
  return r;
}

}  // namespace tndp::bench
