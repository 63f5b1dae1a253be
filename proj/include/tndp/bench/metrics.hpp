#pragma once

#include <stdexcept>
#include <vector>

#include "tndp/netcore/network.hpp"

namespace tndp::bench {

class SingleRun : public std::invalid_argument {
 public:
  SingleRun() : std::invalid_argument("stability needs at least two runs") {}
};

struct StabilityScore {
  std::vector<double> per_run;
  double model = 0.0;  // mean of per_run
};

// For run i with edge set E_i among R runs:
//   S_i = sum over e in E_i of (number of other runs containing e)
//         / ((R - 1) |E_i|).
// A run with no edges scores 0. Edges compare by node pair. Throws SingleRun
// for fewer than two runs.
StabilityScore stability(const std::vector<std::vector<netcore::EdgeKey>>& runs);

// p0 / pi. Throws std::domain_error unless pi > 0.
double n_fold(double p0, double pi);

}  // namespace tndp::bench
