#include "tndp/netcore/pcu.hpp"

#include <cmath>
#include <stdexcept>

namespace tndp::netcore {

double pcu_convert(double passengers, std::span<const double> occupants,
                   std::span<const double> trip_shares) {
  if (occupants.size() != trip_shares.size()) {
    throw std::invalid_argument("pcu_convert: occupants and trip_shares differ in length");
  }
  if (occupants.empty()) throw std::invalid_argument("pcu_convert: no vehicle types");
  if (passengers < 0.0) throw std::invalid_argument("pcu_convert: negative passenger count");

  double share_sum = 0.0;
  double pcu = 0.0;
  for (std::size_t i = 0; i < occupants.size(); ++i) {
    if (!(occupants[i] > 0.0)) {
      throw std::invalid_argument("pcu_convert: occupants must be positive");
    }
    if (trip_shares[i] < 0.0) throw std::invalid_argument("pcu_convert: negative trip share");
    share_sum += trip_shares[i];
    pcu += trip_shares[i] * passengers / occupants[i];
  }
  if (std::abs(share_sum - 1.0) > 1e-6) {
    throw std::invalid_argument("pcu_convert: trip shares must sum to 1");
  }
  return pcu;
}

}  // namespace tndp::netcore
