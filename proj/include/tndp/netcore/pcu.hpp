#pragma once

#include <span>

namespace tndp::netcore {

// Passenger-car-unit conversion of a passenger count spread over vehicle
// types: pcu = sum_i share_i * passengers / occupants_i.
//
// occupants_i is the number of people per vehicle of type i and share_i the
// fraction of trips made with that type. Throws std::invalid_argument on
// mismatched lengths, empty input or non-positive occupancy.
double pcu_convert(double passengers, std::span<const double> occupants,
                   std::span<const double> trip_shares);

}  // namespace tndp::netcore
