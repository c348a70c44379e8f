#ifndef SUMLAB_BATTERIES_HPP
#define SUMLAB_BATTERIES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sumlab/report.hpp"

namespace sumlab {

struct BatteryInfo {
    std::string name;
    std::string description;
};

/// Stable, name-sorted battery listing.
std::vector<BatteryInfo> list_batteries();

/// Runs one named battery; throws input_error for unknown names.
Report run_battery(const std::string& name, std::uint64_t seed);

} // namespace sumlab

#endif
