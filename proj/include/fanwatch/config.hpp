// Sectioned key-value config file handling.

#ifndef FANWATCH_CONFIG_HPP
#define FANWATCH_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "fanwatch/eval.hpp"
#include "fanwatch/synthgen.hpp"

namespace fanwatch {

struct RunConfig {
    ScheduleConfig schedule;
    ImpellerProfile healthy_profile;
    double damage_scale = 3.0; // damaged profile = healthy scaled, unless overridden
    std::optional<ImpellerProfile> damaged_override;
    GridConfig grid;
    std::uint64_t master_seed = 1;
    std::uint64_t sample_budget = kDefaultSampleBudget;

    ImpellerProfile damaged_profile() const
    {
        return damaged_override ? *damaged_override : healthy_profile.scaled(damage_scale);
    }
};

// Default config rendered with every key present and documented inline.
std::string emit_default_config();

RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);

} // namespace fanwatch

#endif
