#pragma once

#include <array>
#include <string>
#include <vector>

namespace sspare {

enum class Subsystem { Power = 0, Aocs, Ttc, Mechanisms, Other };
inline constexpr int kSubsystemCount = 5;

const char* to_string(Subsystem s);

// Submodes of a power failure.
enum class PowerMode { SolarArray = 0, Distribution, Battery };
const char* to_string(PowerMode m);

// Weibull failure-time law for one subsystem. Disabled subsystems never fail.
struct SubsystemHazard {
    bool enabled = true;
    double shape = 3.0;        // > 1 models wear-out (increasing hazard)
    double scale_years = 20.0;

    bool operator==(const SubsystemHazard&) const = default;
};

// Optional early-life component, combined per subsystem as a competing risk
// with the wear-out law. Off by default.
struct InfantMortality {
    bool enabled = false;
    double shape = 0.6;
    double scale_years = 0.35;

    bool operator==(const InfantMortality&) const = default;
};

// Per-subsystem failure-time distributions plus the mixture over power
// failure submodes. The shipped presets are calibrated defaults produced for
// this simulator (see README); they are configuration, not measured data.
struct HazardModel {
    std::array<SubsystemHazard, kSubsystemCount> subsystems{};
    // Weights over {SolarArray, Distribution, Battery}; nonnegative, sum 1.
    std::array<double, 3> power_mode_weights{0.69, 0.19, 0.12};
    InfantMortality infant{};

    bool operator==(const HazardModel&) const = default;

    const SubsystemHazard& at(Subsystem s) const {
        return subsystems[static_cast<int>(s)];
    }
    SubsystemHazard& at(Subsystem s) { return subsystems[static_cast<int>(s)]; }

    // GEO communication-satellite preset. All subsystems share a wear-out
    // shape so long-run failure shares stay at the calibration targets;
    // scales are back-computed from those shares and a 13-year system
    // characteristic life.
    static HazardModel geo_default();

    // LEO preset: power failures arrive at 1/8 the GEO rate and the power
    // submode mixture is even.
    static HazardModel leo_default();
};

std::vector<std::string> validate(const HazardModel& h, const std::string& prefix = "");

}  // namespace sspare
