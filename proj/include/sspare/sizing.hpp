#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sspare/errors.hpp"
#include "sspare/fairing.hpp"
#include "sspare/module_spec.hpp"
#include "sspare/scenario.hpp"

namespace sspare {

class SizingError : public Error {
public:
    enum class Kind { NoFit, WrongArchitecture };
    SizingError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Extra launch cost, mass and stack height an SSPARE retrofit adds.
struct MissionDelta {
    double added_cost_usd = 0.0;
    double added_mass_kg = 0.0;
    double added_height_m = 0.0;
    bool operator==(const MissionDelta&) const = default;
};

// One row of the architecture comparison table.
struct ComparisonRow {
    std::string label;
    std::array<double, 3> main_body_dims_m{};
    double max_power_w = 0.0;
    double dev_launch_cost_usd = 0.0;
    double launch_mass_kg = 0.0;
    double life_expectancy_years = 0.0;
    bool life_open_ended = false;  // lifetime is a floor, not a point value

    bool operator==(const ComparisonRow&) const = default;

    // Reference row for the traditional heritage GEO bus the default module
    // was sized against.
    static ComparisonRow traditional_baseline();
};

// Electrical output of one module after `age_years` of degradation.
double module_power(const ModuleSpec& spec, double age_years);

// Smallest module count whose beginning-of-life output covers the demand.
int modules_required(double demand_w, const ModuleSpec& spec);

double array_power(int n, const ModuleSpec& spec, double age_years);

double module_mass(const ModuleSpec& spec);
double module_cost(const ModuleSpec& spec);

// Stowed modules that fit above the satellite inside the fairing. Clearance
// uses the module circumradius (diagonal) against the radius profile; the
// unloading rods must additionally fit for one connector overtravel above
// the stack. Throws SizingError(NoFit) when no module clears the fairing at
// the stack base.
int stack_capacity(const FairingProfile& fairing, double satellite_height_m,
                   const ModuleSpec& spec, double rod_half_span_m,
                   double rod_overtravel_m = 0.2);

// Requires an Sspare architecture; throws SizingError(WrongArchitecture).
MissionDelta mission_delta(const Scenario& s);

// One row per scenario: Traditional reproduces the baseline, ServicerExtended
// adds servicing cost/mass/life, Sspare applies the mission delta.
std::vector<ComparisonRow> build_comparison_table(const std::vector<Scenario>& scenarios,
                                                  const ComparisonRow& baseline);

struct FairingUtilization {
    double volume_fraction = 0.0;
    double mass_fraction = 0.0;
    bool operator==(const FairingUtilization&) const = default;
};

FairingUtilization fairing_utilization(double payload_volume_m3, double payload_mass_kg,
                                       double fairing_volume_m3, double mass_to_orbit_kg);

}  // namespace sspare
