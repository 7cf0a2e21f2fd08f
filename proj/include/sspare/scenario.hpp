#pragma once

#include <array>
#include <string>
#include <vector>

#include "sspare/errors.hpp"
#include "sspare/hazard.hpp"
#include "sspare/module_spec.hpp"

namespace sspare {

enum class ArchitectureKind { Traditional, ServicerExtended, Sspare };
const char* to_string(ArchitectureKind k);

struct ResupplyEntry {
    double year = 0.0;
    int module_count = 0;
    bool operator==(const ResupplyEntry&) const = default;
};

struct Architecture {
    ArchitectureKind kind = ArchitectureKind::Traditional;

    // ServicerExtended
    double annual_cost_usd = 13e6;
    double extension_years = 5.0;
    double service_epoch_years = 12.0;  // extension applies if alive at epoch

    // Sspare
    int n_modules = 10;
    int n_spares = 4;
    std::vector<ResupplyEntry> resupply_schedule;

    bool operator==(const Architecture&) const = default;

    static Architecture traditional();
    static Architecture servicer_extended(double annual_cost_usd, double extension_years);
    static Architecture sspare(int n_modules, int n_spares);
};

struct HeartbeatConfig {
    double interval_s = 10.0;   // tau
    int miss_threshold = 3;     // m
    double drop_probability = 0.0;
    bool operator==(const HeartbeatConfig&) const = default;
};

// Tuning knobs with no analogue in the physical parameter set.
struct SimTuning {
    double move_duration_s = 300.0;           // per planner move
    double unloader_phase_duration_s = 60.0;  // per unloader phase
    double rod_overtravel_m = 0.2;            // connector travel above the stack
    double rod_half_span_m = 1.3;             // rods reach a 2.6 m diameter
    double unloader_rod_cost_usd = 0.0;       // added to the mission delta
    double servicer_added_mass_kg = 2326.0;   // servicer launch mass allowance
    double open_circuit_fraction = 0.5;       // physical failures that fail open
    double nonresponsive_fraction = 0.5;      // failures that also kill comms
    double battery_temp_min_k = 273.0;
    double battery_temp_max_k = 313.0;

    bool operator==(const SimTuning&) const = default;
};

// Full mission description. Immutable value type; validated construction via
// validate_scenario.
struct Scenario {
    Architecture architecture{};
    double bus_demand_w = 8600.0;
    double mission_duration_years = 30.0;
    HeartbeatConfig heartbeat{};
    ModuleSpec module{};
    HazardModel hazard = HazardModel::geo_default();
    std::array<double, 3> satellite_dims_m{2.8, 3.5, 5.56};  // length/width/height
    double base_module_mass_kg = 125.0;
    double base_module_cost_usd = 50000.0;
    SimTuning sim{};

    bool operator==(const Scenario&) const = default;

    double satellite_height_m() const { return satellite_dims_m[2]; }

    // Reference mission configurations.
    static Scenario default_traditional();
    static Scenario default_servicer_extended();
    static Scenario default_sspare();
};

// Carries one message per violated invariant.
class InvalidScenario : public Error {
public:
    explicit InvalidScenario(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

std::vector<std::string> scenario_violations(const Scenario& s);

// Returns the scenario unchanged if every invariant holds, otherwise throws
// InvalidScenario listing all violations. Values are never clamped.
Scenario validate_scenario(const Scenario& s);

}  // namespace sspare
