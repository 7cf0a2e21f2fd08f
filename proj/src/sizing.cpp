#include "sspare/sizing.hpp"

#include <cmath>
#include <numbers>

namespace sspare {

double module_power(const ModuleSpec& spec, double age_years) {
    return spec.panel_area_m2 * spec.irradiance_w_m2 * spec.efficiency *
           std::pow(1.0 - spec.degradation_rate_per_year, age_years);
}

int modules_required(double demand_w, const ModuleSpec& spec) {
    const double per_module = module_power(spec, 0.0);
    int n = static_cast<int>(std::ceil(demand_w / per_module));
    if (n < 1) n = 1;
    // Settle floating-point boundaries so exact multiples land exactly.
    while (n > 1 && static_cast<double>(n - 1) * per_module >= demand_w) --n;
    while (static_cast<double>(n) * per_module < demand_w) ++n;
    return n;
}

double array_power(int n, const ModuleSpec& spec, double age_years) {
    return static_cast<double>(n) * module_power(spec, age_years);
}

double module_mass(const ModuleSpec& spec) {
    return spec.structure_mass_kg + spec.battery_mass_kg + spec.other_mass_kg;
}

double module_cost(const ModuleSpec& spec) {
    return spec.cell_cost_total_usd + spec.structure_cost_usd + spec.battery_electronics_cost_usd;
}

int stack_capacity(const FairingProfile& fairing, double satellite_height_m,
                   const ModuleSpec& spec, double rod_half_span_m, double rod_overtravel_m) {
    if (rod_half_span_m < spec.edge_length_m / 2.0) {
        throw DomainError("rod_half_span_m must be at least half the module edge length");
    }
    const double circumradius = spec.edge_length_m * std::numbers::sqrt2 / 2.0;
    if (fairing.radius_at(satellite_height_m) < circumradius) {
        throw SizingError(SizingError::Kind::NoFit,
                          "fairing radius at the stack base is below the module circumradius");
    }
    // Stack clearance: every height in the stack must clear the module
    // diagonal. Rod clearance: the rods extend one overtravel above the
    // stack and need the (smaller) rod half-span.
    const double module_limit = fairing.clearance_end(satellite_height_m, circumradius);
    const double rod_limit =
        fairing.clearance_end(satellite_height_m, rod_half_span_m) - rod_overtravel_m;
    double clear = std::min(module_limit, rod_limit) - satellite_height_m;
    if (clear < 0.0) clear = 0.0;
    return static_cast<int>(std::floor(clear / spec.stack_pitch_m + 1e-9));
}

MissionDelta mission_delta(const Scenario& s) {
    if (s.architecture.kind != ArchitectureKind::Sspare) {
        throw SizingError(SizingError::Kind::WrongArchitecture,
                          "mission delta is defined for the sspare architecture only");
    }
    MissionDelta d;
    d.added_cost_usd = s.architecture.n_spares * module_cost(s.module) +
                       2.0 * s.base_module_cost_usd + s.sim.unloader_rod_cost_usd;
    d.added_mass_kg =
        s.architecture.n_spares * module_mass(s.module) + 2.0 * s.base_module_mass_kg;
    d.added_height_m = s.architecture.n_modules * s.module.stack_pitch_m;
    return d;
}

ComparisonRow ComparisonRow::traditional_baseline() {
    ComparisonRow row;
    row.label = "Traditional Intelsat";
    row.main_body_dims_m = {2.8, 3.5, 5.6};
    row.max_power_w = 8600.0;
    row.dev_launch_cost_usd = 400e6;
    row.launch_mass_kg = 4725.0;
    row.life_expectancy_years = 17.0;
    row.life_open_ended = false;
    return row;
}

std::vector<ComparisonRow> build_comparison_table(const std::vector<Scenario>& scenarios,
                                                  const ComparisonRow& baseline) {
    std::vector<ComparisonRow> rows;
    rows.reserve(scenarios.size() + 1);
    if (scenarios.empty()) {
        rows.push_back(baseline);
        return rows;
    }
    for (const auto& s : scenarios) {
        ComparisonRow row = baseline;
        switch (s.architecture.kind) {
            case ArchitectureKind::Traditional:
                break;
            case ArchitectureKind::ServicerExtended:
                row.label = "Intelsat with servicer";
                row.dev_launch_cost_usd +=
                    s.architecture.annual_cost_usd * s.architecture.extension_years;
                row.launch_mass_kg += s.sim.servicer_added_mass_kg;
                row.life_expectancy_years += s.architecture.extension_years;
                break;
            case ArchitectureKind::Sspare: {
                row.label = "Intelsat with SSPARE";
                const MissionDelta d = mission_delta(s);
                row.dev_launch_cost_usd += d.added_cost_usd;
                row.launch_mass_kg += d.added_mass_kg;
                row.main_body_dims_m[2] += d.added_height_m;
                row.max_power_w = array_power(s.architecture.n_modules, s.module, 0.0);
                // Self-servicing keeps power alive past the horizon; report
                // the mission duration as a censored floor.
                row.life_expectancy_years = s.mission_duration_years;
                row.life_open_ended = true;
                break;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

FairingUtilization fairing_utilization(double payload_volume_m3, double payload_mass_kg,
                                       double fairing_volume_m3, double mass_to_orbit_kg) {
    if (!(fairing_volume_m3 > 0.0) || !(mass_to_orbit_kg > 0.0)) {
        throw DomainError("launcher capacities must be > 0");
    }
    return {payload_volume_m3 / fairing_volume_m3, payload_mass_kg / mass_to_orbit_kg};
}

}  // namespace sspare
