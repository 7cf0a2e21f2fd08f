#include "sspare/scenario.hpp"

#include <sstream>

namespace sspare {

const char* to_string(ArchitectureKind k) {
    switch (k) {
        case ArchitectureKind::Traditional: return "traditional";
        case ArchitectureKind::ServicerExtended: return "servicer_extended";
        case ArchitectureKind::Sspare: return "sspare";
    }
    return "?";
}

Architecture Architecture::traditional() {
    Architecture a;
    a.kind = ArchitectureKind::Traditional;
    return a;
}

Architecture Architecture::servicer_extended(double annual_cost_usd, double extension_years) {
    Architecture a;
    a.kind = ArchitectureKind::ServicerExtended;
    a.annual_cost_usd = annual_cost_usd;
    a.extension_years = extension_years;
    return a;
}

Architecture Architecture::sspare(int n_modules, int n_spares) {
    Architecture a;
    a.kind = ArchitectureKind::Sspare;
    a.n_modules = n_modules;
    a.n_spares = n_spares;
    return a;
}

Scenario Scenario::default_traditional() {
    Scenario s;
    s.architecture = Architecture::traditional();
    return s;
}

Scenario Scenario::default_servicer_extended() {
    Scenario s;
    s.architecture = Architecture::servicer_extended(13e6, 5.0);
    return s;
}

Scenario Scenario::default_sspare() {
    Scenario s;
    s.architecture = Architecture::sspare(10, 4);
    return s;
}

InvalidScenario::InvalidScenario(std::vector<std::string> violations)
    : Error([&violations] {
          std::ostringstream oss;
          oss << "invalid scenario (" << violations.size() << " violation"
              << (violations.size() == 1 ? "" : "s") << "):";
          for (const auto& v : violations) oss << "\n  - " << v;
          return oss.str();
      }()),
      violations_(std::move(violations)) {}

std::vector<std::string> scenario_violations(const Scenario& s) {
    std::vector<std::string> out;

    if (!(s.bus_demand_w > 0.0)) out.push_back("bus_demand_w: must be > 0");
    if (!(s.mission_duration_years > 0.0)) out.push_back("mission_duration_years: must be > 0");

    if (!(s.heartbeat.interval_s > 0.0)) out.push_back("heartbeat.interval_s: must be > 0");
    if (s.heartbeat.miss_threshold < 1) out.push_back("heartbeat.miss_threshold: must be >= 1");
    if (!(s.heartbeat.drop_probability >= 0.0 && s.heartbeat.drop_probability < 1.0)) {
        out.push_back("heartbeat.drop_probability: must be in [0, 1)");
    }

    const auto& a = s.architecture;
    if (a.kind == ArchitectureKind::Sspare) {
        if (a.n_modules < 1) out.push_back("architecture.n_modules: must be >= 1");
        if (a.n_spares < 0) out.push_back("architecture.n_spares: must be >= 0");
        if (a.n_spares > a.n_modules) {
            std::ostringstream oss;
            oss << "architecture.n_spares: must be <= n_modules (" << a.n_spares << " > "
                << a.n_modules << ")";
            out.push_back(oss.str());
        }
        for (std::size_t i = 0; i < a.resupply_schedule.size(); ++i) {
            const auto& r = a.resupply_schedule[i];
            if (!(r.year >= 0.0) || r.module_count < 1) {
                std::ostringstream oss;
                oss << "architecture.resupply_schedule[" << i
                    << "]: year must be >= 0 and module_count >= 1";
                out.push_back(oss.str());
            }
        }
    }
    if (a.kind == ArchitectureKind::ServicerExtended) {
        if (!(a.annual_cost_usd >= 0.0)) out.push_back("architecture.annual_cost_usd: must be >= 0");
        if (!(a.extension_years >= 0.0)) out.push_back("architecture.extension_years: must be >= 0");
        if (!(a.service_epoch_years >= 0.0)) {
            out.push_back("architecture.service_epoch_years: must be >= 0");
        }
    }

    for (int i = 0; i < 3; ++i) {
        if (!(s.satellite_dims_m[i] > 0.0)) {
            std::ostringstream oss;
            oss << "satellite_dims_m[" << i << "]: must be > 0";
            out.push_back(oss.str());
        }
    }
    if (!(s.base_module_mass_kg > 0.0)) out.push_back("base_module_mass_kg: must be > 0");
    if (!(s.base_module_cost_usd >= 0.0)) out.push_back("base_module_cost_usd: must be >= 0");

    if (!(s.sim.move_duration_s > 0.0)) out.push_back("sim.move_duration_s: must be > 0");
    if (!(s.sim.unloader_phase_duration_s > 0.0)) {
        out.push_back("sim.unloader_phase_duration_s: must be > 0");
    }
    if (!(s.sim.rod_overtravel_m >= 0.0)) out.push_back("sim.rod_overtravel_m: must be >= 0");
    if (!(s.sim.rod_half_span_m >= s.module.edge_length_m / 2.0)) {
        out.push_back("sim.rod_half_span_m: must be >= edge_length_m / 2");
    }
    if (!(s.sim.open_circuit_fraction >= 0.0 && s.sim.open_circuit_fraction <= 1.0)) {
        out.push_back("sim.open_circuit_fraction: must be in [0, 1]");
    }
    if (!(s.sim.nonresponsive_fraction >= 0.0 && s.sim.nonresponsive_fraction <= 1.0)) {
        out.push_back("sim.nonresponsive_fraction: must be in [0, 1]");
    }
    if (!(s.sim.battery_temp_max_k > s.sim.battery_temp_min_k)) {
        out.push_back("sim.battery_temp_max_k: must be > battery_temp_min_k");
    }

    auto module_issues = validate(s.module, "module.");
    out.insert(out.end(), module_issues.begin(), module_issues.end());
    auto hazard_issues = validate(s.hazard, "hazard.");
    out.insert(out.end(), hazard_issues.begin(), hazard_issues.end());
    return out;
}

Scenario validate_scenario(const Scenario& s) {
    auto violations = scenario_violations(s);
    if (!violations.empty()) throw InvalidScenario(std::move(violations));
    return s;
}

}  // namespace sspare
