#include "sspare/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "sspare/errors.hpp"

namespace sspare {

using Json = nlohmann::ordered_json;

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    if (name == "md") return OutputFormat::Markdown;
    throw DomainError("unknown output format: " + name + " (expected csv, json or md)");
}

namespace {

std::string trim_decimal(double value, int decimals) {
    std::ostringstream oss;
    oss.setf(std::ios::fixed);
    oss.precision(decimals);
    oss << value;
    std::string s = oss.str();
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    return s;
}

std::string fixed(double value, int decimals) {
    std::ostringstream oss;
    oss.setf(std::ios::fixed);
    oss.precision(decimals);
    oss << value;
    return oss.str();
}

}  // namespace

std::string format_dims(const std::array<double, 3>& dims) {
    return trim_decimal(std::round(dims[0] * 10.0) / 10.0, 1) + " / " +
           trim_decimal(std::round(dims[1] * 10.0) / 10.0, 1) + " / " +
           trim_decimal(std::round(dims[2] * 10.0) / 10.0, 1);
}

std::string format_power_kw(double watts) {
    return trim_decimal(std::round(watts / 100.0) / 10.0, 1);
}

std::string format_cost_mm(double usd) {
    return std::to_string(static_cast<long long>(std::llround(usd / 1e6)));
}

std::string format_mass_kg(double kg) {
    return std::to_string(static_cast<long long>(std::llround(kg)));
}

std::string format_life(double years, bool open_ended) {
    std::string s = trim_decimal(std::round(years * 10.0) / 10.0, 1);
    if (open_ended) s += "+";
    return s;
}

SizingReport make_sizing_report(const Scenario& scenario, const FairingProfile& fairing,
                                const ComparisonRow& baseline) {
    SizingReport r;
    r.module_power_w = module_power(scenario.module, 0.0);
    r.module_mass_kg = module_mass(scenario.module);
    r.module_cost_usd = module_cost(scenario.module);
    r.modules_for_demand = modules_required(scenario.bus_demand_w, scenario.module);
    r.stack_capacity = stack_capacity(fairing, scenario.satellite_height_m(), scenario.module,
                                      scenario.sim.rod_half_span_m, scenario.sim.rod_overtravel_m);
    if (scenario.architecture.kind == ArchitectureKind::Sspare) {
        r.has_delta = true;
        r.delta = mission_delta(scenario);
    }

    std::vector<Scenario> rows{Scenario::default_traditional(),
                               Scenario::default_servicer_extended(), scenario};
    if (scenario.architecture.kind != ArchitectureKind::Sspare) {
        rows.back() = Scenario::default_sspare();
    }
    r.table = build_comparison_table(rows, baseline);
    return r;
}

std::string render_rows_markdown(const std::vector<ComparisonRow>& rows) {
    std::ostringstream oss;
    oss << "| System characteristics |";
    for (const auto& row : rows) oss << " " << row.label << " |";
    oss << "\n|---|";
    for (std::size_t i = 0; i < rows.size(); ++i) oss << "---|";
    oss << "\n| Main body dimensions (m/m/m) |";
    for (const auto& row : rows) oss << " " << format_dims(row.main_body_dims_m) << " |";
    oss << "\n| Maximum power (kW) |";
    for (const auto& row : rows) oss << " " << format_power_kw(row.max_power_w) << " |";
    oss << "\n| Development & launch cost ($MM) |";
    for (const auto& row : rows) oss << " " << format_cost_mm(row.dev_launch_cost_usd) << " |";
    oss << "\n| Launch mass (kg) |";
    for (const auto& row : rows) oss << " " << format_mass_kg(row.launch_mass_kg) << " |";
    oss << "\n| Life expectancy (years) |";
    for (const auto& row : rows) {
        oss << " " << format_life(row.life_expectancy_years, row.life_open_ended) << " |";
    }
    oss << "\n";
    return oss.str();
}

std::string render_rows_csv(const std::vector<ComparisonRow>& rows) {
    std::ostringstream oss;
    oss << "label,length_m,width_m,height_m,max_power_kw,dev_launch_cost_mm,launch_mass_kg,"
           "life_expectancy_years,life_open_ended\n";
    for (const auto& row : rows) {
        oss << row.label << "," << fixed(row.main_body_dims_m[0], 1) << ","
            << fixed(row.main_body_dims_m[1], 1) << "," << fixed(row.main_body_dims_m[2], 1) << ","
            << format_power_kw(row.max_power_w) << "," << format_cost_mm(row.dev_launch_cost_usd)
            << "," << format_mass_kg(row.launch_mass_kg) << ","
            << trim_decimal(row.life_expectancy_years, 1) << "," << (row.life_open_ended ? 1 : 0)
            << "\n";
    }
    return oss.str();
}

std::string render_sizing(const SizingReport& r, OutputFormat format) {
    if (format == OutputFormat::Json) {
        Json j;
        j["module_power_w"] = r.module_power_w;
        j["module_mass_kg"] = r.module_mass_kg;
        j["module_cost_usd"] = r.module_cost_usd;
        j["modules_for_demand"] = r.modules_for_demand;
        j["stack_capacity"] = r.stack_capacity;
        if (r.has_delta) {
            j["mission_delta"] = {{"added_cost_usd", r.delta.added_cost_usd},
                                  {"added_mass_kg", r.delta.added_mass_kg},
                                  {"added_height_m", r.delta.added_height_m}};
        }
        Json rows = Json::array();
        for (const auto& row : r.table) {
            rows.push_back({{"label", row.label},
                            {"length_m", row.main_body_dims_m[0]},
                            {"width_m", row.main_body_dims_m[1]},
                            {"height_m", row.main_body_dims_m[2]},
                            {"max_power_w", row.max_power_w},
                            {"dev_launch_cost_usd", row.dev_launch_cost_usd},
                            {"launch_mass_kg", row.launch_mass_kg},
                            {"life_expectancy_years", row.life_expectancy_years},
                            {"life_open_ended", row.life_open_ended}});
        }
        j["comparison"] = std::move(rows);
        return j.dump(2) + "\n";
    }
    if (format == OutputFormat::Csv) {
        std::ostringstream oss;
        oss << "key,value\n";
        oss << "module_power_w," << fixed(r.module_power_w, 4) << "\n";
        oss << "module_mass_kg," << fixed(r.module_mass_kg, 4) << "\n";
        oss << "module_cost_usd," << fixed(r.module_cost_usd, 2) << "\n";
        oss << "modules_for_demand," << r.modules_for_demand << "\n";
        oss << "stack_capacity," << r.stack_capacity << "\n";
        if (r.has_delta) {
            oss << "added_cost_usd," << fixed(r.delta.added_cost_usd, 2) << "\n";
            oss << "added_mass_kg," << fixed(r.delta.added_mass_kg, 4) << "\n";
            oss << "added_height_m," << fixed(r.delta.added_height_m, 4) << "\n";
        }
        oss << "\n" << render_rows_csv(r.table);
        return oss.str();
    }

    std::ostringstream oss;
    oss << "# Sizing summary\n\n";
    oss << "- Module power (BOL): " << fixed(r.module_power_w, 2) << " W\n";
    oss << "- Module mass: " << fixed(r.module_mass_kg, 2) << " kg\n";
    oss << "- Module cost: $" << fixed(r.module_cost_usd, 0) << "\n";
    oss << "- Modules required for bus demand: " << r.modules_for_demand << "\n";
    oss << "- Stack capacity in the reference fairing: " << r.stack_capacity << "\n";
    if (r.has_delta) {
        oss << "- Retrofit delta: $" << fixed(r.delta.added_cost_usd, 0) << ", "
            << fixed(r.delta.added_mass_kg, 1) << " kg, +" << fixed(r.delta.added_height_m, 2)
            << " m stack\n";
    }
    oss << "\n" << render_rows_markdown(r.table);
    return oss.str();
}

namespace {

std::vector<ComparisonRow> static_rows(const ComparisonReport& report) {
    std::vector<ComparisonRow> rows;
    rows.reserve(report.rows.size());
    for (const auto& entry : report.rows) rows.push_back(entry.statics);
    return rows;
}

}  // namespace

std::string render_comparison_markdown(const ComparisonReport& report, bool include_simulated) {
    std::ostringstream oss;
    oss << render_rows_markdown(static_rows(report));
    if (include_simulated) {
        oss << "\n| Simulated lifetime | mean (y) | std. error (y) | censored | mean "
               "replacements |\n|---|---|---|---|---|\n";
        for (const auto& entry : report.rows) {
            oss << "| " << entry.statics.label << " | " << fixed(entry.lifetime.mean_mission_years, 2)
                << " | " << fixed(entry.lifetime.se_mission_years, 3) << " | "
                << fixed(entry.lifetime.mission_censored_fraction * 100.0, 1) << "% | "
                << fixed(entry.lifetime.mean_replacements, 2) << " |\n";
        }
    }
    return oss.str();
}

std::string render_comparison_csv(const ComparisonReport& report, bool include_simulated) {
    std::ostringstream oss;
    oss << "label,length_m,width_m,height_m,max_power_kw,dev_launch_cost_mm,launch_mass_kg,"
           "life_expectancy_years,life_open_ended";
    if (include_simulated) {
        oss << ",sim_mean_mission_years,sim_se_mission_years,sim_mission_censored_fraction,"
               "sim_mean_power_limited_years,sim_se_power_limited_years,"
               "sim_power_censored_fraction,sim_mean_replacements";
    }
    oss << "\n";
    for (const auto& entry : report.rows) {
        const auto& row = entry.statics;
        oss << row.label << "," << fixed(row.main_body_dims_m[0], 1) << ","
            << fixed(row.main_body_dims_m[1], 1) << "," << fixed(row.main_body_dims_m[2], 1) << ","
            << format_power_kw(row.max_power_w) << "," << format_cost_mm(row.dev_launch_cost_usd)
            << "," << format_mass_kg(row.launch_mass_kg) << ","
            << trim_decimal(row.life_expectancy_years, 1) << "," << (row.life_open_ended ? 1 : 0);
        if (include_simulated) {
            const auto& a = entry.lifetime;
            oss << "," << fixed(a.mean_mission_years, 4) << "," << fixed(a.se_mission_years, 4)
                << "," << fixed(a.mission_censored_fraction, 4) << ","
                << fixed(a.mean_power_limited_years, 4) << ","
                << fixed(a.se_power_limited_years, 4) << "," << fixed(a.power_censored_fraction, 4)
                << "," << fixed(a.mean_replacements, 4);
        }
        oss << "\n";
    }
    return oss.str();
}

namespace {

Json aggregate_to_json(const MonteCarloAggregate& a) {
    Json j;
    j["replicas"] = a.replicas;
    j["mean_power_limited_years"] = a.mean_power_limited_years;
    j["se_power_limited_years"] = a.se_power_limited_years;
    j["mean_mission_years"] = a.mean_mission_years;
    j["se_mission_years"] = a.se_mission_years;
    j["power_censored_fraction"] = a.power_censored_fraction;
    j["mission_censored_fraction"] = a.mission_censored_fraction;
    j["mean_replacements"] = a.mean_replacements;
    j["recovery_failures"] = a.recovery_failures;
    Json hist = Json::array();
    for (const auto& [k, v] : a.replacement_histogram) {
        hist.push_back({{"replacements", k}, {"count", v}});
    }
    j["replacement_histogram"] = std::move(hist);
    Json curve = Json::array();
    for (const auto& [t, s] : a.survival_curve) curve.push_back({{"t_years", t}, {"alive", s}});
    j["survival_curve"] = std::move(curve);
    return j;
}

}  // namespace

std::string render_comparison_json(const ComparisonReport& report) {
    Json rows = Json::array();
    for (const auto& entry : report.rows) {
        const auto& row = entry.statics;
        Json j;
        j["label"] = row.label;
        j["main_body_dims_m"] = {row.main_body_dims_m[0], row.main_body_dims_m[1],
                                 row.main_body_dims_m[2]};
        j["max_power_w"] = row.max_power_w;
        j["dev_launch_cost_usd"] = row.dev_launch_cost_usd;
        j["launch_mass_kg"] = row.launch_mass_kg;
        j["life_expectancy_years"] = row.life_expectancy_years;
        j["life_open_ended"] = row.life_open_ended;
        j["simulated"] = aggregate_to_json(entry.lifetime);
        rows.push_back(std::move(j));
    }
    Json root;
    root["comparison"] = std::move(rows);
    return root.dump(2) + "\n";
}

std::string render_aggregate_json(const MonteCarloAggregate& a) {
    return aggregate_to_json(a).dump(2) + "\n";
}

std::string render_aggregate_csv(const MonteCarloAggregate& a) {
    std::ostringstream oss;
    oss << "key,value\n";
    oss << "replicas," << a.replicas << "\n";
    oss << "mean_power_limited_years," << fixed(a.mean_power_limited_years, 6) << "\n";
    oss << "se_power_limited_years," << fixed(a.se_power_limited_years, 6) << "\n";
    oss << "mean_mission_years," << fixed(a.mean_mission_years, 6) << "\n";
    oss << "se_mission_years," << fixed(a.se_mission_years, 6) << "\n";
    oss << "power_censored_fraction," << fixed(a.power_censored_fraction, 6) << "\n";
    oss << "mission_censored_fraction," << fixed(a.mission_censored_fraction, 6) << "\n";
    oss << "mean_replacements," << fixed(a.mean_replacements, 6) << "\n";
    oss << "recovery_failures," << a.recovery_failures << "\n";
    oss << "\nreplacements,count\n";
    for (const auto& [k, v] : a.replacement_histogram) oss << k << "," << v << "\n";
    oss << "\nt_years,alive_fraction\n";
    for (const auto& [t, s] : a.survival_curve) {
        oss << fixed(t, 4) << "," << fixed(s, 6) << "\n";
    }
    return oss.str();
}

std::string render_curve_csv(const std::vector<std::pair<double, double>>& curve) {
    std::ostringstream oss;
    oss << "t_years,survival\n";
    for (const auto& [t, s] : curve) oss << fixed(t, 6) << "," << fixed(s, 9) << "\n";
    return oss.str();
}

}  // namespace sspare
