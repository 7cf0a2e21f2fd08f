#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sspare/fairing.hpp"
#include "sspare/scenario.hpp"
#include "sspare/sim.hpp"
#include "sspare/sizing.hpp"

namespace sspare {

enum class OutputFormat { Csv, Json, Markdown };
OutputFormat parse_format(const std::string& name);

// Per-scenario sizing summary (module figures, stack capacity, mission
// delta, static comparison rows).
struct SizingReport {
    double module_power_w = 0.0;
    double module_mass_kg = 0.0;
    double module_cost_usd = 0.0;
    int modules_for_demand = 0;
    int stack_capacity = 0;
    bool has_delta = false;
    MissionDelta delta;
    std::vector<ComparisonRow> table;
};

SizingReport make_sizing_report(const Scenario& scenario, const FairingProfile& fairing,
                                const ComparisonRow& baseline);

std::string render_sizing(const SizingReport& r, OutputFormat format);

// Comparison table renderers. The five characteristic columns match the
// sizing table; `include_simulated` appends Monte Carlo lifetime columns.
std::string render_comparison_markdown(const ComparisonReport& report, bool include_simulated);
std::string render_comparison_csv(const ComparisonReport& report, bool include_simulated);
std::string render_comparison_json(const ComparisonReport& report);

std::string render_rows_markdown(const std::vector<ComparisonRow>& rows);
std::string render_rows_csv(const std::vector<ComparisonRow>& rows);

std::string render_aggregate_json(const MonteCarloAggregate& a);
std::string render_aggregate_csv(const MonteCarloAggregate& a);

std::string render_curve_csv(const std::vector<std::pair<double, double>>& curve);

// Table-cell formatting used by the renderers (exposed for tests).
std::string format_dims(const std::array<double, 3>& dims);
std::string format_power_kw(double watts);
std::string format_cost_mm(double usd);
std::string format_mass_kg(double kg);
std::string format_life(double years, bool open_ended);

}  // namespace sspare
