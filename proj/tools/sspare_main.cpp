#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sspare/config_io.hpp"
#include "sspare/planner.hpp"
#include "sspare/report.hpp"
#include "sspare/reliability.hpp"
#include "sspare/sim.hpp"

namespace {

using namespace sspare;

std::string resolve_scenario_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("SSPARE_DEFAULT_SCENARIO"); env && *env) return env;
    throw ConfigError("no scenario given: pass --scenario or set SSPARE_DEFAULT_SCENARIO");
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        write_text_file(out_path, content);
    }
}

int cmd_size(const std::string& scenario_flag, const std::string& out, const std::string& format) {
    const Scenario scenario = load_scenario_file(resolve_scenario_path(scenario_flag));
    const SizingReport report = make_sizing_report(scenario, FairingProfile::reference(),
                                                   ComparisonRow::traditional_baseline());
    emit(out, render_sizing(report, parse_format(format)));
    return 0;
}

int cmd_plan(const std::string& target_path, const std::string& replay_path,
             const std::string& out) {
    const ShapeSpec shape = parse_shape(read_text_file(target_path));

    Plan plan;
    if (!replay_path.empty()) {
        plan = parse_plan(read_text_file(replay_path));
    } else {
        std::vector<ModuleId> stack;
        const int total =
            static_cast<int>(shape.right_targets.size() + shape.left_targets.size());
        for (int i = 1; i <= total; ++i) stack.push_back(i);
        plan = assembly_plan(shape.start, shape.right_targets, shape.left_targets, stack);
        if (out.empty()) {
            std::cout << serialize_plan(plan);
        } else {
            write_text_file(out, serialize_plan(plan));
        }
    }

    // Replay verification: the plan must reproduce exactly the target cells.
    const Lattice final_lattice = validate_plan(shape.start, plan);
    std::set<Cell> expected(shape.right_targets.begin(), shape.right_targets.end());
    expected.insert(shape.left_targets.begin(), shape.left_targets.end());
    std::set<Cell> got;
    for (const auto& [cell, id] : final_lattice.occupancy()) got.insert(cell);
    if (got == expected) {
        std::cout << "replay: PASS (" << plan.size() << " steps, " << got.size()
                  << " modules placed)\n";
        return 0;
    }
    std::cerr << "replay: FAIL (final occupancy does not match the target shape)\n";
    return 1;
}

int cmd_simulate(const std::string& scenario_flag, std::uint64_t seed, int replicas,
                 const std::string& out, const std::string& format, bool event_log, int threads) {
    if (replicas < 1) throw ConfigError("--replicas must be >= 1");
    if (out.empty()) throw ConfigError("simulate requires --out");
    const Scenario scenario = load_scenario_file(resolve_scenario_path(scenario_flag));

    ReplicaOptions options;
    options.event_log = event_log;
    const MonteCarloAggregate agg = run_monte_carlo(scenario, replicas, seed, threads, options);

    const OutputFormat f = parse_format(format);
    if (f == OutputFormat::Csv) {
        write_text_file(out, render_aggregate_csv(agg));
    } else {
        write_text_file(out, render_aggregate_json(agg));
    }

    if (event_log) {
        // Event logs are per replica; rerun the first replica to emit one,
        // along with its telemetry capture.
        ReplicaOptions log_options;
        log_options.event_log = true;
        log_options.telemetry = true;
        const RandomStream root(seed);
        const ReplicaResult first = run_replica(scenario, root.split(0).seed(), log_options);
        std::string log_text;
        for (const auto& line : first.event_log) log_text += line + "\n";
        write_text_file(out + ".events.txt", log_text);
        std::string telemetry_text;
        for (const auto& line : first.telemetry) telemetry_text += line + "\n";
        write_text_file(out + ".telemetry.csv", telemetry_text);
    }
    return 0;
}

int cmd_compare(const std::vector<std::string>& scenario_paths, std::uint64_t seed, int replicas,
                const std::string& out, const std::string& format, int threads) {
    if (replicas < 1) throw ConfigError("--replicas must be >= 1");
    if (out.empty()) throw ConfigError("compare requires --out");
    if (scenario_paths.empty()) throw ConfigError("compare requires at least one --scenario");

    std::vector<Scenario> scenarios;
    scenarios.reserve(scenario_paths.size());
    for (const auto& p : scenario_paths) scenarios.push_back(load_scenario_file(p));

    const ComparisonReport report = compare_architectures(
        scenarios, replicas, seed, ComparisonRow::traditional_baseline(), threads);

    switch (parse_format(format)) {
        case OutputFormat::Markdown:
            write_text_file(out, render_comparison_markdown(report, true));
            break;
        case OutputFormat::Csv:
            write_text_file(out, render_comparison_csv(report, true));
            break;
        case OutputFormat::Json:
            write_text_file(out, render_comparison_json(report));
            break;
    }
    return 0;
}

int cmd_curve(const std::string& scenario_flag, const std::string& out, int resolution) {
    const Scenario scenario = load_scenario_file(resolve_scenario_path(scenario_flag));
    const auto curve =
        reliability_curve(scenario.hazard, scenario.mission_duration_years, resolution);
    emit(out, render_curve_csv(curve));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mission sizing, pivoting-assembly planning and lifetime simulation for a "
                 "modular self-servicing satellite power system"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::vector<std::string> scenario_paths;
    std::string out_path;
    std::string format = "md";
    std::string target_path;
    std::string replay_path;
    std::uint64_t seed = 1;
    int replicas = 1000;
    int threads = 1;
    int resolution = 300;
    bool event_log = false;

    auto* size = app.add_subcommand("size", "Module, stack and comparison-table sizing");
    size->add_option("--scenario", scenario_path, "Scenario file");
    size->add_option("--out", out_path, "Output path (stdout when omitted)");
    size->add_option("--format", format, "csv, json or md")->capture_default_str();

    auto* plan = app.add_subcommand("plan", "Assembly planning for an ASCII target shape");
    plan->add_option("--target", target_path, "Target shape file")->required();
    plan->add_option("--replay", replay_path, "Validate an existing plan file instead");
    plan->add_option("--out", out_path, "Plan output path");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo mission simulation");
    simulate->add_option("--scenario", scenario_path, "Scenario file");
    simulate->add_option("--seed", seed, "Base random seed")->capture_default_str();
    simulate->add_option("--replicas", replicas, "Replica count")->capture_default_str();
    simulate->add_option("--out", out_path, "Output path")->required();
    simulate->add_option("--format", format, "csv or json")->capture_default_str();
    simulate->add_option("--threads", threads, "Worker threads")->capture_default_str();
    simulate->add_flag("--event-log", event_log, "Also write the first replica's event log");

    auto* compare = app.add_subcommand("compare", "Architecture comparison table");
    compare->add_option("--scenario", scenario_paths, "Scenario file (repeatable)");
    compare->add_option("--seed", seed, "Base random seed")->capture_default_str();
    compare->add_option("--replicas", replicas, "Replica count")->capture_default_str();
    compare->add_option("--out", out_path, "Output path")->required();
    compare->add_option("--format", format, "csv, json or md")->capture_default_str();
    compare->add_option("--threads", threads, "Worker threads")->capture_default_str();

    auto* curve = app.add_subcommand("curve", "Closed-form system survival curve (CSV)");
    curve->add_option("--scenario", scenario_path, "Scenario file");
    curve->add_option("--out", out_path, "Output path (stdout when omitted)");
    curve->add_option("--resolution", resolution, "Grid intervals")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (size->parsed()) {
            if (format == "md" && !size->count("--format")) format = "md";
            return cmd_size(scenario_path, out_path, format);
        }
        if (plan->parsed()) return cmd_plan(target_path, replay_path, out_path);
        if (simulate->parsed()) {
            if (!simulate->count("--format")) format = "json";
            return cmd_simulate(scenario_path, seed, replicas, out_path, format, event_log,
                                threads);
        }
        if (compare->parsed()) {
            return cmd_compare(scenario_paths, seed, replicas, out_path, format, threads);
        }
        if (curve->parsed()) return cmd_curve(scenario_path, out_path, resolution);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
