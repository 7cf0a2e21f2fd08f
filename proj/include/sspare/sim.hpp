#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sspare/lattice.hpp"
#include "sspare/planner.hpp"
#include "sspare/scenario.hpp"
#include "sspare/sizing.hpp"

namespace sspare {

inline constexpr double kSecondsPerYear = 365.25 * 86400.0;

// Deployed-module lifecycle, tracked for conservation checks and reporting.
enum class SsmpPhase { Stowed, InTransit, Deployed, Failed, Bypassed };
const char* to_string(SsmpPhase p);

struct ReplicaOptions {
    bool event_log = false;
    bool telemetry = false;
    bool check_invariants = false;
};

struct ReplicaResult {
    double power_limited_years = 0.0;
    bool power_limited_censored = false;  // survived the horizon power-healthy
    double mission_years = 0.0;
    bool mission_censored = false;
    int replacements_used = 0;
    int spares_remaining = 0;
    int recovery_failures = 0;
    std::vector<std::pair<double, double>> power_timeline;  // (years, watts)
    std::vector<std::string> event_log;
    std::vector<std::string> telemetry;
};

// Runs one deterministic mission replica. The replica consumes the stream in
// a fixed order: one failure draw per enabled subsystem (declaration order)
// at start, then per power failure the submode, target pick, presentation
// draws and the next arrival.
ReplicaResult run_replica(const Scenario& scenario, std::uint64_t seed,
                          const ReplicaOptions& options = {});

struct MonteCarloAggregate {
    int replicas = 0;
    double mean_power_limited_years = 0.0;
    double se_power_limited_years = 0.0;
    double mean_mission_years = 0.0;
    double se_mission_years = 0.0;
    double power_censored_fraction = 0.0;
    double mission_censored_fraction = 0.0;
    double mean_replacements = 0.0;
    int recovery_failures = 0;
    std::map<int, int> replacement_histogram;               // replacements -> count
    std::vector<std::pair<double, double>> survival_curve;  // (years, fraction alive)
};

// Aggregates `replicas` independent replicas on split streams. The reduction
// is a fixed-order pass over replica indices, so results do not depend on
// how the replicas were scheduled; `threads` > 1 runs them concurrently.
MonteCarloAggregate run_monte_carlo(const Scenario& scenario, int replicas,
                                    std::uint64_t base_seed, int threads = 1,
                                    const ReplicaOptions& options = {});

struct ComparisonEntry {
    ComparisonRow statics;
    MonteCarloAggregate lifetime;
};

struct ComparisonReport {
    std::vector<ComparisonEntry> rows;
};

// Static sizing columns merged with Monte Carlo lifetime statistics; every
// architecture is simulated with the same base seed for variance reduction.
ComparisonReport compare_architectures(const std::vector<Scenario>& scenarios, int replicas,
                                       std::uint64_t base_seed,
                                       const ComparisonRow& baseline, int threads = 1);

// Deployment geometry derived from a scenario: bus footprint cells, the two
// base pads, and straight chain targets extending outward per side.
struct DeploymentGeometry {
    Lattice lattice;  // base pads + body, no modules
    std::vector<Cell> right_targets;
    std::vector<Cell> left_targets;
};

DeploymentGeometry deployment_geometry(const Scenario& scenario, int deployed_count);

}  // namespace sspare
