#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sspare/errors.hpp"
#include "sspare/lattice.hpp"
#include "sspare/module_spec.hpp"

namespace sspare {

class PowerError : public Error {
public:
    enum class Kind { NotAdjacent, NotFailed, UnknownNode };
    PowerError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Three-valued conduction model of the module string: Generating nodes
// conduct and produce, FailedShorted and Bypassed nodes conduct but produce
// nothing, FailedOpen nodes block the string. Base modules are roots that
// feed the bus and never produce.
enum class NodeState { Generating, FailedOpen, FailedShorted, Bypassed };
const char* to_string(NodeState s);

class PowerGraph {
public:
    PowerGraph() = default;

    void add_node(ModuleId id, NodeState state, bool is_root = false);
    void remove_node(ModuleId id);
    void add_edge(ModuleId a, ModuleId b);
    void set_state(ModuleId id, NodeState state);

    bool has_node(ModuleId id) const { return states_.count(id) > 0; }
    NodeState state(ModuleId id) const;
    bool adjacent(ModuleId a, ModuleId b) const;
    const std::map<ModuleId, NodeState>& nodes() const { return states_; }
    const std::vector<ModuleId>& roots() const { return roots_; }
    const std::set<ModuleId>& neighbors(ModuleId id) const;

    // Graph with both base roots and electrical edges taken from lattice
    // adjacency; every deployed module starts Generating.
    static PowerGraph from_lattice(const Lattice& lattice);

    // Adds a freshly placed module and its docking edges (lattice neighbors
    // plus any adjacent base pad).
    void dock_module(ModuleId id, const Cell& cell, const Lattice& lattice);

private:
    std::map<ModuleId, NodeState> states_;
    std::map<ModuleId, std::set<ModuleId>> edges_;
    std::vector<ModuleId> roots_;
};

// Sum of module output over Generating nodes with a conduction path to a
// root. FailedOpen nodes (including failed roots) do not conduct.
double net_output(const PowerGraph& g, const ModuleSpec& spec, double age_years);

// Marks `failed` as Bypassed. The initiator must be docked beside it and the
// target must actually be failed.
PowerGraph apply_bypass(const PowerGraph& g, ModuleId failed, ModuleId initiator);

struct SensorReport {
    ModuleId module_id = 0;
    double timestamp_s = 0.0;
    double temperature_k = 293.0;
    bool attitude_ok = true;
    bool proximity_ok = true;
    bool bus_voltage_ok = true;
};

std::string to_csv_line(const SensorReport& r);
std::string sensor_report_csv_header();

// Central heartbeat monitor: modules report every interval; a module whose
// last report is older than miss_threshold * interval at a tick is flagged.
class HealthMonitor {
public:
    HealthMonitor() = default;
    HealthMonitor(double interval_s, int miss_threshold);

    double interval_s() const { return interval_s_; }
    int miss_threshold() const { return miss_threshold_; }
    const std::map<ModuleId, double>& last_received() const { return last_received_; }
    const std::set<ModuleId>& flagged() const { return flagged_; }
    bool is_flagged(ModuleId id) const { return flagged_.count(id) > 0; }

    void register_module(ModuleId id, double now_s);
    void deregister_module(ModuleId id);

    // Processes one tick: ingests the reports received this interval, then
    // flags every unflagged module silent for strictly more than
    // miss_threshold * interval. Returns newly flagged ids in ascending order.
    std::vector<ModuleId> tick(double now_s, const std::vector<SensorReport>& received);

    // Records a report for one module without running flag evaluation. Used
    // to catch a module up over uneventful stretches under lossless
    // transport.
    void mark_heard(ModuleId id, double tick_time_s);

private:
    double interval_s_ = 10.0;
    int miss_threshold_ = 3;
    std::map<ModuleId, double> last_received_;
    std::set<ModuleId> flagged_;
};

enum class Diagnosis { Healthy, NonResponsive, ArrayDamage, BatteryDamage };
const char* to_string(Diagnosis d);

struct DiagnosisConfig {
    double battery_temp_min_k = 273.0;
    double battery_temp_max_k = 313.0;
};

// Classification precedence: NonResponsive > BatteryDamage > ArrayDamage.
// A flagged module is NonResponsive regardless of its last report.
Diagnosis diagnose(const HealthMonitor& monitor, const SensorReport& latest,
                   const DiagnosisConfig& config);

}  // namespace sspare
