#include "sspare/power_net.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "sspare/sizing.hpp"

namespace sspare {

const char* to_string(NodeState s) {
    switch (s) {
        case NodeState::Generating: return "generating";
        case NodeState::FailedOpen: return "failed_open";
        case NodeState::FailedShorted: return "failed_shorted";
        case NodeState::Bypassed: return "bypassed";
    }
    return "?";
}

const char* to_string(Diagnosis d) {
    switch (d) {
        case Diagnosis::Healthy: return "healthy";
        case Diagnosis::NonResponsive: return "non_responsive";
        case Diagnosis::ArrayDamage: return "array_damage";
        case Diagnosis::BatteryDamage: return "battery_damage";
    }
    return "?";
}

void PowerGraph::add_node(ModuleId id, NodeState state, bool is_root) {
    states_[id] = state;
    edges_.try_emplace(id);
    if (is_root) roots_.push_back(id);
}

void PowerGraph::remove_node(ModuleId id) {
    states_.erase(id);
    for (ModuleId n : edges_[id]) edges_[n].erase(id);
    edges_.erase(id);
    roots_.erase(std::remove(roots_.begin(), roots_.end(), id), roots_.end());
}

void PowerGraph::add_edge(ModuleId a, ModuleId b) {
    if (!has_node(a) || !has_node(b)) {
        throw PowerError(PowerError::Kind::UnknownNode, "edge endpoint is not a node");
    }
    edges_[a].insert(b);
    edges_[b].insert(a);
}

void PowerGraph::set_state(ModuleId id, NodeState state) {
    auto it = states_.find(id);
    if (it == states_.end()) {
        throw PowerError(PowerError::Kind::UnknownNode,
                         "node " + std::to_string(id) + " does not exist");
    }
    it->second = state;
}

NodeState PowerGraph::state(ModuleId id) const {
    auto it = states_.find(id);
    if (it == states_.end()) {
        throw PowerError(PowerError::Kind::UnknownNode,
                         "node " + std::to_string(id) + " does not exist");
    }
    return it->second;
}

bool PowerGraph::adjacent(ModuleId a, ModuleId b) const {
    auto it = edges_.find(a);
    return it != edges_.end() && it->second.count(b) > 0;
}

const std::set<ModuleId>& PowerGraph::neighbors(ModuleId id) const {
    static const std::set<ModuleId> empty;
    auto it = edges_.find(id);
    return it == edges_.end() ? empty : it->second;
}

PowerGraph PowerGraph::from_lattice(const Lattice& lattice) {
    PowerGraph g;
    const auto& bases = lattice.base_cells();
    if (!bases.empty()) g.add_node(kBaseRightId, NodeState::Generating, true);
    if (bases.size() > 1) g.add_node(kBaseLeftId, NodeState::Generating, true);
    for (const auto& [cell, id] : lattice.occupancy()) {
        g.add_node(id, NodeState::Generating);
    }
    for (const auto& [cell, id] : lattice.occupancy()) {
        for (const auto& d : kNeighborSteps) {
            const Cell n = cell + d;
            if (auto other = lattice.module_at(n); other && *other > id) {
                g.add_edge(id, *other);
            }
            if (!bases.empty() && n == bases[0]) g.add_edge(id, kBaseRightId);
            if (bases.size() > 1 && n == bases[1]) g.add_edge(id, kBaseLeftId);
        }
    }
    return g;
}

void PowerGraph::dock_module(ModuleId id, const Cell& cell, const Lattice& lattice) {
    if (!has_node(id)) add_node(id, NodeState::Generating);
    const auto& bases = lattice.base_cells();
    // A module parked on a base pad docks to the base module beneath it.
    if (!bases.empty() && cell == bases[0]) add_edge(id, kBaseRightId);
    if (bases.size() > 1 && cell == bases[1]) add_edge(id, kBaseLeftId);
    for (const auto& d : kNeighborSteps) {
        const Cell n = cell + d;
        if (auto other = lattice.module_at(n); other && *other != id) add_edge(id, *other);
        if (!bases.empty() && n == bases[0]) add_edge(id, kBaseRightId);
        if (bases.size() > 1 && n == bases[1]) add_edge(id, kBaseLeftId);
    }
}

double net_output(const PowerGraph& g, const ModuleSpec& spec, double age_years) {
    auto conducts = [&](ModuleId id) { return g.state(id) != NodeState::FailedOpen; };

    std::set<ModuleId> reached;
    std::queue<ModuleId> frontier;
    for (ModuleId root : g.roots()) {
        if (conducts(root) && !reached.count(root)) {
            reached.insert(root);
            frontier.push(root);
        }
    }
    while (!frontier.empty()) {
        const ModuleId cur = frontier.front();
        frontier.pop();
        for (ModuleId n : g.neighbors(cur)) {
            if (!reached.count(n) && conducts(n)) {
                reached.insert(n);
                frontier.push(n);
            }
        }
    }

    const double per_module = module_power(spec, age_years);
    double total = 0.0;
    for (ModuleId id : reached) {
        if (id < 0) continue;  // base modules do not generate
        if (g.state(id) == NodeState::Generating) total += per_module;
    }
    return total;
}

PowerGraph apply_bypass(const PowerGraph& g, ModuleId failed, ModuleId initiator) {
    if (!g.has_node(failed) || !g.has_node(initiator)) {
        throw PowerError(PowerError::Kind::UnknownNode, "bypass endpoint is not a node");
    }
    if (!g.adjacent(failed, initiator)) {
        throw PowerError(PowerError::Kind::NotAdjacent,
                         "initiator " + std::to_string(initiator) + " is not docked to " +
                             std::to_string(failed));
    }
    const NodeState state = g.state(failed);
    if (state != NodeState::FailedOpen && state != NodeState::FailedShorted) {
        throw PowerError(PowerError::Kind::NotFailed,
                         "module " + std::to_string(failed) + " is not failed");
    }
    PowerGraph out = g;
    out.set_state(failed, NodeState::Bypassed);
    return out;
}

std::string sensor_report_csv_header() {
    return "module_id,timestamp_s,temperature_k,attitude_ok,proximity_ok,bus_voltage_ok";
}

std::string to_csv_line(const SensorReport& r) {
    std::ostringstream oss;
    oss << r.module_id << "," << r.timestamp_s << "," << r.temperature_k << ","
        << (r.attitude_ok ? 1 : 0) << "," << (r.proximity_ok ? 1 : 0) << ","
        << (r.bus_voltage_ok ? 1 : 0);
    return oss.str();
}

HealthMonitor::HealthMonitor(double interval_s, int miss_threshold)
    : interval_s_(interval_s), miss_threshold_(miss_threshold) {
    if (!(interval_s > 0.0)) throw DomainError("heartbeat interval must be > 0");
    if (miss_threshold < 1) throw DomainError("miss threshold must be >= 1");
}

void HealthMonitor::register_module(ModuleId id, double now_s) { last_received_[id] = now_s; }

void HealthMonitor::deregister_module(ModuleId id) {
    last_received_.erase(id);
    flagged_.erase(id);
}

std::vector<ModuleId> HealthMonitor::tick(double now_s, const std::vector<SensorReport>& received) {
    for (const auto& r : received) {
        auto it = last_received_.find(r.module_id);
        if (it == last_received_.end()) continue;  // unknown senders are ignored
        if (r.timestamp_s > it->second) it->second = r.timestamp_s;
    }
    std::vector<ModuleId> newly;
    const double limit = static_cast<double>(miss_threshold_) * interval_s_;
    for (const auto& [id, last] : last_received_) {
        if (flagged_.count(id)) continue;
        if (now_s - last > limit) {
            flagged_.insert(id);
            newly.push_back(id);
        }
    }
    return newly;
}

void HealthMonitor::mark_heard(ModuleId id, double tick_time_s) {
    auto it = last_received_.find(id);
    if (it == last_received_.end() || flagged_.count(id)) return;
    if (tick_time_s > it->second) it->second = tick_time_s;
}

Diagnosis diagnose(const HealthMonitor& monitor, const SensorReport& latest,
                   const DiagnosisConfig& config) {
    if (monitor.is_flagged(latest.module_id)) return Diagnosis::NonResponsive;
    if (latest.temperature_k < config.battery_temp_min_k ||
        latest.temperature_k > config.battery_temp_max_k) {
        return Diagnosis::BatteryDamage;
    }
    if (!latest.bus_voltage_ok) return Diagnosis::ArrayDamage;
    return Diagnosis::Healthy;
}

}  // namespace sspare
