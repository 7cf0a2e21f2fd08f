#include "sspare/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <queue>
#include <sstream>
#include <thread>

#include "sspare/power_net.hpp"
#include "sspare/random.hpp"
#include "sspare/reliability.hpp"
#include "sspare/unloader.hpp"

namespace sspare {

const char* to_string(SsmpPhase p) {
    switch (p) {
        case SsmpPhase::Stowed: return "stowed";
        case SsmpPhase::InTransit: return "in_transit";
        case SsmpPhase::Deployed: return "deployed";
        case SsmpPhase::Failed: return "failed";
        case SsmpPhase::Bypassed: return "bypassed";
    }
    return "?";
}

namespace {

std::string fmt_seconds(double t) {
    std::ostringstream oss;
    oss.setf(std::ios::fixed);
    oss.precision(3);
    oss << t;
    return oss.str();
}

// Non-power subsystem failure times, drawn once per replica in declaration
// order right after the first power arrival. Power failures repeat (the
// module fleet keeps operating after a repair), so they are sampled as a
// conditional arrival process instead.
struct SubsystemDraws {
    double first_power_years = std::numeric_limits<double>::infinity();
    double fatal_nonpower_years = std::numeric_limits<double>::infinity();
};

SubsystemDraws draw_initial_failures(const HazardModel& hazard, RandomStream& stream) {
    SubsystemDraws draws;
    for (int i = 0; i < kSubsystemCount; ++i) {
        const auto& sub = hazard.subsystems[i];
        if (!sub.enabled) continue;
        const double t = sample_subsystem_time(sub, hazard.infant, stream);
        if (static_cast<Subsystem>(i) == Subsystem::Power) {
            draws.first_power_years = t;
        } else {
            draws.fatal_nonpower_years = std::min(draws.fatal_nonpower_years, t);
        }
    }
    return draws;
}

double apply_service_extension(double lifetime_years, const Architecture& arch) {
    if (arch.kind != ArchitectureKind::ServicerExtended) return lifetime_years;
    if (lifetime_years >= arch.service_epoch_years) return lifetime_years + arch.extension_years;
    return lifetime_years;
}

ReplicaResult run_static_replica(const Scenario& sc, RandomStream& stream,
                                 const ReplicaOptions& options) {
    // Traditional bus (optionally serviced): the power system is internal,
    // so the first power failure is terminal for power.
    const double horizon = sc.mission_duration_years;
    SubsystemDraws draws = draw_initial_failures(sc.hazard, stream);

    double power = apply_service_extension(draws.first_power_years, sc.architecture);
    double fatal = apply_service_extension(draws.fatal_nonpower_years, sc.architecture);

    ReplicaResult r;
    r.power_limited_censored = power > horizon || fatal < power;
    r.power_limited_years = std::min({power, fatal, horizon});
    r.mission_censored = std::min(power, fatal) > horizon;
    r.mission_years = std::min({power, fatal, horizon});
    r.power_timeline.push_back({0.0, sc.bus_demand_w});
    if (!r.mission_censored) r.power_timeline.push_back({r.mission_years, 0.0});
    if (options.event_log) {
        r.event_log.push_back("t=0.000 seq=0 MissionEnd horizon=" +
                              std::to_string(horizon) + " (static architecture summary)");
    }
    return r;
}

// ----------------------------------------------------------------------
// SSPARE replica: discrete-event loop over deployment, failures, heartbeat
// detection, replacement and resupply.

enum class EventKind {
    UnloadStep,
    MoveStep,
    HeartbeatTick,
    SubsystemFailure,
    ModuleFailure,
    DetectionFlag,
    ReplacementDispatched,
    RecoveryComplete,
    Resupply,
    MissionEnd,
};

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::UnloadStep: return "UnloadStep";
        case EventKind::MoveStep: return "MoveStep";
        case EventKind::HeartbeatTick: return "HeartbeatTick";
        case EventKind::SubsystemFailure: return "SubsystemFailure";
        case EventKind::ModuleFailure: return "ModuleFailure";
        case EventKind::DetectionFlag: return "DetectionFlag";
        case EventKind::ReplacementDispatched: return "ReplacementDispatched";
        case EventKind::RecoveryComplete: return "RecoveryComplete";
        case EventKind::Resupply: return "Resupply";
        case EventKind::MissionEnd: return "MissionEnd";
    }
    return "?";
}

struct SimEvent {
    double t = 0.0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::MissionEnd;

    // payloads (union-of-needs, kept flat)
    Rod rod = Rod::Right;
    bool motion = false;
    UnloaderEvent uevent = UnloaderEvent::Dock;
    ModuleId module = 0;
    Cell cell{};
    Move move{};
    bool is_deploy = false;
    PowerMode power_mode = PowerMode::SolarArray;
    int count = 0;
    bool final_move = false;
};

struct EventOrder {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
        return std::tie(a.t, a.seq) > std::tie(b.t, b.seq);
    }
};

struct FailureRecord {
    PowerMode mode = PowerMode::SolarArray;
    bool responsive = true;
    double failed_at_s = 0.0;
    bool unrecoverable = false;
    bool bypassed = false;
};

class SspareReplica {
public:
    SspareReplica(const Scenario& sc, RandomStream stream, const ReplicaOptions& options)
        : sc_(sc), stream_(std::move(stream)), options_(options) {}

    ReplicaResult run();

private:
    void log(double t, EventKind kind, const std::string& details) {
        if (!options_.event_log) return;
        result_.event_log.push_back("t=" + fmt_seconds(t) + " seq=" + std::to_string(seq_) +
                                    " " + to_string(kind) + " " + details);
    }

    void push(SimEvent ev) {
        ev.seq = next_seq_++;
        queue_.push(std::move(ev));
    }

    double years(double t_s) const { return t_s / kSecondsPerYear; }
    double seconds(double t_y) const { return t_y * kSecondsPerYear; }

    void check_conservation() const;
    void record_power(double t_s);
    void evaluate_power(double t_s);
    void schedule_first_power_failure(double first_years);
    void schedule_next_power_failure(double after_years);
    void dispatch_power_failure(const SimEvent& ev);
    void fail_module(double t_s, ModuleId id, PowerMode mode);
    void fail_base(double t_s);
    void schedule_detection(double t_s, ModuleId id);
    void run_heartbeat_tick(const SimEvent& ev);
    void handle_detection(double t_s, ModuleId id);
    void try_dispatch_recovery(double t_s);
    void schedule_plan_execution(double start_s, const Plan& plan, bool assembly);
    void apply_unload_step(const SimEvent& ev);
    void apply_move_step(const SimEvent& ev);
    void complete_bypass(double t_s);
    void finalize(double end_years, bool power_ended, double power_years);
    int future_resupply_count(double t_s) const;
    std::vector<ModuleId> deployed_generating() const;
    void emit_telemetry(double t_s, const std::vector<SensorReport>& reports);

    const Scenario& sc_;
    RandomStream stream_;
    ReplicaOptions options_;
    ReplicaResult result_;

    std::priority_queue<SimEvent, std::vector<SimEvent>, EventOrder> queue_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t seq_ = 0;  // seq of the event being dispatched

    Lattice lattice_;
    PowerGraph graph_;
    HealthMonitor monitor_;
    UnloaderState unloader_;
    std::map<ModuleId, SsmpPhase> ledger_;
    std::map<ModuleId, FailureRecord> failures_;
    std::set<ModuleId> pending_recovery_;
    std::set<int> failed_bases_;

    int launched_ = 0;
    int resupplied_ = 0;
    ModuleId next_module_id_ = 1;
    bool assembly_in_progress_ = true;
    bool recovery_in_flight_ = false;
    ModuleId recovery_target_ = 0;
    ModuleId recovery_new_module_ = 0;
    bool recovery_bypass_on_place_ = false;
    bool recovery_aborted_ = false;
    std::optional<double> deficit_start_s_;
    bool power_limited_set_ = false;
    double power_limited_years_ = 0.0;
    double fatal_nonpower_years_ = std::numeric_limits<double>::infinity();
    bool done_ = false;
    double end_years_ = 0.0;
    std::set<long long> scheduled_ticks_;
};

int SspareReplica::future_resupply_count(double t_s) const {
    int total = 0;
    for (const auto& e : sc_.architecture.resupply_schedule) {
        if (seconds(e.year) > t_s) total += e.module_count;
    }
    return total;
}

std::vector<ModuleId> SspareReplica::deployed_generating() const {
    std::vector<ModuleId> out;
    for (const auto& [id, phase] : ledger_) {
        if (phase == SsmpPhase::Deployed && graph_.has_node(id) &&
            graph_.state(id) == NodeState::Generating) {
            out.push_back(id);
        }
    }
    return out;
}

void SspareReplica::check_conservation() const {
    if (!options_.check_invariants) return;
    const int total = launched_ + resupplied_;
    int accounted = 0;
    for (const auto& [id, phase] : ledger_) {
        (void)phase;
        ++accounted;
    }
    if (accounted != total) {
        throw Error("conservation violated: " + std::to_string(accounted) + " tracked vs " +
                    std::to_string(total) + " launched+resupplied");
    }
    // Every tracked module must be in exactly one concrete place.
    int stowed = 0, transit = 0, on_lattice = 0;
    for (const auto& [id, phase] : ledger_) {
        switch (phase) {
            case SsmpPhase::Stowed: ++stowed; break;
            case SsmpPhase::InTransit: ++transit; break;
            default: ++on_lattice; break;
        }
    }
    const int stack = static_cast<int>(unloader_.stack.size());
    int carried = 0;
    for (const Rod r : {Rod::Right, Rod::Left}) {
        if (unloader_.rod(r).carried) ++carried;
    }
    if (stowed != stack || transit != carried ||
        on_lattice != static_cast<int>(lattice_.module_count())) {
        throw Error("conservation violated: ledger does not match physical state");
    }
}

void SspareReplica::record_power(double t_s) {
    const double out = net_output(graph_, sc_.module, years(t_s));
    if (!result_.power_timeline.empty() &&
        result_.power_timeline.back().second == out) {
        return;
    }
    result_.power_timeline.push_back({years(t_s), out});
}

void SspareReplica::evaluate_power(double t_s) {
    if (done_) return;
    record_power(t_s);
    const double out = net_output(graph_, sc_.module, years(t_s));
    if (out >= sc_.bus_demand_w - 1e-9) {
        deficit_start_s_.reset();
        return;
    }
    if (!deficit_start_s_) deficit_start_s_ = t_s;
    if (power_limited_set_ || recovery_in_flight_ || assembly_in_progress_) return;

    // Permanence check: even with every recoverable failure bypassed and
    // every available or future spare deployed, would demand be met?
    std::vector<ModuleId> awaiting;
    for (const auto& [id, rec] : failures_) {
        if (!rec.bypassed && !rec.unrecoverable && graph_.has_node(id)) awaiting.push_back(id);
    }
    const int supply = static_cast<int>(unloader_.stack.size()) + future_resupply_count(t_s);
    const int n_rec = std::min<int>(static_cast<int>(awaiting.size()), supply);
    double optimistic = out;
    if (n_rec > 0) {
        PowerGraph hypothetical = graph_;
        for (ModuleId id : awaiting) hypothetical.set_state(id, NodeState::Bypassed);
        optimistic = net_output(hypothetical, sc_.module, years(t_s)) +
                     n_rec * module_power(sc_.module, years(t_s));
    }
    if (optimistic < sc_.bus_demand_w - 1e-9) {
        power_limited_set_ = true;
        power_limited_years_ = years(*deficit_start_s_);
        finalize(std::min(power_limited_years_, fatal_nonpower_years_), true,
                 power_limited_years_);
    }
}

void SspareReplica::schedule_first_power_failure(double first_years) {
    if (first_years <= sc_.mission_duration_years) {
        SimEvent ev;
        ev.t = seconds(first_years);
        ev.kind = EventKind::SubsystemFailure;
        push(std::move(ev));
    }
}

void SspareReplica::schedule_next_power_failure(double after_years) {
    const auto& power = sc_.hazard.at(Subsystem::Power);
    if (!power.enabled) return;
    const double next = sample_failure_time_after(power.shape, power.scale_years, after_years,
                                                  stream_.uniform01());
    if (next <= sc_.mission_duration_years) {
        SimEvent ev;
        ev.t = seconds(next);
        ev.kind = EventKind::SubsystemFailure;
        push(std::move(ev));
    }
}

void SspareReplica::dispatch_power_failure(const SimEvent& ev) {
    const PowerMode mode = draw_power_mode(sc_.hazard, stream_);
    log(ev.t, EventKind::SubsystemFailure, std::string("subsystem=power mode=") + to_string(mode));
    if (mode == PowerMode::Distribution) {
        fail_base(ev.t);
    } else {
        auto candidates = deployed_generating();
        if (candidates.empty()) {
            // Nothing deployed yet; the anomaly lands on the distribution
            // chain instead of an array module.
            fail_base(ev.t);
        } else {
            const ModuleId id = candidates[stream_.uniform_index(candidates.size())];
            fail_module(ev.t, id, mode);
        }
    }
    schedule_next_power_failure(years(ev.t));
}

void SspareReplica::fail_base(double t_s) {
    std::vector<int> alive;
    for (int b = 0; b < static_cast<int>(lattice_.base_cells().size()); ++b) {
        if (!failed_bases_.count(b)) alive.push_back(b);
    }
    if (alive.empty()) return;
    const int base = alive[stream_.uniform_index(alive.size())];
    failed_bases_.insert(base);
    const ModuleId base_id = base == 0 ? kBaseRightId : kBaseLeftId;
    graph_.set_state(base_id, NodeState::FailedOpen);
    log(t_s, EventKind::ModuleFailure,
        "base=" + std::string(base == 0 ? "right" : "left") + " mode=distribution");
    if (failed_bases_.size() == lattice_.base_cells().size()) {
        // Both distribution paths lost: the bus is unpowered regardless of
        // the array state.
        fatal_nonpower_years_ = std::min(fatal_nonpower_years_, years(t_s));
        finalize(years(t_s), false, 0.0);
        return;
    }
    evaluate_power(t_s);
}

void SspareReplica::fail_module(double t_s, ModuleId id, PowerMode mode) {
    FailureRecord rec;
    rec.mode = mode;
    rec.responsive = stream_.uniform01() >= sc_.sim.nonresponsive_fraction;
    rec.failed_at_s = t_s;
    const bool open = stream_.uniform01() < sc_.sim.open_circuit_fraction;
    graph_.set_state(id, open ? NodeState::FailedOpen : NodeState::FailedShorted);
    ledger_[id] = SsmpPhase::Failed;
    failures_[id] = rec;
    log(t_s, EventKind::ModuleFailure,
        "module=" + std::to_string(id) + " mode=" + to_string(mode) +
            (rec.responsive ? " responsive" : " silent") +
            (open ? " failed_open" : " failed_shorted"));
    evaluate_power(t_s);
    schedule_detection(t_s, id);
    check_conservation();
}

void SspareReplica::schedule_detection(double t_s, ModuleId id) {
    const double tau = sc_.heartbeat.interval_s;
    // With lossless transport only the ticks around a failure matter. Catch
    // every module that was still reporting (including the one that just
    // failed) up to the last quiet tick, then schedule the real ticks that
    // decide detection.
    const long long quiet_index = static_cast<long long>(std::floor(t_s / tau));
    const double quiet_tick = static_cast<double>(quiet_index) * tau;
    for (const auto& [mid, phase] : ledger_) {
        if (phase == SsmpPhase::Bypassed || phase == SsmpPhase::Stowed ||
            phase == SsmpPhase::InTransit) {
            continue;
        }
        auto fit = failures_.find(mid);
        const bool was_silent =
            fit != failures_.end() && !fit->second.responsive && mid != id;
        if (!was_silent) monitor_.mark_heard(mid, quiet_tick);
    }
    const int extra = failures_[id].responsive ? 1 : sc_.heartbeat.miss_threshold + 1;
    for (long long k = 1; k <= extra; ++k) {
        const double tick = static_cast<double>(quiet_index + k) * tau;
        if (tick > seconds(sc_.mission_duration_years)) break;
        if (scheduled_ticks_.insert(quiet_index + k).second) {
            SimEvent ev;
            ev.t = tick;
            ev.kind = EventKind::HeartbeatTick;
            push(std::move(ev));
        }
    }
}

void SspareReplica::emit_telemetry(double t_s, const std::vector<SensorReport>& reports) {
    if (!options_.telemetry) return;
    if (result_.telemetry.empty()) result_.telemetry.push_back(sensor_report_csv_header());
    for (const auto& r : reports) result_.telemetry.push_back(to_csv_line(r));
    (void)t_s;
}

void SspareReplica::run_heartbeat_tick(const SimEvent& ev) {
    const double t = ev.t;
    std::vector<SensorReport> reports;
    DiagnosisConfig diag_cfg{sc_.sim.battery_temp_min_k, sc_.sim.battery_temp_max_k};
    const double drop_p = sc_.heartbeat.drop_probability;

    for (const auto& [id, phase] : ledger_) {
        if (phase != SsmpPhase::Deployed && phase != SsmpPhase::Failed) continue;
        auto fit = failures_.find(id);
        const bool silent_failure =
            fit != failures_.end() && !fit->second.responsive && phase == SsmpPhase::Failed;
        if (silent_failure) continue;
        if (drop_p > 0.0 && stream_.uniform01() < drop_p) continue;

        SensorReport report;
        report.module_id = id;
        report.timestamp_s = t;
        if (fit != failures_.end() && phase == SsmpPhase::Failed) {
            if (fit->second.mode == PowerMode::Battery) {
                report.temperature_k = sc_.sim.battery_temp_max_k + 20.0;
            } else {
                report.bus_voltage_ok = false;
            }
        }
        reports.push_back(report);
    }
    emit_telemetry(t, reports);

    const auto newly_flagged = monitor_.tick(t, reports);
    std::vector<ModuleId> detected(newly_flagged.begin(), newly_flagged.end());
    for (const auto& report : reports) {
        const Diagnosis d = diagnose(monitor_, report, diag_cfg);
        if (d == Diagnosis::ArrayDamage || d == Diagnosis::BatteryDamage) {
            auto fit = failures_.find(report.module_id);
            if (fit != failures_.end() && !fit->second.bypassed &&
                !pending_recovery_.count(report.module_id) &&
                !fit->second.unrecoverable && !monitor_.is_flagged(report.module_id)) {
                detected.push_back(report.module_id);
            }
        }
    }
    std::sort(detected.begin(), detected.end());
    detected.erase(std::unique(detected.begin(), detected.end()), detected.end());
    for (ModuleId id : detected) {
        auto fit = failures_.find(id);
        if (fit == failures_.end()) {
            // Heartbeat false positive (possible with report drops): log and
            // keep operating; the module is still generating.
            log(t, EventKind::DetectionFlag, "module=" + std::to_string(id) + " false_positive");
            continue;
        }
        if (fit->second.bypassed || fit->second.unrecoverable) continue;
        if (pending_recovery_.count(id) || recovery_target_ == id) continue;
        handle_detection(t, id);
    }
}

void SspareReplica::handle_detection(double t_s, ModuleId id) {
    log(t_s, EventKind::DetectionFlag,
        "module=" + std::to_string(id) + " diagnosed=" +
            (failures_[id].responsive
                 ? (failures_[id].mode == PowerMode::Battery ? "battery_damage" : "array_damage")
                 : "non_responsive"));
    pending_recovery_.insert(id);
    try_dispatch_recovery(t_s);
}

void SspareReplica::try_dispatch_recovery(double t_s) {
    if (done_ || recovery_in_flight_ || assembly_in_progress_) return;
    while (!pending_recovery_.empty()) {
        if (unloader_.stack.empty()) return;  // wait for resupply
        const ModuleId failed_id = *pending_recovery_.begin();
        const ModuleId new_id = unloader_.stack.front();
        Plan plan;
        try {
            plan = replacement_plan(lattice_, failed_id, new_id);
        } catch (const PlanError& e) {
            ++result_.recovery_failures;
            failures_[failed_id].unrecoverable = true;
            pending_recovery_.erase(failed_id);
            log(t_s, EventKind::ReplacementDispatched,
                "module=" + std::to_string(failed_id) + " outcome=planning_failed (" + e.what() +
                    ")");
            evaluate_power(t_s);
            continue;
        }
        pending_recovery_.erase(failed_id);
        recovery_in_flight_ = true;
        recovery_target_ = failed_id;
        recovery_new_module_ = new_id;
        recovery_bypass_on_place_ = plan.size() == 1;  // slot is the pad itself
        recovery_aborted_ = false;
        log(t_s, EventKind::ReplacementDispatched,
            "module=" + std::to_string(failed_id) + " replacement=" + std::to_string(new_id) +
                " moves=" + std::to_string(plan.size() - 1));
        schedule_plan_execution(t_s, plan, false);
        return;
    }
}

// Expands a plan into timed unloader and move events. Deployment steps run
// the canonical dispense sequence for the pad's rod; pivots follow once the
// connector releases the module.
void SspareReplica::schedule_plan_execution(double start_s, const Plan& plan, bool assembly) {
    const double phase_d = sc_.sim.unloader_phase_duration_s;
    const double move_d = sc_.sim.move_duration_s;
    double cursor = start_s;
    double rod_done = start_s;

    // Simulate the unloader against a scratch copy so event times are known;
    // the real transitions happen at event dispatch.
    UnloaderState scratch = unloader_;
    std::size_t i = 0;
    while (i < plan.steps.size()) {
        const PlanStep& step = plan.steps[i];
        if (step.is_deploy) {
            const Rod side =
                (!lattice_.base_cells().empty() && step.deploy_cell == lattice_.base_cells()[0])
                    ? Rod::Right
                    : Rod::Left;
            auto res = dispense(scratch, side, true);
            scratch = res.state;
            double place_time = cursor;
            for (const auto& entry : res.trace) {
                SimEvent ev;
                ev.t = cursor;
                ev.kind = EventKind::UnloadStep;
                ev.rod = entry.rod;
                ev.motion = entry.motion_completion;
                ev.uevent = entry.event;
                ev.module = step.module_id;
                ev.cell = step.deploy_cell;
                ev.is_deploy = !entry.motion_completion && entry.event == UnloaderEvent::Place;
                if (ev.is_deploy) place_time = cursor;
                push(std::move(ev));
                if (entry.motion_completion || entry.event == UnloaderEvent::SpiralTurn) {
                    continue;  // arrivals and the passive turn cost nothing extra
                }
                cursor += phase_d;
            }
            rod_done = cursor;
            cursor = place_time + phase_d;  // module released; pivots may start
            ++i;
            continue;
        }
        SimEvent ev;
        ev.t = cursor + move_d;
        ev.kind = EventKind::MoveStep;
        ev.module = step.module_id;
        ev.move = step.move;
        ev.final_move =
            (i + 1 == plan.steps.size()) || plan.steps[i + 1].is_deploy;
        cursor += move_d;
        push(std::move(ev));
        ++i;
    }

    const double completion = std::max(cursor, rod_done);
    SimEvent ev;
    ev.t = completion;
    ev.kind = EventKind::RecoveryComplete;
    ev.is_deploy = assembly;  // reused flag: marks assembly completion
    push(std::move(ev));
}

void SspareReplica::apply_unload_step(const SimEvent& ev) {
    if (ev.motion) {
        unloader_ = complete_motion(unloader_, ev.rod);
        log(ev.t, EventKind::UnloadStep,
            std::string(to_string(ev.rod)) + " " +
                (ev.uevent == UnloaderEvent::Lift ? "reach_guide" : "reach_base") +
                " carried=" +
                (unloader_.rod(ev.rod).carried ? std::to_string(*unloader_.rod(ev.rod).carried)
                                               : std::string("none")) +
                " stack=" + std::to_string(unloader_.stack.size()));
        return;
    }
    const bool base_free = !lattice_.occupied(ev.cell);
    auto out = step(unloader_, ev.rod, ev.uevent, base_free);
    unloader_ = std::move(out.state);
    if (ev.uevent == UnloaderEvent::Lift) {
        if (unloader_.rod(ev.rod).carried) {
            ledger_[*unloader_.rod(ev.rod).carried] = SsmpPhase::InTransit;
        }
    }
    if (out.delivered) {
        lattice_.place(*out.delivered, ev.cell);
        graph_.dock_module(*out.delivered, ev.cell, lattice_);
        ledger_[*out.delivered] = SsmpPhase::Deployed;
        monitor_.register_module(*out.delivered, ev.t);
        if (recovery_in_flight_ && *out.delivered == recovery_new_module_ &&
            recovery_bypass_on_place_) {
            complete_bypass(ev.t);
        }
        evaluate_power(ev.t);
    }
    log(ev.t, EventKind::UnloadStep,
        std::string(to_string(ev.rod)) + " " + to_string(ev.uevent) + " carried=" +
            (unloader_.rod(ev.rod).carried ? std::to_string(*unloader_.rod(ev.rod).carried)
                                           : std::string("none")) +
            " stack=" + std::to_string(unloader_.stack.size()));
    check_conservation();
}

void SspareReplica::complete_bypass(double t_s) {
    graph_ = apply_bypass(graph_, recovery_target_, recovery_new_module_);
    failures_[recovery_target_].bypassed = true;
    ledger_[recovery_target_] = SsmpPhase::Bypassed;
    monitor_.deregister_module(recovery_target_);
    ++result_.replacements_used;
    log(t_s, EventKind::MoveStep,
        "module=" + std::to_string(recovery_new_module_) +
            " bypass_applied=" + std::to_string(recovery_target_));
}

void SspareReplica::apply_move_step(const SimEvent& ev) {
    // A module that failed mid-journey stalls where it is; its remaining
    // moves are dropped. The structure stays attached, so the mission
    // continues around it.
    const bool stalled = ledger_[ev.module] != SsmpPhase::Deployed ||
                         lattice_.cell_of(ev.module) != std::optional<Cell>(ev.move.from) ||
                         !lattice_.is_free(ev.move.to);
    if (stalled) {
        if (recovery_in_flight_ && ev.module == recovery_new_module_) recovery_aborted_ = true;
        log(ev.t, EventKind::MoveStep,
            "module=" + std::to_string(ev.module) + " stalled at " +
                to_string(lattice_.cell_of(ev.module).value_or(ev.move.from)));
        return;
    }
    lattice_.move_module(ev.module, ev.move.to);
    graph_.dock_module(ev.module, ev.move.to, lattice_);
    log(ev.t, EventKind::MoveStep,
        "module=" + std::to_string(ev.module) + " " + to_string(ev.move.kind) + " -> " +
            to_string(ev.move.to));
    if (ev.final_move && recovery_in_flight_ && ev.module == recovery_new_module_ &&
        !recovery_aborted_) {
        complete_bypass(ev.t);
    }
    evaluate_power(ev.t);
    check_conservation();
}

void SspareReplica::finalize(double end_years, bool power_ended, double power_years) {
    if (done_) return;
    done_ = true;
    end_years_ = std::min(end_years, sc_.mission_duration_years);
    if (power_ended) {
        result_.power_limited_years = power_years;
        result_.power_limited_censored = false;
    } else {
        result_.power_limited_years = end_years_;
        result_.power_limited_censored = true;
    }
    const double mission = std::min(end_years, sc_.mission_duration_years);
    result_.mission_years = mission;
    result_.mission_censored = end_years >= sc_.mission_duration_years && !power_ended &&
                               fatal_nonpower_years_ > sc_.mission_duration_years;
    if (power_ended && fatal_nonpower_years_ < power_years) {
        // A fatal bus failure preceded the power exhaustion.
        result_.mission_years = std::min(fatal_nonpower_years_, sc_.mission_duration_years);
        result_.mission_censored = false;
    }
}

ReplicaResult SspareReplica::run() {
    const double horizon_s = seconds(sc_.mission_duration_years);
    const int n_modules = sc_.architecture.n_modules;
    const int deployed_count = n_modules - sc_.architecture.n_spares;

    DeploymentGeometry geom = deployment_geometry(sc_, deployed_count);
    lattice_ = geom.lattice;
    graph_ = PowerGraph::from_lattice(lattice_);
    monitor_ = HealthMonitor(sc_.heartbeat.interval_s, sc_.heartbeat.miss_threshold);

    std::vector<ModuleId> stack;
    for (int i = 0; i < n_modules; ++i) {
        stack.push_back(next_module_id_);
        ledger_[next_module_id_] = SsmpPhase::Stowed;
        ++next_module_id_;
    }
    launched_ = n_modules;
    unloader_ = UnloaderState::initial(stack);

    // Failure draws: one per enabled subsystem up front, power arrivals
    // continue as a conditional process.
    SubsystemDraws draws = draw_initial_failures(sc_.hazard, stream_);
    fatal_nonpower_years_ = draws.fatal_nonpower_years;
    schedule_first_power_failure(draws.first_power_years);
    if (fatal_nonpower_years_ <= sc_.mission_duration_years) {
        SimEvent ev;
        ev.t = seconds(fatal_nonpower_years_);
        ev.kind = EventKind::MissionEnd;
        ev.count = 1;  // marks a fatal bus failure rather than the horizon
        push(std::move(ev));
    }

    for (const auto& entry : sc_.architecture.resupply_schedule) {
        if (seconds(entry.year) > horizon_s) continue;
        SimEvent ev;
        ev.t = seconds(entry.year);
        ev.kind = EventKind::Resupply;
        ev.count = entry.module_count;
        push(std::move(ev));
    }

    if (sc_.heartbeat.drop_probability > 0.0) {
        // Lossy transport: every tick matters, so schedule them all. Intended
        // for short-horizon studies.
        const double tau = sc_.heartbeat.interval_s;
        for (double t = tau; t <= horizon_s; t += tau) {
            SimEvent ev;
            ev.t = t;
            ev.kind = EventKind::HeartbeatTick;
            push(std::move(ev));
            scheduled_ticks_.insert(t);
        }
    }

    {
        SimEvent ev;
        ev.t = horizon_s;
        ev.kind = EventKind::MissionEnd;
        push(std::move(ev));
    }

    if (deployed_count > 0) {
        const Plan assembly =
            assembly_plan(lattice_, geom.right_targets, geom.left_targets, stack);
        schedule_plan_execution(0.0, assembly, true);
    } else {
        assembly_in_progress_ = false;
    }
    record_power(0.0);

    while (!done_ && !queue_.empty()) {
        const SimEvent ev = queue_.top();
        queue_.pop();
        seq_ = ev.seq;
        switch (ev.kind) {
            case EventKind::UnloadStep:
                apply_unload_step(ev);
                break;
            case EventKind::MoveStep:
                apply_move_step(ev);
                break;
            case EventKind::HeartbeatTick:
                run_heartbeat_tick(ev);
                break;
            case EventKind::SubsystemFailure:
                dispatch_power_failure(ev);
                break;
            case EventKind::RecoveryComplete:
                if (ev.is_deploy) {
                    assembly_in_progress_ = false;
                    log(ev.t, EventKind::MoveStep, "assembly_complete");
                } else {
                    if (recovery_aborted_ && !failures_[recovery_target_].bypassed &&
                        !failures_[recovery_target_].unrecoverable) {
                        // The replacement module died en route; queue the
                        // original failure again for the next spare.
                        pending_recovery_.insert(recovery_target_);
                    }
                    recovery_in_flight_ = false;
                    recovery_aborted_ = false;
                    recovery_bypass_on_place_ = false;
                    recovery_target_ = 0;
                    recovery_new_module_ = 0;
                }
                evaluate_power(ev.t);
                try_dispatch_recovery(ev.t);
                break;
            case EventKind::Resupply: {
                std::vector<ModuleId> fresh;
                for (int i = 0; i < ev.count; ++i) {
                    fresh.push_back(next_module_id_);
                    ledger_[next_module_id_] = SsmpPhase::Stowed;
                    ++next_module_id_;
                }
                resupplied_ += ev.count;
                unloader_.stack.insert(unloader_.stack.begin(), fresh.begin(), fresh.end());
                if (!unloader_.stack.empty() && !unloader_.stack_secured_by) {
                    // A connector re-secures the delivered stack.
                    unloader_.stack_secured_by = unloader_.rod(Rod::Right).phase ==
                                                         ConnectorPhase::IdleAtStackTop
                                                     ? Rod::Right
                                                     : Rod::Left;
                }
                log(ev.t, EventKind::Resupply, "count=" + std::to_string(ev.count) + " stack=" +
                                                   std::to_string(unloader_.stack.size()));
                check_conservation();
                evaluate_power(ev.t);
                try_dispatch_recovery(ev.t);
                break;
            }
            case EventKind::MissionEnd:
                if (ev.count == 1) {
                    log(ev.t, EventKind::MissionEnd, "fatal_subsystem_failure");
                    finalize(years(ev.t), false, 0.0);
                } else {
                    log(ev.t, EventKind::MissionEnd, "horizon");
                    finalize(sc_.mission_duration_years, false, 0.0);
                }
                break;
            default:
                break;
        }
    }
    if (!done_) finalize(sc_.mission_duration_years, false, 0.0);

    result_.spares_remaining = static_cast<int>(unloader_.stack.size());
    record_power(seconds(end_years_));
    return result_;
}

}  // namespace

DeploymentGeometry deployment_geometry(const Scenario& scenario, int deployed_count) {
    const double edge = scenario.module.edge_length_m;
    const int cells_x =
        std::max(1, static_cast<int>(std::ceil(scenario.satellite_dims_m[0] / edge)));
    const int cells_y =
        std::max(1, static_cast<int>(std::ceil(scenario.satellite_dims_m[1] / edge)));

    std::set<Cell> body;
    for (int x = -cells_x; x <= -1; ++x) {
        for (int y = 0; y < cells_y; ++y) body.insert(Cell{x, y});
    }
    const Cell base_right{0, 0};
    const Cell base_left{-cells_x - 1, 0};

    DeploymentGeometry geom;
    geom.lattice = Lattice({base_right, base_left}, std::move(body));
    const int right_count = (deployed_count + 1) / 2;
    const int left_count = deployed_count / 2;
    for (int i = 1; i <= right_count; ++i) geom.right_targets.push_back(Cell{i, 0});
    for (int i = 1; i <= left_count; ++i) geom.left_targets.push_back(Cell{base_left.x - i, 0});
    return geom;
}

ReplicaResult run_replica(const Scenario& scenario, std::uint64_t seed,
                          const ReplicaOptions& options) {
    const Scenario sc = validate_scenario(scenario);
    RandomStream stream(seed);
    if (sc.architecture.kind == ArchitectureKind::Sspare) {
        SspareReplica replica(sc, std::move(stream), options);
        return replica.run();
    }
    return run_static_replica(sc, stream, options);
}

MonteCarloAggregate run_monte_carlo(const Scenario& scenario, int replicas,
                                    std::uint64_t base_seed, int threads,
                                    const ReplicaOptions& options) {
    if (replicas < 1) throw DomainError("replicas must be >= 1");
    const Scenario sc = validate_scenario(scenario);
    const RandomStream root(base_seed);

    std::vector<ReplicaResult> results(replicas);
    auto worker_body = [&](int index) {
        results[index] = run_replica(sc, root.split(index).seed(), options);
    };

    if (threads <= 1) {
        for (int i = 0; i < replicas; ++i) worker_body(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        const int n_threads = std::min(threads, replicas);
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < replicas; i = next.fetch_add(1)) {
                    worker_body(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // Fixed-order reduction over replica indices: identical for any thread
    // count or scheduling.
    MonteCarloAggregate agg;
    agg.replicas = replicas;
    double sum_p = 0.0, sum_p2 = 0.0, sum_m = 0.0, sum_m2 = 0.0, sum_r = 0.0;
    int censored_p = 0, censored_m = 0;
    for (const auto& r : results) {
        sum_p += r.power_limited_years;
        sum_p2 += r.power_limited_years * r.power_limited_years;
        sum_m += r.mission_years;
        sum_m2 += r.mission_years * r.mission_years;
        sum_r += r.replacements_used;
        censored_p += r.power_limited_censored ? 1 : 0;
        censored_m += r.mission_censored ? 1 : 0;
        agg.recovery_failures += r.recovery_failures;
        agg.replacement_histogram[r.replacements_used] += 1;
    }
    const double n = static_cast<double>(replicas);
    agg.mean_power_limited_years = sum_p / n;
    agg.mean_mission_years = sum_m / n;
    agg.mean_replacements = sum_r / n;
    if (replicas > 1) {
        const double var_p =
            std::max(0.0, (sum_p2 - n * agg.mean_power_limited_years * agg.mean_power_limited_years) /
                              (n - 1.0));
        const double var_m = std::max(
            0.0, (sum_m2 - n * agg.mean_mission_years * agg.mean_mission_years) / (n - 1.0));
        agg.se_power_limited_years = std::sqrt(var_p / n);
        agg.se_mission_years = std::sqrt(var_m / n);
    }
    agg.power_censored_fraction = censored_p / n;
    agg.mission_censored_fraction = censored_m / n;

    const int curve_points = 100;
    for (int i = 0; i <= curve_points; ++i) {
        const double t = sc.mission_duration_years * static_cast<double>(i) / curve_points;
        int alive = 0;
        for (const auto& r : results) {
            if (r.mission_censored || r.mission_years > t) ++alive;
        }
        agg.survival_curve.emplace_back(t, alive / n);
    }
    return agg;
}

ComparisonReport compare_architectures(const std::vector<Scenario>& scenarios, int replicas,
                                       std::uint64_t base_seed, const ComparisonRow& baseline,
                                       int threads) {
    ComparisonReport report;
    const auto statics = build_comparison_table(scenarios, baseline);
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        ComparisonEntry entry;
        entry.statics = statics[i];
        // Same base seed for every architecture (common random numbers).
        entry.lifetime = run_monte_carlo(scenarios[i], replicas, base_seed, threads);
        report.rows.push_back(std::move(entry));
    }
    if (scenarios.empty()) {
        ComparisonEntry entry;
        entry.statics = baseline;
        report.rows.push_back(std::move(entry));
    }
    return report;
}

}  // namespace sspare
