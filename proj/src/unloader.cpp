#include "sspare/unloader.hpp"

#include <sstream>

namespace sspare {

const char* to_string(Rod r) { return r == Rod::Right ? "right" : "left"; }

const char* to_string(ConnectorPhase p) {
    switch (p) {
        case ConnectorPhase::IdleAtStackTop: return "idle_at_stack_top";
        case ConnectorPhase::DockedToTop: return "docked_to_top";
        case ConnectorPhase::Lifting: return "lifting";
        case ConnectorPhase::AtSpiralGuide: return "at_spiral_guide";
        case ConnectorPhase::Turned180: return "turned_180";
        case ConnectorPhase::Descending: return "descending";
        case ConnectorPhase::PlacingOnBase: return "placing_on_base";
        case ConnectorPhase::ReturningUp: return "returning_up";
        case ConnectorPhase::ReorientingToStack: return "reorienting_to_stack";
    }
    return "?";
}

const char* to_string(UnloaderEvent e) {
    switch (e) {
        case UnloaderEvent::Dock: return "dock";
        case UnloaderEvent::Lift: return "lift";
        case UnloaderEvent::SpiralTurn: return "spiral_turn";
        case UnloaderEvent::Descend: return "descend";
        case UnloaderEvent::Place: return "place";
        case UnloaderEvent::Return: return "return";
        case UnloaderEvent::Reorient: return "reorient";
    }
    return "?";
}

std::string to_string(const TraceEntry& e) {
    std::string s = to_string(e.rod);
    s += " ";
    s += e.motion_completion ? (e.event == UnloaderEvent::Lift ? "reach_guide" : "reach_base")
                             : to_string(e.event);
    return s;
}

UnloaderState UnloaderState::initial(std::vector<ModuleId> stack_top_first) {
    UnloaderState s;
    s.stack = std::move(stack_top_first);
    // One connector always rests attached to the stack top at launch.
    s.stack_secured_by = s.stack.empty() ? std::nullopt : std::optional<Rod>(Rod::Right);
    return s;
}

namespace {

[[noreturn]] void illegal(ConnectorPhase phase, UnloaderEvent event) {
    std::ostringstream oss;
    oss << "event " << to_string(event) << " is not enabled in phase " << to_string(phase);
    throw UnloaderError(UnloaderError::Kind::IllegalTransition, oss.str());
}

}  // namespace

StepOutcome step(const UnloaderState& state, Rod rod, UnloaderEvent event, bool base_cell_free) {
    UnloaderState next = state;
    RodState& r = next.rod(rod);
    const RodState& other = next.rod(other_rod(rod));
    std::optional<ModuleId> delivered;

    switch (event) {
        case UnloaderEvent::Dock:
            if (r.phase != ConnectorPhase::IdleAtStackTop) illegal(r.phase, event);
            if (next.stack.empty()) {
                throw UnloaderError(UnloaderError::Kind::StackEmpty, "dock with an empty stack");
            }
            r.phase = ConnectorPhase::DockedToTop;
            if (!next.stack_secured_by) next.stack_secured_by = rod;
            break;

        case UnloaderEvent::Lift: {
            if (r.phase != ConnectorPhase::DockedToTop) illegal(r.phase, event);
            if (next.stack.empty()) {
                throw UnloaderError(UnloaderError::Kind::StackEmpty, "lift with an empty stack");
            }
            // The securing connector may never leave before the other one has
            // docked; a non-securing connector lifts freely.
            const bool is_securer = next.stack_secured_by == rod;
            if (is_securer && other.phase != ConnectorPhase::DockedToTop) {
                throw UnloaderError(UnloaderError::Kind::IllegalTransition,
                                    "lift would leave the stack unsecured");
            }
            r.carried = next.stack.front();
            next.stack.erase(next.stack.begin());
            r.phase = ConnectorPhase::Lifting;
            if (next.stack.empty()) {
                next.stack_secured_by.reset();
            } else if (is_securer) {
                next.stack_secured_by = other_rod(rod);
            }
            break;
        }

        case UnloaderEvent::SpiralTurn:
            if (r.phase != ConnectorPhase::AtSpiralGuide) illegal(r.phase, event);
            r.phase = ConnectorPhase::Turned180;
            break;

        case UnloaderEvent::Descend:
            if (r.phase != ConnectorPhase::Turned180) illegal(r.phase, event);
            r.phase = ConnectorPhase::Descending;
            break;

        case UnloaderEvent::Place:
            if (r.phase != ConnectorPhase::PlacingOnBase || !r.carried) illegal(r.phase, event);
            if (!base_cell_free) {
                throw UnloaderError(UnloaderError::Kind::BaseOccupied,
                                    "base pad under the " + std::string(to_string(rod)) +
                                        " rod is occupied");
            }
            delivered = r.carried;
            r.carried.reset();
            break;

        case UnloaderEvent::Return:
            if (r.phase != ConnectorPhase::PlacingOnBase || r.carried) illegal(r.phase, event);
            r.phase = ConnectorPhase::ReturningUp;
            break;

        case UnloaderEvent::Reorient:
            if (r.phase != ConnectorPhase::ReturningUp) illegal(r.phase, event);
            r.phase = ConnectorPhase::IdleAtStackTop;
            break;
    }
    return StepOutcome{std::move(next), delivered};
}

UnloaderState complete_motion(const UnloaderState& state, Rod rod) {
    UnloaderState next = state;
    RodState& r = next.rod(rod);
    switch (r.phase) {
        case ConnectorPhase::Lifting:
            r.phase = ConnectorPhase::AtSpiralGuide;
            break;
        case ConnectorPhase::Descending:
            r.phase = ConnectorPhase::PlacingOnBase;
            break;
        default:
            throw UnloaderError(UnloaderError::Kind::IllegalTransition,
                                std::string("no motion to complete in phase ") +
                                    to_string(r.phase));
    }
    return next;
}

std::string serialize_trace(const UnloaderState& start, const std::vector<TraceEntry>& trace,
                            double t0_s, double phase_duration_s) {
    std::ostringstream oss;
    oss.setf(std::ios::fixed);
    oss.precision(3);
    UnloaderState state = start;
    double t = t0_s;
    for (const auto& e : trace) {
        if (e.motion_completion) {
            state = complete_motion(state, e.rod);
        } else {
            state = step(state, e.rod, e.event, true).state;
        }
        oss << "t=" << t << " " << to_string(e) << " carried=";
        if (state.rod(e.rod).carried) {
            oss << *state.rod(e.rod).carried;
        } else {
            oss << "none";
        }
        oss << " stack=" << state.stack.size() << "\n";
        if (!e.motion_completion && e.event != UnloaderEvent::SpiralTurn) {
            t += phase_duration_s;
        }
    }
    return oss.str();
}

DispenseResult dispense(const UnloaderState& state, Rod side, bool base_cell_free) {
    if (state.stack.empty()) {
        throw UnloaderError(UnloaderError::Kind::StackEmpty, "dispense with an empty stack");
    }
    if (!base_cell_free) {
        throw UnloaderError(UnloaderError::Kind::BaseOccupied,
                            "base pad under the " + std::string(to_string(side)) +
                                " rod is occupied");
    }

    DispenseResult result;
    result.state = state;
    auto apply_event = [&](Rod rod, UnloaderEvent ev) {
        auto out = step(result.state, rod, ev, true);
        result.state = std::move(out.state);
        if (out.delivered) result.module = *out.delivered;
        result.trace.push_back(TraceEntry{rod, false, ev});
    };
    auto apply_motion = [&](Rod rod, UnloaderEvent marker) {
        result.state = complete_motion(result.state, rod);
        result.trace.push_back(TraceEntry{rod, true, marker});
    };

    if (result.state.rod(side).phase == ConnectorPhase::IdleAtStackTop) {
        apply_event(side, UnloaderEvent::Dock);
    }
    // Securing handoff: when the dispensing rod is the one holding the
    // stack, the other connector docks before the lift.
    const Rod helper = other_rod(side);
    if (result.state.stack_secured_by == side &&
        result.state.rod(helper).phase == ConnectorPhase::IdleAtStackTop) {
        apply_event(helper, UnloaderEvent::Dock);
    }
    apply_event(side, UnloaderEvent::Lift);
    apply_motion(side, UnloaderEvent::Lift);
    apply_event(side, UnloaderEvent::SpiralTurn);
    apply_event(side, UnloaderEvent::Descend);
    apply_motion(side, UnloaderEvent::Descend);
    apply_event(side, UnloaderEvent::Place);
    apply_event(side, UnloaderEvent::Return);
    apply_event(side, UnloaderEvent::Reorient);
    return result;
}

}  // namespace sspare
