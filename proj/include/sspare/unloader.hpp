#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sspare/errors.hpp"
#include "sspare/lattice.hpp"

namespace sspare {

// Forklift-style dispenser: two rods flank the module stack, each with a
// traveling connector. A connector docks to the stack top, lifts a module to
// the spiral guide (which turns it 180 degrees with no extra actuator),
// descends on the outboard side and places the module on that side's base
// pad. While the stack is non-empty at least one connector keeps it secured.

enum class Rod { Right = 0, Left = 1 };
const char* to_string(Rod r);
inline Rod other_rod(Rod r) { return r == Rod::Right ? Rod::Left : Rod::Right; }

enum class ConnectorPhase {
    IdleAtStackTop,
    DockedToTop,
    Lifting,
    AtSpiralGuide,
    Turned180,
    Descending,
    PlacingOnBase,
    ReturningUp,
    ReorientingToStack,
};
const char* to_string(ConnectorPhase p);

enum class UnloaderEvent { Dock, Lift, SpiralTurn, Descend, Place, Return, Reorient };
const char* to_string(UnloaderEvent e);

class UnloaderError : public Error {
public:
    enum class Kind { IllegalTransition, StackEmpty, BaseOccupied };
    UnloaderError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct RodState {
    ConnectorPhase phase = ConnectorPhase::IdleAtStackTop;
    std::optional<ModuleId> carried;
    double connector_height_m = 0.0;

    bool operator==(const RodState&) const = default;
};

struct UnloaderState {
    std::array<RodState, 2> rods{};
    std::vector<ModuleId> stack;  // stowed module ids, top first
    std::optional<Rod> stack_secured_by;

    bool operator==(const UnloaderState&) const = default;

    RodState& rod(Rod r) { return rods[static_cast<int>(r)]; }
    const RodState& rod(Rod r) const { return rods[static_cast<int>(r)]; }

    // Launch configuration: full stack, both connectors idle, the right
    // connector resting docked on the stack top.
    static UnloaderState initial(std::vector<ModuleId> stack_top_first);

    bool attached(Rod r) const {
        return rod(r).phase == ConnectorPhase::DockedToTop ||
               (rod(r).phase == ConnectorPhase::IdleAtStackTop && stack_secured_by == r);
    }
};

struct StepOutcome {
    UnloaderState state;
    std::optional<ModuleId> delivered;  // set by Place
};

// Applies one event to one rod. `base_cell_free` gates Place (the pad under
// that rod must be clear). Throws UnloaderError on any disabled event.
// Securing rule: the rod holding the stack may not lift unless the other rod
// has docked first, so the stack is never left unattached.
StepOutcome step(const UnloaderState& state, Rod rod, UnloaderEvent event,
                 bool base_cell_free = true);

// Internal motion completions (not operator events): Lifting reaches the
// spiral guide; Descending reaches the base pad.
UnloaderState complete_motion(const UnloaderState& state, Rod rod);

// One entry of a dispense sequence; `motion_completion` marks the kinematic
// arrivals between events.
struct TraceEntry {
    Rod rod = Rod::Right;
    bool motion_completion = false;
    UnloaderEvent event = UnloaderEvent::Dock;

    bool operator==(const TraceEntry&) const = default;
};

std::string to_string(const TraceEntry& e);

struct DispenseResult {
    UnloaderState state;
    ModuleId module = 0;
    std::vector<TraceEntry> trace;
};

// Runs the canonical event sequence that moves the stack top onto `side`'s
// base pad, inserting the other rod's securing dock when the stack needs it.
DispenseResult dispense(const UnloaderState& state, Rod side, bool base_cell_free = true);

// Replays a trace from `start`, emitting one line per entry:
//   t=<seconds> <rod> <event> carried=<id|none> stack=<n>
// Events consume `phase_duration_s` except the passive spiral turn; motion
// completions land when their motion ends.
std::string serialize_trace(const UnloaderState& start, const std::vector<TraceEntry>& trace,
                            double t0_s, double phase_duration_s);

}  // namespace sspare
