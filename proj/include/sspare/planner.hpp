#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sspare/errors.hpp"
#include "sspare/lattice.hpp"

namespace sspare {

// Locomotion primitives for a square module pivoting over static neighbors.
//
//  Pivot90    rotation about a corner shared with the anchor; the mover hops
//             to the diagonal cell. The anchor is edge-adjacent to both the
//             start and destination cell. No swept cells beyond from/to.
//  Pivot180   flip over the anchor to the opposite side, two cells along one
//             axis. The anchor sits between start and destination, and both
//             cells beside the anchor perpendicular to the motion axis must
//             be clear for the rotation.
//  Slide      90-degree roll alongside the anchor into the edge-adjacent
//             cell; the anchor shares the hinge corner with both cells. The
//             two cells on the side opposite the anchor must be clear. A
//             slide whose anchor equals the start cell is the unfold move a
//             freshly dispensed module makes off its base pad.
enum class MoveKind { Pivot90 = 0, Pivot180 = 1, Slide = 2 };

const char* to_string(MoveKind k);

struct Move {
    MoveKind kind = MoveKind::Pivot90;
    Cell from{};
    Cell to{};
    Cell anchor{};
    std::vector<Cell> swept;  // cells that must be empty during the motion

    bool operator==(const Move&) const = default;
};

enum class Provenance { Assembly, Replacement, Relocation };

// Either places a module on a base pad (deploy) or pivots a placed module.
struct PlanStep {
    ModuleId module_id = 0;
    bool is_deploy = false;
    Cell deploy_cell{};
    Move move{};

    bool operator==(const PlanStep&) const = default;
};

struct Plan {
    std::vector<PlanStep> steps;
    Provenance provenance = Provenance::Relocation;
    ModuleId failed_id = 0;  // meaningful for Replacement plans

    bool operator==(const Plan&) const = default;
    bool empty() const { return steps.empty(); }
    std::size_t size() const { return steps.size(); }
};

class PlanError : public Error {
public:
    enum class Kind {
        NotOccupied,
        WouldDisconnect,
        Unreachable,
        NoAdjacentSlot,
        InsufficientModules,
        InvalidStep,
    };

    PlanError(Kind kind, const std::string& msg, int step_index = -1)
        : Error(msg), kind_(kind), step_index_(step_index) {}
    Kind kind() const { return kind_; }
    int step_index() const { return step_index_; }

private:
    Kind kind_;
    int step_index_;
};

// All moves available to the module occupying `mover`: the destination and
// swept cells are clear, the anchor is static (another module or a base pad),
// and the mover stays edge-attached to the structure after the move. Sorted
// by (kind, to, anchor) so planning is deterministic.
// Throws NotOccupied / WouldDisconnect.
std::vector<Move> feasible_moves(const Lattice& lattice, const Cell& mover);

// Minimum-move plan relocating the module at `from` to `to`, breadth-first
// over mover positions with lexicographic tie-breaking. Throws Unreachable.
Plan plan_path(const Lattice& lattice, const Cell& from, const Cell& to);

// Deployment plan that fills the per-side target cells, alternating sides
// starting with the right. Each deployment routes from the side's base pad
// to the farthest currently reachable unfilled target, so the structure
// grows outward and no later module has to cross an unfilled slot.
// `stack_top_first` supplies module ids in dispensing order.
Plan assembly_plan(const Lattice& start, const std::vector<Cell>& right_targets,
                   const std::vector<Cell>& left_targets,
                   const std::vector<ModuleId>& stack_top_first);

// Routes module `new_id` from a free base pad to the nearest reachable empty
// cell beside the failed module. The failed module is left in place.
Plan replacement_plan(const Lattice& lattice, ModuleId failed_id, ModuleId new_id);

// Replays the plan, re-checking the full move predicate at every step, and
// returns the final configuration. Throws InvalidStep on the first violation.
Lattice validate_plan(const Lattice& start, const Plan& plan);

// Line-oriented plan format, one step per line.
std::string serialize_plan(const Plan& plan);
Plan parse_plan(const std::string& text);

// ASCII target-shape grids: '#' target, '.' empty, 'B' base pad, 'X' body.
// Row 0 is the top of the file; x grows rightward, y grows upward.
struct ShapeSpec {
    Lattice start;                    // base pads + body only
    std::vector<Cell> right_targets;  // targets nearest the first base pad
    std::vector<Cell> left_targets;
};

ShapeSpec parse_shape(const std::string& text);

}  // namespace sspare
