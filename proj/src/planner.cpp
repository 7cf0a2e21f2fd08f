#include "sspare/planner.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <tuple>

namespace sspare {

const char* to_string(MoveKind k) {
    switch (k) {
        case MoveKind::Pivot90: return "pivot90";
        case MoveKind::Pivot180: return "pivot180";
        case MoveKind::Slide: return "slide";
    }
    return "?";
}

namespace {

std::tuple<int, int, int, int, int> move_key(const Move& m) {
    return {static_cast<int>(m.kind), m.to.x, m.to.y, m.anchor.x, m.anchor.y};
}

// True when the cell can serve as a landing site for the mover.
bool landable(const Lattice& rest, const Cell& c) { return rest.is_free(c); }

// Attachment: the mover may only come to rest edge-adjacent to a docked
// module or a base pad.
bool attached_at(const Lattice& rest, const Cell& c) {
    for (const auto& d : kNeighborSteps) {
        if (rest.anchorable(c + d)) return true;
    }
    return false;
}

// All moves for a virtual mover at `mover`, evaluated against `rest` (the
// lattice without the mover). See the header for the move catalogue.
std::vector<Move> enumerate_moves(const Lattice& rest, const Cell& mover) {
    std::vector<Move> out;

    auto push_if_attached = [&](Move m) {
        if (attached_at(rest, m.to)) out.push_back(std::move(m));
    };

    // Pivot90: diagonal hop about a corner shared with the anchor.
    for (int dx : {-1, 1}) {
        for (int dy : {-1, 1}) {
            const Cell to{mover.x + dx, mover.y + dy};
            if (!landable(rest, to)) continue;
            for (const Cell& anchor : {Cell{mover.x + dx, mover.y}, Cell{mover.x, mover.y + dy}}) {
                if (rest.anchorable(anchor)) {
                    push_if_attached(Move{MoveKind::Pivot90, mover, to, anchor, {}});
                }
            }
        }
    }

    // Pivot180: flip over the anchor, two cells along one axis. Both cells
    // beside the anchor perpendicular to the motion must be clear.
    for (const auto& d : kNeighborSteps) {
        const Cell anchor = mover + d;
        const Cell to = mover + d + d;
        if (!rest.anchorable(anchor) || !landable(rest, to)) continue;
        const Cell perp{d.y, d.x};
        const Cell s1 = anchor + perp;
        const Cell s2 = anchor - perp;
        if (!rest.is_free(s1) || !rest.is_free(s2)) continue;
        std::vector<Cell> swept{std::min(s1, s2), std::max(s1, s2)};
        push_if_attached(Move{MoveKind::Pivot180, mover, to, anchor, std::move(swept)});
    }

    // Slide: roll into the edge-adjacent cell about a hinge corner on the
    // anchor; the two cells opposite the anchor must be clear.
    for (const auto& d : kNeighborSteps) {
        const Cell to = mover + d;
        if (!landable(rest, to)) continue;
        const Cell perp{d.y, d.x};
        for (const Cell& side : {perp, Cell{-perp.x, -perp.y}}) {
            const Cell opp1 = mover - side;
            const Cell opp2 = to - side;
            const bool clear = rest.is_free(opp1) && rest.is_free(opp2);
            for (const Cell& anchor : {mover + side, to + side}) {
                if (!rest.anchorable(anchor)) continue;
                if (!clear) continue;
                std::vector<Cell> swept{std::min(opp1, opp2), std::max(opp1, opp2)};
                push_if_attached(Move{MoveKind::Slide, mover, to, anchor, std::move(swept)});
            }
        }
    }

    // Unfold: a module resting on a base pad flips off it to a neighboring
    // cell, hinging on the base module beneath (anchor equals the pad).
    if (rest.is_base(mover)) {
        for (const auto& d : kNeighborSteps) {
            const Cell to = mover + d;
            if (!landable(rest, to)) continue;
            push_if_attached(Move{MoveKind::Slide, mover, to, mover, {}});
        }
    }

    std::sort(out.begin(), out.end(),
              [](const Move& a, const Move& b) { return move_key(a) < move_key(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct BfsNode {
    int dist = 0;
    Cell parent{};
    Move via{};
};

// Deterministic breadth-first search over mover positions. The attachment
// rule keeps the reachable set finite (every position hugs the structure).
std::map<Cell, BfsNode> bfs_positions(const Lattice& rest, const Cell& start) {
    std::map<Cell, BfsNode> nodes;
    nodes[start] = BfsNode{0, start, {}};
    std::queue<Cell> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
        const Cell pos = frontier.front();
        frontier.pop();
        const int dist = nodes[pos].dist;
        for (const Move& m : enumerate_moves(rest, pos)) {
            if (nodes.count(m.to)) continue;
            nodes[m.to] = BfsNode{dist + 1, pos, m};
            frontier.push(m.to);
        }
    }
    return nodes;
}

std::vector<Move> extract_path(const std::map<Cell, BfsNode>& nodes, const Cell& start,
                               const Cell& goal) {
    std::vector<Move> path;
    Cell cur = goal;
    while (cur != start) {
        const auto& node = nodes.at(cur);
        path.push_back(node.via);
        cur = node.parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

Lattice without_module(const Lattice& lattice, ModuleId id) {
    Lattice rest = lattice;
    rest.remove(id);
    return rest;
}

}  // namespace

std::vector<Move> feasible_moves(const Lattice& lattice, const Cell& mover) {
    const auto id = lattice.module_at(mover);
    if (!id) {
        throw PlanError(PlanError::Kind::NotOccupied,
                        "no module at " + to_string(mover));
    }
    if (!lattice.connected_without(mover)) {
        throw PlanError(PlanError::Kind::WouldDisconnect,
                        "removing the module at " + to_string(mover) +
                            " would disconnect the remaining configuration");
    }
    return enumerate_moves(without_module(lattice, *id), mover);
}

Plan plan_path(const Lattice& lattice, const Cell& from, const Cell& to) {
    const auto id = lattice.module_at(from);
    if (!id) {
        throw PlanError(PlanError::Kind::NotOccupied, "no module at " + to_string(from));
    }
    Plan plan;
    plan.provenance = Provenance::Relocation;
    if (from == to) return plan;
    if (!lattice.connected_without(from)) {
        throw PlanError(PlanError::Kind::WouldDisconnect,
                        "removing the module at " + to_string(from) +
                            " would disconnect the remaining configuration");
    }
    const Lattice rest = without_module(lattice, *id);
    if (!rest.is_free(to)) {
        throw PlanError(PlanError::Kind::Unreachable,
                        "target " + to_string(to) + " is not a free cell");
    }
    const auto nodes = bfs_positions(rest, from);
    if (!nodes.count(to)) {
        throw PlanError(PlanError::Kind::Unreachable,
                        "no pivot sequence reaches " + to_string(to));
    }
    for (const Move& m : extract_path(nodes, from, to)) {
        plan.steps.push_back(PlanStep{*id, false, {}, m});
    }
    return plan;
}

Plan assembly_plan(const Lattice& start, const std::vector<Cell>& right_targets,
                   const std::vector<Cell>& left_targets,
                   const std::vector<ModuleId>& stack_top_first) {
    const std::size_t total = right_targets.size() + left_targets.size();
    if (stack_top_first.size() < total) {
        std::ostringstream oss;
        oss << "need " << total << " modules but the stack holds " << stack_top_first.size();
        throw PlanError(PlanError::Kind::InsufficientModules, oss.str());
    }
    if (start.base_cells().empty()) {
        throw PlanError(PlanError::Kind::Unreachable, "lattice has no base pad");
    }

    std::array<std::set<Cell>, 2> remaining;
    for (const Cell& c : right_targets) remaining[0].insert(c);
    for (const Cell& c : left_targets) remaining[1].insert(c);
    for (int side = 0; side < 2; ++side) {
        for (const Cell& c : remaining[side]) {
            if (!start.is_free(c)) {
                throw PlanError(PlanError::Kind::Unreachable,
                                "target " + to_string(c) + " is not a free cell");
            }
        }
    }

    Plan plan;
    plan.provenance = Provenance::Assembly;
    Lattice lattice = start;
    std::size_t next_module = 0;
    int side = 0;  // deployment alternates sides, right first

    while (!remaining[0].empty() || !remaining[1].empty()) {
        if (remaining[side].empty()) side = 1 - side;
        if (static_cast<std::size_t>(side) >= start.base_cells().size()) {
            throw PlanError(PlanError::Kind::Unreachable,
                            "targets assigned to a side with no base pad: " +
                                to_string(*remaining[side].begin()));
        }
        const Cell base = lattice.base_cells()[side];
        if (lattice.occupied(base)) {
            throw PlanError(PlanError::Kind::Unreachable,
                            "base pad " + to_string(base) + " is blocked");
        }

        const auto nodes = bfs_positions(lattice, base);
        // Farthest currently reachable target first, so the structure grows
        // outward and no unfilled slot ends up behind a later module.
        const Cell* chosen = nullptr;
        int best_dist = -1;
        for (const Cell& t : remaining[side]) {
            auto it = nodes.find(t);
            if (it == nodes.end()) continue;
            if (it->second.dist > best_dist) {
                best_dist = it->second.dist;
                chosen = &t;
            }
        }
        if (!chosen) {
            throw PlanError(PlanError::Kind::Unreachable,
                            "no remaining target on this side is reachable: " +
                                to_string(*remaining[side].begin()));
        }

        const ModuleId id = stack_top_first[next_module++];
        plan.steps.push_back(PlanStep{id, true, base, {}});
        lattice.place(id, base);
        for (const Move& m : extract_path(nodes, base, *chosen)) {
            plan.steps.push_back(PlanStep{id, false, {}, m});
            lattice.move_module(id, m.to);
        }
        remaining[side].erase(*chosen);
        side = 1 - side;
    }
    return plan;
}

Plan replacement_plan(const Lattice& lattice, ModuleId failed_id, ModuleId new_id) {
    const auto failed_cell = lattice.cell_of(failed_id);
    if (!failed_cell) {
        std::ostringstream oss;
        oss << "failed module " << failed_id << " is not on the lattice";
        throw PlanError(PlanError::Kind::NotOccupied, oss.str());
    }

    std::vector<Cell> slots;
    for (const auto& d : kNeighborSteps) {
        const Cell c = *failed_cell + d;
        if (lattice.is_free(c)) slots.push_back(c);
    }
    if (slots.empty()) {
        throw PlanError(PlanError::Kind::NoAdjacentSlot,
                        "module at " + to_string(*failed_cell) + " is fully enclosed");
    }
    std::sort(slots.begin(), slots.end());

    // Nearest reachable slot over all free base pads; ties prefer the
    // lexicographically smaller slot, then the right pad.
    struct Candidate {
        int dist;
        Cell slot;
        std::size_t base_index;
    };
    std::optional<Candidate> best;
    std::vector<std::map<Cell, BfsNode>> searches(lattice.base_cells().size());
    for (std::size_t bi = 0; bi < lattice.base_cells().size(); ++bi) {
        const Cell base = lattice.base_cells()[bi];
        if (lattice.occupied(base)) continue;
        searches[bi] = bfs_positions(lattice, base);
        for (const Cell& slot : slots) {
            auto it = searches[bi].find(slot);
            if (it == searches[bi].end()) continue;
            const Candidate cand{it->second.dist, slot, bi};
            if (!best || std::tie(cand.dist, cand.slot, cand.base_index) <
                             std::tie(best->dist, best->slot, best->base_index)) {
                best = cand;
            }
        }
    }
    if (!best) {
        throw PlanError(PlanError::Kind::Unreachable,
                        "no empty cell beside " + to_string(*failed_cell) +
                            " is reachable from a free base pad");
    }

    Plan plan;
    plan.provenance = Provenance::Replacement;
    plan.failed_id = failed_id;
    const Cell base = lattice.base_cells()[best->base_index];
    plan.steps.push_back(PlanStep{new_id, true, base, {}});
    for (const Move& m : extract_path(searches[best->base_index], base, best->slot)) {
        plan.steps.push_back(PlanStep{new_id, false, {}, m});
    }
    return plan;
}

Lattice validate_plan(const Lattice& start, const Plan& plan) {
    Lattice lattice = start;
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        const PlanStep& step = plan.steps[i];
        const int idx = static_cast<int>(i);
        if (step.is_deploy) {
            if (!lattice.is_base(step.deploy_cell)) {
                throw PlanError(PlanError::Kind::InvalidStep,
                                "step " + std::to_string(i) + ": deploy cell " +
                                    to_string(step.deploy_cell) + " is not a base pad",
                                idx);
            }
            if (lattice.occupied(step.deploy_cell)) {
                throw PlanError(PlanError::Kind::InvalidStep,
                                "step " + std::to_string(i) + ": base pad is occupied", idx);
            }
            if (lattice.cell_of(step.module_id)) {
                throw PlanError(PlanError::Kind::InvalidStep,
                                "step " + std::to_string(i) + ": module already deployed", idx);
            }
            lattice.place(step.module_id, step.deploy_cell);
            continue;
        }

        const auto cur = lattice.cell_of(step.module_id);
        if (!cur) {
            throw PlanError(PlanError::Kind::InvalidStep,
                            "step " + std::to_string(i) + ": module " +
                                std::to_string(step.module_id) + " is not deployed",
                            idx);
        }
        if (*cur != step.move.from) {
            throw PlanError(PlanError::Kind::InvalidStep,
                            "step " + std::to_string(i) + ": module is at " + to_string(*cur) +
                                ", not " + to_string(step.move.from),
                            idx);
        }
        if (!lattice.connected_without(*cur)) {
            throw PlanError(PlanError::Kind::InvalidStep,
                            "step " + std::to_string(i) +
                                ": detaching the mover would disconnect the configuration",
                            idx);
        }
        const Lattice rest = without_module(lattice, step.module_id);
        const auto moves = enumerate_moves(rest, *cur);
        const auto match = std::find_if(moves.begin(), moves.end(), [&](const Move& m) {
            return m.kind == step.move.kind && m.to == step.move.to &&
                   m.anchor == step.move.anchor;
        });
        if (match == moves.end()) {
            throw PlanError(PlanError::Kind::InvalidStep,
                            "step " + std::to_string(i) + ": " +
                                std::string(to_string(step.move.kind)) + " " +
                                to_string(step.move.from) + " -> " + to_string(step.move.to) +
                                " is not a feasible move",
                            idx);
        }
        lattice.move_module(step.module_id, step.move.to);
    }
    return lattice;
}

std::string serialize_plan(const Plan& plan) {
    std::ostringstream oss;
    for (const auto& step : plan.steps) {
        if (step.is_deploy) {
            const std::string c = to_string(step.deploy_cell);
            oss << step.module_id << " place " << c << " -> " << c << " anchor " << c << "\n";
        } else {
            oss << step.module_id << " " << to_string(step.move.kind) << " "
                << to_string(step.move.from) << " -> " << to_string(step.move.to) << " anchor "
                << to_string(step.move.anchor) << "\n";
        }
    }
    return oss.str();
}

namespace {

Cell parse_cell_token(const std::string& token) {
    const auto comma = token.find(',');
    if (comma == std::string::npos) {
        throw PlanError(PlanError::Kind::InvalidStep, "bad cell token: " + token);
    }
    return Cell{std::stoi(token.substr(0, comma)), std::stoi(token.substr(comma + 1))};
}

}  // namespace

Plan parse_plan(const std::string& text) {
    Plan plan;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        ModuleId id;
        std::string kind, from_tok, arrow, to_tok, anchor_word, anchor_tok;
        if (!(ls >> id >> kind >> from_tok >> arrow >> to_tok >> anchor_word >> anchor_tok) ||
            arrow != "->" || anchor_word != "anchor") {
            throw PlanError(PlanError::Kind::InvalidStep,
                            "line " + std::to_string(line_no) + ": malformed plan line");
        }
        PlanStep step;
        step.module_id = id;
        if (kind == "place") {
            step.is_deploy = true;
            step.deploy_cell = parse_cell_token(from_tok);
        } else {
            step.move.from = parse_cell_token(from_tok);
            step.move.to = parse_cell_token(to_tok);
            step.move.anchor = parse_cell_token(anchor_tok);
            if (kind == "pivot90") {
                step.move.kind = MoveKind::Pivot90;
            } else if (kind == "pivot180") {
                step.move.kind = MoveKind::Pivot180;
            } else if (kind == "slide") {
                step.move.kind = MoveKind::Slide;
            } else {
                throw PlanError(PlanError::Kind::InvalidStep,
                                "line " + std::to_string(line_no) + ": unknown move kind " + kind);
            }
        }
        plan.steps.push_back(std::move(step));
    }
    return plan;
}

ShapeSpec parse_shape(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        rows.push_back(line);
    }
    while (!rows.empty() && rows.back().empty()) rows.pop_back();

    std::vector<Cell> bases;
    std::set<Cell> body;
    std::vector<Cell> targets;
    const int height = static_cast<int>(rows.size());
    for (int r = 0; r < height; ++r) {
        for (int cidx = 0; cidx < static_cast<int>(rows[r].size()); ++cidx) {
            const Cell cell{cidx, height - 1 - r};
            switch (rows[r][cidx]) {
                case '#': targets.push_back(cell); break;
                case 'B': bases.push_back(cell); break;
                case 'X': body.insert(cell); break;
                case '.': case ' ': break;
                default:
                    throw PlanError(PlanError::Kind::InvalidStep,
                                    std::string("unknown shape character '") + rows[r][cidx] + "'");
            }
        }
    }
    if (bases.empty() || bases.size() > 2) {
        throw PlanError(PlanError::Kind::InvalidStep,
                        "shape must contain one or two base pads, found " +
                            std::to_string(bases.size()));
    }
    // Right pad = larger x.
    std::sort(bases.begin(), bases.end(),
              [](const Cell& a, const Cell& b) { return std::tie(a.x, a.y) > std::tie(b.x, b.y); });

    ShapeSpec spec;
    spec.start = Lattice(bases, std::move(body));
    for (const Cell& t : targets) {
        if (bases.size() == 1) {
            spec.right_targets.push_back(t);
            continue;
        }
        const int d_right = std::abs(t.x - bases[0].x) + std::abs(t.y - bases[0].y);
        const int d_left = std::abs(t.x - bases[1].x) + std::abs(t.y - bases[1].y);
        if (d_right <= d_left) {
            spec.right_targets.push_back(t);
        } else {
            spec.left_targets.push_back(t);
        }
    }
    std::sort(spec.right_targets.begin(), spec.right_targets.end());
    std::sort(spec.left_targets.begin(), spec.left_targets.end());
    return spec;
}

}  // namespace sspare
