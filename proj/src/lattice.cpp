#include "sspare/lattice.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace sspare {

std::string to_string(const Cell& c) {
    std::ostringstream oss;
    oss << c.x << "," << c.y;
    return oss.str();
}

Lattice::Lattice(std::vector<Cell> base_cells, std::set<Cell> body_cells)
    : base_cells_(std::move(base_cells)), body_cells_(std::move(body_cells)) {
    for (const auto& b : base_cells_) {
        if (body_cells_.count(b)) {
            throw LatticeError("base cell " + to_string(b) + " overlaps the body footprint");
        }
    }
}

bool Lattice::is_base(const Cell& c) const {
    return std::find(base_cells_.begin(), base_cells_.end(), c) != base_cells_.end();
}

std::optional<ModuleId> Lattice::module_at(const Cell& c) const {
    auto it = occupancy_.find(c);
    if (it == occupancy_.end()) return std::nullopt;
    return it->second;
}

std::optional<Cell> Lattice::cell_of(ModuleId id) const {
    auto it = cells_by_id_.find(id);
    if (it == cells_by_id_.end()) return std::nullopt;
    return it->second;
}

void Lattice::place(ModuleId id, const Cell& c) {
    if (is_body(c)) throw LatticeError("cell " + to_string(c) + " is inside the body footprint");
    if (occupied(c)) throw LatticeError("cell " + to_string(c) + " is already occupied");
    if (cells_by_id_.count(id)) {
        std::ostringstream oss;
        oss << "module " << id << " is already placed";
        throw LatticeError(oss.str());
    }
    occupancy_[c] = id;
    cells_by_id_[id] = c;
    if (!connected()) {
        occupancy_.erase(c);
        cells_by_id_.erase(id);
        throw LatticeError("placing at " + to_string(c) + " would detach the structure");
    }
}

void Lattice::remove(ModuleId id) {
    auto it = cells_by_id_.find(id);
    if (it == cells_by_id_.end()) {
        std::ostringstream oss;
        oss << "module " << id << " is not on the lattice";
        throw LatticeError(oss.str());
    }
    occupancy_.erase(it->second);
    cells_by_id_.erase(it);
}

void Lattice::move_module(ModuleId id, const Cell& to) {
    auto it = cells_by_id_.find(id);
    if (it == cells_by_id_.end()) {
        std::ostringstream oss;
        oss << "module " << id << " is not on the lattice";
        throw LatticeError(oss.str());
    }
    const Cell from = it->second;
    if (to == from) return;
    if (is_body(to)) throw LatticeError("cell " + to_string(to) + " is inside the body footprint");
    if (occupied(to)) throw LatticeError("cell " + to_string(to) + " is already occupied");
    occupancy_.erase(from);
    occupancy_[to] = id;
    it->second = to;
    if (!connected()) {
        occupancy_.erase(to);
        occupancy_[from] = id;
        it->second = from;
        throw LatticeError("moving to " + to_string(to) + " would detach the structure");
    }
}

bool Lattice::connected() const { return connectivity_check(nullptr); }

bool Lattice::connected_without(const Cell& skip) const { return connectivity_check(&skip); }

bool Lattice::connectivity_check(const Cell* skip) const {
    // One component over occupied + base + body; the satellite bus and its
    // base pads form a rigid anchor everything must hang from.
    std::set<Cell> cells;
    for (const auto& [c, id] : occupancy_) {
        if (skip && c == *skip) continue;
        cells.insert(c);
    }
    for (const auto& b : base_cells_) cells.insert(b);
    for (const auto& b : body_cells_) cells.insert(b);
    if (cells.size() <= 1) return true;

    std::queue<Cell> frontier;
    std::set<Cell> seen;
    frontier.push(*cells.begin());
    seen.insert(*cells.begin());
    while (!frontier.empty()) {
        const Cell c = frontier.front();
        frontier.pop();
        for (const auto& d : kNeighborSteps) {
            const Cell n = c + d;
            if (cells.count(n) && !seen.count(n)) {
                seen.insert(n);
                frontier.push(n);
            }
        }
    }
    return seen.size() == cells.size();
}

}  // namespace sspare
