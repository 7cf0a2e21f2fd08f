#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sspare/errors.hpp"

namespace sspare {

using ModuleId = int;

// The two base modules are permanent graph nodes with reserved ids.
inline constexpr ModuleId kBaseRightId = -1;
inline constexpr ModuleId kBaseLeftId = -2;

struct Cell {
    int x = 0;
    int y = 0;

    auto operator<=>(const Cell&) const = default;
    Cell operator+(const Cell& o) const { return {x + o.x, y + o.y}; }
    Cell operator-(const Cell& o) const { return {x - o.x, y - o.y}; }
};

inline constexpr std::array<Cell, 4> kNeighborSteps{Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}};

std::string to_string(const Cell& c);

class LatticeError : public Error {
public:
    explicit LatticeError(const std::string& msg) : Error(msg) {}
};

// 2D grid occupancy of deployed modules. Base cells are the two anchor pads
// (one per satellite side, index 0 = right); body cells are the forbidden
// footprint of the satellite bus between them. A base cell with no module on
// it counts as free: a dispensed module lands there before pivoting away.
// Connectivity treats base and body cells as one rigid static structure.
class Lattice {
public:
    Lattice() = default;
    Lattice(std::vector<Cell> base_cells, std::set<Cell> body_cells);

    const std::vector<Cell>& base_cells() const { return base_cells_; }
    const std::set<Cell>& body_cells() const { return body_cells_; }
    const std::map<Cell, ModuleId>& occupancy() const { return occupancy_; }

    bool is_body(const Cell& c) const { return body_cells_.count(c) > 0; }
    bool is_base(const Cell& c) const;
    bool occupied(const Cell& c) const { return occupancy_.count(c) > 0; }
    // Free means placeable: no module and not part of the bus footprint.
    bool is_free(const Cell& c) const { return !occupied(c) && !is_body(c); }
    // True when a mover can dock against this cell (module or base pad).
    bool anchorable(const Cell& c) const { return occupied(c) || is_base(c); }

    std::optional<ModuleId> module_at(const Cell& c) const;
    std::optional<Cell> cell_of(ModuleId id) const;
    std::size_t module_count() const { return occupancy_.size(); }

    // Throws LatticeError when the cell is taken, forbidden, or the placement
    // would leave the structure disconnected.
    void place(ModuleId id, const Cell& c);
    void remove(ModuleId id);
    void move_module(ModuleId id, const Cell& to);

    // Edge-connectivity of occupied + base + body as a single component.
    bool connected() const;
    // Connectivity of the structure with one cell ignored.
    bool connected_without(const Cell& skip) const;

    bool operator==(const Lattice&) const = default;

private:
    bool connectivity_check(const Cell* skip) const;

    std::map<Cell, ModuleId> occupancy_;
    std::map<ModuleId, Cell> cells_by_id_;
    std::vector<Cell> base_cells_;
    std::set<Cell> body_cells_;
};

}  // namespace sspare
