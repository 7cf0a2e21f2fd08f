#include <map>
#include <queue>
#include <set>

#include "doctest.h"
#include "sspare/unloader.hpp"

using namespace sspare;

namespace {

UnloaderState replay_trace(UnloaderState state, const std::vector<TraceEntry>& trace) {
    for (const auto& e : trace) {
        if (e.motion_completion) {
            state = complete_motion(state, e.rod);
        } else {
            state = step(state, e.rod, e.event, true).state;
        }
    }
    return state;
}

}  // namespace

TEST_CASE("dock from idle secures the stack") {
    UnloaderState s = UnloaderState::initial({1, 2, 3});
    CHECK(s.stack_secured_by == Rod::Right);
    // the left connector can formally dock too
    const auto out = step(s, Rod::Left, UnloaderEvent::Dock);
    CHECK(out.state.rod(Rod::Left).phase == ConnectorPhase::DockedToTop);
    CHECK(out.state.stack_secured_by == Rod::Right);
}

TEST_CASE("full cycle of seven events moves one module to the pad") {
    // The right connector rests secured on the stack, so the free left
    // connector runs the cycle.
    UnloaderState s = UnloaderState::initial({42});
    auto apply = [&](UnloaderEvent e) { return step(s, Rod::Left, e); };

    s = apply(UnloaderEvent::Dock).state;
    s = apply(UnloaderEvent::Lift).state;  // not the securer: lifts freely
    CHECK(s.rod(Rod::Left).carried == 42);
    CHECK(s.stack.empty());
    CHECK(!s.stack_secured_by.has_value());
    s = complete_motion(s, Rod::Left);
    CHECK(s.rod(Rod::Left).phase == ConnectorPhase::AtSpiralGuide);
    s = apply(UnloaderEvent::SpiralTurn).state;
    s = apply(UnloaderEvent::Descend).state;
    s = complete_motion(s, Rod::Left);
    auto placed = apply(UnloaderEvent::Place);
    CHECK(placed.delivered == 42);
    s = placed.state;
    CHECK(!s.rod(Rod::Left).carried.has_value());
    s = apply(UnloaderEvent::Return).state;
    s = apply(UnloaderEvent::Reorient).state;
    CHECK(s.rod(Rod::Left).phase == ConnectorPhase::IdleAtStackTop);
}

TEST_CASE("the securing rod cannot lift even the last module unattended") {
    UnloaderState s = UnloaderState::initial({42});
    s = step(s, Rod::Right, UnloaderEvent::Dock).state;  // right is the securer
    CHECK_THROWS_AS(step(s, Rod::Right, UnloaderEvent::Lift), UnloaderError);
    s = step(s, Rod::Left, UnloaderEvent::Dock).state;
    CHECK_NOTHROW(step(s, Rod::Right, UnloaderEvent::Lift));
}

TEST_CASE("the securing rod may not lift an attended stack alone") {
    UnloaderState s = UnloaderState::initial({1, 2});
    s = step(s, Rod::Right, UnloaderEvent::Dock).state;
    CHECK_THROWS_AS(step(s, Rod::Right, UnloaderEvent::Lift), UnloaderError);

    // walk the left rod to ReturningUp, then the securing right rod still
    // may not leave
    s = step(s, Rod::Left, UnloaderEvent::Dock).state;
    s = step(s, Rod::Left, UnloaderEvent::Lift).state;
    s = complete_motion(s, Rod::Left);
    s = step(s, Rod::Left, UnloaderEvent::SpiralTurn).state;
    s = step(s, Rod::Left, UnloaderEvent::Descend).state;
    s = complete_motion(s, Rod::Left);
    s = step(s, Rod::Left, UnloaderEvent::Place).state;
    s = step(s, Rod::Left, UnloaderEvent::Return).state;
    CHECK(s.rod(Rod::Left).phase == ConnectorPhase::ReturningUp);
    CHECK(s.stack_secured_by == Rod::Right);
    try {
        step(s, Rod::Right, UnloaderEvent::Lift);
        FAIL("expected IllegalTransition");
    } catch (const UnloaderError& e) {
        CHECK(e.kind() == UnloaderError::Kind::IllegalTransition);
    }
}

TEST_CASE("events disabled outside their phase") {
    UnloaderState s = UnloaderState::initial({1});
    CHECK_THROWS_AS(step(s, Rod::Right, UnloaderEvent::SpiralTurn), UnloaderError);
    CHECK_THROWS_AS(step(s, Rod::Right, UnloaderEvent::Place), UnloaderError);
    CHECK_THROWS_AS(complete_motion(s, Rod::Right), UnloaderError);
    UnloaderState empty = UnloaderState::initial({});
    CHECK_THROWS_AS(step(empty, Rod::Right, UnloaderEvent::Dock), UnloaderError);
    try {
        step(empty, Rod::Right, UnloaderEvent::Dock);
    } catch (const UnloaderError& e) {
        CHECK(e.kind() == UnloaderError::Kind::StackEmpty);
    }
}

TEST_CASE("dispense hands the top module to the requested pad") {
    UnloaderState s = UnloaderState::initial({1, 2});
    const DispenseResult r = dispense(s, Rod::Right);
    CHECK(r.module == 1);
    CHECK(r.state.stack == std::vector<ModuleId>{2});
    CHECK(r.state.stack_secured_by == Rod::Left);
    CHECK(r.state.rod(Rod::Right).phase == ConnectorPhase::IdleAtStackTop);
}

TEST_CASE("dispensing an empty stack fails") {
    UnloaderState s = UnloaderState::initial({1});
    const DispenseResult r = dispense(s, Rod::Left);
    CHECK(r.module == 1);
    CHECK_THROWS_AS(dispense(r.state, Rod::Left), UnloaderError);
    try {
        dispense(r.state, Rod::Left);
    } catch (const UnloaderError& e) {
        CHECK(e.kind() == UnloaderError::Kind::StackEmpty);
    }
}

TEST_CASE("alternating dispense empties the stack in order") {
    UnloaderState s = UnloaderState::initial({1, 2, 3});
    const auto a = dispense(s, Rod::Right);
    CHECK(a.module == 1);
    const auto b = dispense(a.state, Rod::Left);
    CHECK(b.module == 2);
    const auto c = dispense(b.state, Rod::Right);
    CHECK(c.module == 3);
    CHECK(c.state.stack.empty());
}

TEST_CASE("a blocked pad refuses placement") {
    UnloaderState s = UnloaderState::initial({1});
    CHECK_THROWS_AS(dispense(s, Rod::Right, false), UnloaderError);
    try {
        dispense(s, Rod::Right, false);
    } catch (const UnloaderError& e) {
        CHECK(e.kind() == UnloaderError::Kind::BaseOccupied);
    }
}

TEST_CASE("dispense traces replay to the same final state") {
    UnloaderState s = UnloaderState::initial({1, 2, 3});
    const auto a = dispense(s, Rod::Right);
    CHECK(replay_trace(s, a.trace) == a.state);
    const auto b = dispense(a.state, Rod::Left);
    CHECK(replay_trace(a.state, b.trace) == b.state);
    // determinism: identical call, identical trace
    const auto a2 = dispense(s, Rod::Right);
    CHECK(a2.trace == a.trace);
    CHECK(a2.state == a.state);
}

// Exhaustive reachable-state exploration for small stacks; the acceptance
// suite runs the full depth-4 version.
namespace {

struct ModelState {
    UnloaderState u;
    std::vector<ModuleId> delivered;
    bool operator<(const ModelState& o) const {
        auto key = [](const ModelState& m) {
            return std::tuple(m.u.rods[0].phase, m.u.rods[0].carried, m.u.rods[1].phase,
                              m.u.rods[1].carried, m.u.stack, m.u.stack_secured_by, m.delivered);
        };
        return key(*this) < key(o);
    }
};

int explore_and_check(int stack_size, bool& ok) {
    std::vector<ModuleId> stack;
    for (int i = 1; i <= stack_size; ++i) stack.push_back(i);

    std::set<ModelState> seen;
    std::queue<ModelState> frontier;
    ModelState init{UnloaderState::initial(stack), {}};
    seen.insert(init);
    frontier.push(init);

    while (!frontier.empty()) {
        const ModelState cur = frontier.front();
        frontier.pop();

        // invariant: a non-empty stack is always secured by an attached rod
        if (!cur.u.stack.empty()) {
            if (!cur.u.stack_secured_by || !cur.u.attached(*cur.u.stack_secured_by)) ok = false;
        }
        // invariant: conservation of modules
        std::multiset<ModuleId> all(cur.u.stack.begin(), cur.u.stack.end());
        for (const Rod r : {Rod::Right, Rod::Left}) {
            if (cur.u.rod(r).carried) all.insert(*cur.u.rod(r).carried);
        }
        all.insert(cur.delivered.begin(), cur.delivered.end());
        if (static_cast<int>(all.size()) != stack_size) ok = false;
        // invariant: both rods never travel while the stack is unsecured
        auto moving = [](ConnectorPhase p) {
            return p == ConnectorPhase::Lifting || p == ConnectorPhase::Descending;
        };
        if (moving(cur.u.rods[0].phase) && moving(cur.u.rods[1].phase) &&
            !cur.u.stack.empty() && !cur.u.stack_secured_by) {
            ok = false;
        }

        for (const Rod r : {Rod::Right, Rod::Left}) {
            for (const UnloaderEvent e :
                 {UnloaderEvent::Dock, UnloaderEvent::Lift, UnloaderEvent::SpiralTurn,
                  UnloaderEvent::Descend, UnloaderEvent::Place, UnloaderEvent::Return,
                  UnloaderEvent::Reorient}) {
                try {
                    auto out = step(cur.u, r, e, true);
                    ModelState next{out.state, cur.delivered};
                    if (out.delivered) next.delivered.push_back(*out.delivered);
                    std::sort(next.delivered.begin(), next.delivered.end());
                    if (seen.insert(next).second) frontier.push(next);
                } catch (const UnloaderError&) {
                }
            }
            try {
                ModelState next{complete_motion(cur.u, r), cur.delivered};
                if (seen.insert(next).second) frontier.push(next);
            } catch (const UnloaderError&) {
            }
        }
    }
    return static_cast<int>(seen.size());
}

}  // namespace

TEST_CASE("model check: invariants hold over all reachable states (stacks <= 3)") {
    for (int n = 0; n <= 3; ++n) {
        bool ok = true;
        const int states = explore_and_check(n, ok);
        CHECK(ok);
        CHECK(states > 0);
    }
}

TEST_CASE("dispense traces serialize with times, carried module and stack depth") {
    UnloaderState s = UnloaderState::initial({7, 8});
    const auto r = dispense(s, Rod::Right);
    const std::string text = serialize_trace(s, r.trace, 0.0, 60.0);
    CHECK(text.find("t=0.000 right dock carried=none stack=2") == 0);
    CHECK(text.find("left dock") != std::string::npos);
    CHECK(text.find("right lift carried=7 stack=1") != std::string::npos);
    CHECK(text.find("right reach_guide carried=7") != std::string::npos);
    CHECK(text.find("right spiral_turn") != std::string::npos);
    CHECK(text.find("right place carried=none stack=1") != std::string::npos);
    // the passive spiral turn consumes no time
    const auto turn_pos = text.find("spiral_turn");
    const auto descend_pos = text.find("right descend");
    REQUIRE(turn_pos != std::string::npos);
    REQUIRE(descend_pos != std::string::npos);
    const std::string turn_t = text.substr(text.rfind("t=", turn_pos), 9);
    const std::string descend_t = text.substr(text.rfind("t=", descend_pos), 9);
    CHECK(turn_t == descend_t);
}
