#include <cmath>

#include "doctest.h"
#include "sspare/random.hpp"
#include "sspare/report.hpp"
#include "sspare/sizing.hpp"

using namespace sspare;

namespace {

// Random tapered fairing: a cylinder section then a strictly narrowing nose,
// the realistic envelope family for which capacity is monotone in the stack
// base height.
FairingProfile random_taper(RandomStream& rng) {
    FairingProfile p;
    double radius = 1.7 + rng.uniform01() * 2.0;
    double h = 0.0;
    p.stations.push_back({0.0, radius});
    h = 2.0 + rng.uniform01() * 6.0;
    p.stations.push_back({h, radius});  // cylinder
    const int segments = 2 + static_cast<int>(rng.uniform_index(4));
    for (int i = 0; i < segments; ++i) {
        h += 0.5 + rng.uniform01() * 2.5;
        radius *= 0.45 + rng.uniform01() * 0.5;
        p.stations.push_back({h, std::max(radius, 0.05)});
    }
    return p;
}

int capacity_or_zero(const FairingProfile& f, double height, const ModuleSpec& spec,
                     double rod_half_span) {
    try {
        return stack_capacity(f, height, spec, rod_half_span);
    } catch (const SizingError&) {
        return 0;
    }
}

}  // namespace

TEST_CASE("module power closed form") {
    const ModuleSpec spec;
    CHECK(module_power(spec, 0.0) == doctest::Approx(4.41 * 1361.0 * 0.25).epsilon(1e-12));

    ModuleSpec unit;
    unit.panel_area_m2 = 1.0;
    unit.irradiance_w_m2 = 1.0;
    unit.efficiency = 1.0;  // pure function; validation would reject this value
    CHECK(module_power(unit, 0.0) == doctest::Approx(1.0));

    ModuleSpec degraded;
    degraded.degradation_rate_per_year = 0.025;
    CHECK(module_power(degraded, 10.0) ==
          doctest::Approx(4.41 * 1361.0 * 0.25 * std::pow(0.975, 10.0)).epsilon(1e-12));
}

TEST_CASE("module power monotonicity") {
    RandomStream rng(11);
    for (int i = 0; i < 200; ++i) {
        ModuleSpec a;
        a.panel_area_m2 = 1.0 + rng.uniform01() * 8.0;
        a.irradiance_w_m2 = 800.0 + rng.uniform01() * 800.0;
        a.efficiency = 0.05 + rng.uniform01() * 0.9;
        a.degradation_rate_per_year = rng.uniform01() * 0.2;
        ModuleSpec b = a;
        b.panel_area_m2 += rng.uniform01() * 2.0;
        b.irradiance_w_m2 += rng.uniform01() * 100.0;
        b.efficiency = std::min(0.999, b.efficiency + rng.uniform01() * 0.05);
        CHECK(module_power(b, 0.0) >= module_power(a, 0.0));
        const double age1 = rng.uniform01() * 10.0;
        const double age2 = age1 + rng.uniform01() * 10.0;
        CHECK(module_power(a, age2) <= module_power(a, age1) + 1e-12);
    }
}

TEST_CASE("modules required") {
    const ModuleSpec spec;
    CHECK(modules_required(8600.0, spec) == 6);
    CHECK(modules_required(module_power(spec, 0.0), spec) == 1);
    CHECK(modules_required(55500.0, spec) == 37);
}

TEST_CASE("modules required is adjoint to array power at exact multiples") {
    const ModuleSpec spec;
    for (int n = 1; n <= 200; ++n) {
        CHECK(modules_required(array_power(n, spec, 0.0), spec) == n);
    }
    RandomStream rng(12);
    for (int i = 0; i < 100; ++i) {
        ModuleSpec s;
        s.panel_area_m2 = 0.5 + rng.uniform01() * 9.0;
        s.efficiency = 0.05 + rng.uniform01() * 0.9;
        const int n = 1 + static_cast<int>(rng.uniform_index(60));
        CHECK(modules_required(array_power(n, s, 0.0), s) == n);
    }
}

TEST_CASE("array power") {
    const ModuleSpec spec;
    CHECK(array_power(0, spec, 0.0) == 0.0);
    CHECK(std::round(array_power(37, spec, 0.0) / 100.0) / 10.0 == doctest::Approx(55.5));
    CHECK(std::llround(array_power(38, spec, 0.0) / 1000.0) == 57);
}

TEST_CASE("module mass and cost") {
    const ModuleSpec spec;
    CHECK(module_mass(spec) == doctest::Approx(125.0).epsilon(1e-12));
    CHECK(module_cost(spec) == 450000.0);
    CHECK(spec.cell_cost_total_usd / spec.cell_count == doctest::Approx(296.296).epsilon(1e-4));

    ModuleSpec tiny;
    tiny.structure_mass_kg = 1.0;
    tiny.battery_mass_kg = 1.0;
    tiny.other_mass_kg = 0.0;
    CHECK(module_mass(tiny) == 2.0);
    tiny.structure_mass_kg = 108.58;
    tiny.battery_mass_kg = 13.3;
    CHECK(module_mass(tiny) == doctest::Approx(121.88).epsilon(1e-12));

    ModuleSpec free_spec;
    free_spec.cell_cost_total_usd = 0.0;
    free_spec.structure_cost_usd = 0.0;
    free_spec.battery_electronics_cost_usd = 0.0;
    CHECK(module_cost(free_spec) == 0.0);
}

TEST_CASE("stack capacity against the reference fairing") {
    CHECK(stack_capacity(FairingProfile::reference(), 5.56, ModuleSpec{}, 1.3) == 37);
}

TEST_CASE("narrow cylinder cannot fit a module") {
    FairingProfile narrow{{{0.0, 1.0}, {12.0, 1.0}}};
    CHECK_THROWS_AS(stack_capacity(narrow, 3.0, ModuleSpec{}, 1.3), SizingError);
    try {
        stack_capacity(narrow, 3.0, ModuleSpec{}, 1.3);
    } catch (const SizingError& e) {
        CHECK(e.kind() == SizingError::Kind::NoFit);
    }
}

TEST_CASE("rod half-span below half the edge is a domain error") {
    CHECK_THROWS_AS(stack_capacity(FairingProfile::reference(), 5.56, ModuleSpec{}, 1.0),
                    DomainError);
}

TEST_CASE("stack capacity monotone in height and edge length") {
    RandomStream rng(13);
    const ModuleSpec spec;
    for (int i = 0; i < 40; ++i) {
        const FairingProfile f = random_taper(rng);
        const double h1 = rng.uniform01() * 6.0;
        const double h2 = h1 + rng.uniform01() * 4.0;
        CHECK(capacity_or_zero(f, h1, spec, 1.3) >= capacity_or_zero(f, h2, spec, 1.3));

        ModuleSpec small = spec;
        small.edge_length_m = 1.0 + rng.uniform01() * 1.5;
        ModuleSpec large = small;
        large.edge_length_m += rng.uniform01() * 1.5;
        const double h = rng.uniform01() * 5.0;
        CHECK(capacity_or_zero(f, h, small, 2.5) >= capacity_or_zero(f, h, large, 2.5));
    }
}

TEST_CASE("mission delta for the reference retrofit") {
    const Scenario s = Scenario::default_sspare();
    const MissionDelta d = mission_delta(s);
    CHECK(d.added_cost_usd == doctest::Approx(1.9e6).epsilon(1e-12));
    CHECK(d.added_mass_kg == doctest::Approx(750.0).epsilon(1e-12));
    CHECK(d.added_height_m == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mission delta decompositions") {
    Scenario s = Scenario::default_sspare();
    s.architecture.n_spares = 0;
    s.base_module_cost_usd = 0.0;
    s.base_module_mass_kg = 0.0;  // pure arithmetic; validation would reject 0
    MissionDelta d = mission_delta(s);
    CHECK(d.added_cost_usd == 0.0);
    CHECK(d.added_mass_kg == 0.0);
    CHECK(d.added_height_m == doctest::Approx(1.0));

    s.architecture.n_spares = 6;
    d = mission_delta(s);
    CHECK(d.added_mass_kg == doctest::Approx(750.0));  // same total, different split
}

TEST_CASE("mission delta requires the sspare architecture") {
    CHECK_THROWS_AS(mission_delta(Scenario::default_traditional()), SizingError);
    try {
        mission_delta(Scenario::default_traditional());
    } catch (const SizingError& e) {
        CHECK(e.kind() == SizingError::Kind::WrongArchitecture);
    }
}

TEST_CASE("comparison table reproduces the reference rows") {
    const std::vector<Scenario> scenarios{Scenario::default_traditional(),
                                          Scenario::default_servicer_extended(),
                                          Scenario::default_sspare()};
    const auto rows = build_comparison_table(scenarios, ComparisonRow::traditional_baseline());
    REQUIRE(rows.size() == 3);

    CHECK(format_dims(rows[0].main_body_dims_m) == "2.8 / 3.5 / 5.6");
    CHECK(format_dims(rows[1].main_body_dims_m) == "2.8 / 3.5 / 5.6");
    CHECK(format_dims(rows[2].main_body_dims_m) == "2.8 / 3.5 / 6.6");

    CHECK(format_power_kw(rows[0].max_power_w) == "8.6");
    CHECK(format_power_kw(rows[1].max_power_w) == "8.6");
    CHECK(format_power_kw(rows[2].max_power_w) == "15");

    CHECK(format_cost_mm(rows[0].dev_launch_cost_usd) == "400");
    CHECK(format_cost_mm(rows[1].dev_launch_cost_usd) == "465");
    CHECK(format_cost_mm(rows[2].dev_launch_cost_usd) == "402");

    CHECK(format_mass_kg(rows[0].launch_mass_kg) == "4725");
    CHECK(format_mass_kg(rows[1].launch_mass_kg) == "7051");
    CHECK(format_mass_kg(rows[2].launch_mass_kg) == "5475");

    CHECK(rows[0].life_expectancy_years == 17.0);
    CHECK(rows[1].life_expectancy_years == 22.0);
    CHECK(format_life(rows[2].life_expectancy_years, rows[2].life_open_ended) == "30+");
}

TEST_CASE("empty scenario list yields the baseline row only") {
    const auto rows = build_comparison_table({}, ComparisonRow::traditional_baseline());
    REQUIRE(rows.size() == 1);
    CHECK(rows[0] == ComparisonRow::traditional_baseline());
}

TEST_CASE("fairing utilization") {
    CHECK(fairing_utilization(10.0, 20.0, 10.0, 20.0) == FairingUtilization{1.0, 1.0});
    // Reference payload volume/mass against user-supplied launcher capacities.
    const auto u = fairing_utilization(67.5, 6688.4, 150.0, 15925.0);
    CHECK(u.volume_fraction == doctest::Approx(0.45).epsilon(1e-9));
    CHECK(u.mass_fraction == doctest::Approx(0.42).epsilon(1e-3));
    CHECK(fairing_utilization(0.0, 0.0, 1.0, 1.0) == FairingUtilization{0.0, 0.0});
    CHECK_THROWS_AS(fairing_utilization(1.0, 1.0, 0.0, 1.0), DomainError);
}
