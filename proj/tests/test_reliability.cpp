#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "sspare/reliability.hpp"

using namespace sspare;

TEST_CASE("inverse-CDF fixed points") {
    const double u = std::exp(-1.0);
    CHECK(sample_failure_time(1.0, 10.0, u) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(sample_failure_time(2.0, 10.0, u) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(sample_failure_time(0.7, 5.0, u) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("uniform variate domain is enforced") {
    CHECK_THROWS_AS(sample_failure_time(1.0, 10.0, 0.0), DomainError);
    CHECK_THROWS_AS(sample_failure_time(1.0, 10.0, 1.0), DomainError);
    CHECK_THROWS_AS(sample_failure_time(1.0, 10.0, -0.5), DomainError);
    CHECK_THROWS_AS(sample_failure_time(0.0, 10.0, 0.5), DomainError);
}

TEST_CASE("empirical mean matches the closed form") {
    RandomStream rng(101);
    double sum = 0.0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) sum += sample_failure_time(2.0, 10.0, rng.uniform01());
    const double expected = 10.0 * std::tgamma(1.5);
    CHECK(sum / n == doctest::Approx(expected).epsilon(0.05 / expected));
}

TEST_CASE("survival closed form") {
    CHECK(survival(3.0, 7.0, 0.0) == 1.0);
    CHECK(survival(1.0, 10.0, 10.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(survival(1.0, 10.0, -1.0), DomainError);
}

TEST_CASE("sampled survival tracks the closed form") {
    RandomStream rng(102);
    const int n = 100'000;
    int alive = 0;
    for (int i = 0; i < n; ++i) {
        if (sample_failure_time(2.0, 10.0, rng.uniform01()) > 7.0) ++alive;
    }
    CHECK(static_cast<double>(alive) / n ==
          doctest::Approx(survival(2.0, 10.0, 7.0)).epsilon(0.015));
}

TEST_CASE("KS statistic under 0.01 for the reference parameter set") {
    for (const auto& [shape, scale] : {std::pair{1.0, 10.0}, {2.0, 10.0}, {0.7, 5.0}}) {
        RandomStream rng(103);
        std::vector<double> sample;
        sample.reserve(100'000);
        for (int i = 0; i < 100'000; ++i) {
            sample.push_back(sample_failure_time(shape, scale, rng.uniform01()));
        }
        CHECK(oracle::ks_statistic(std::move(sample), shape, scale) < 0.01);
    }
}

TEST_CASE("conditional arrivals continue the same law") {
    // conditioning at zero reduces to the plain draw
    RandomStream a(104), b(104);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform01();
        CHECK(sample_failure_time_after(3.0, 17.0, 0.0, u) ==
              doctest::Approx(sample_failure_time(3.0, 17.0, b.uniform01())).epsilon(1e-12));
    }
    // arrivals strictly advance
    RandomStream rng(105);
    double t = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double next = sample_failure_time_after(3.0, 17.0, t, rng.uniform01());
        CHECK(next > t);
        t = next;
    }
    // conditional survival matches the hazard's memory: P(T > s+dt | T > s)
    RandomStream rng2(106);
    const double s = 9.0, dt = 3.0;
    int alive = 0;
    const int n = 100'000;
    for (int i = 0; i < n; ++i) {
        if (sample_failure_time_after(3.0, 17.0, s, rng2.uniform01()) > s + dt) ++alive;
    }
    const double expected = survival(3.0, 17.0, s + dt) / survival(3.0, 17.0, s);
    CHECK(static_cast<double>(alive) / n == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("competing risks pick the earliest enabled subsystem") {
    HazardModel only_power = HazardModel::geo_default();
    for (int i = 1; i < kSubsystemCount; ++i) only_power.subsystems[i].enabled = false;
    RandomStream rng(107);
    for (int i = 0; i < 100; ++i) {
        CHECK(draw_subsystem_failure(only_power, rng).subsystem == Subsystem::Power);
    }
}

TEST_CASE("competing-risks survival matches the closed-form product") {
    const HazardModel h = HazardModel::geo_default();
    RandomStream rng(108);
    const int n = 100'000;
    std::vector<double> times;
    times.reserve(n);
    for (int i = 0; i < n; ++i) times.push_back(draw_subsystem_failure(h, rng).time_years);
    for (const double t : {1.0, 7.0, 15.0}) {
        int alive = 0;
        for (const double x : times) {
            if (x > t) ++alive;
        }
        CHECK(std::abs(static_cast<double>(alive) / n - system_survival(h, t)) < 0.01);
    }
}

TEST_CASE("solar-array share of power failures matches the GEO preset") {
    const HazardModel h = HazardModel::geo_default();
    RandomStream rng(109);
    int power = 0, sao = 0;
    for (int i = 0; i < 100'000; ++i) {
        const FailureDraw d = draw_subsystem_failure(h, rng);
        if (d.subsystem == Subsystem::Power) {
            ++power;
            if (d.power_mode == PowerMode::SolarArray) ++sao;
        }
    }
    REQUIRE(power > 10'000);
    CHECK(std::abs(static_cast<double>(sao) / power - 0.69) < 0.01);
}

TEST_CASE("power dominates late-life failures at the calibrated share") {
    const HazardModel h = HazardModel::geo_default();
    RandomStream rng(110);
    int late = 0, late_power = 0;
    for (int i = 0; i < 100'000; ++i) {
        const FailureDraw d = draw_subsystem_failure(h, rng);
        if (d.time_years > 10.0) {
            ++late;
            if (d.subsystem == Subsystem::Power) ++late_power;
        }
    }
    REQUIRE(late > 10'000);
    CHECK(std::abs(static_cast<double>(late_power) / late - 0.44) < 0.02);
}

TEST_CASE("reliability curve properties") {
    HazardModel single = HazardModel::geo_default();
    for (int i = 1; i < kSubsystemCount; ++i) single.subsystems[i].enabled = false;
    const auto curve = reliability_curve(single, 20.0, 40);
    for (const auto& [t, s] : curve) {
        const auto& power = single.at(Subsystem::Power);
        CHECK(s == doctest::Approx(survival(power.shape, power.scale_years, t)).epsilon(1e-12));
    }

    HazardModel two_exp;
    for (auto& sub : two_exp.subsystems) sub.enabled = false;
    two_exp.at(Subsystem::Power) = {true, 1.0, 10.0};
    two_exp.at(Subsystem::Aocs) = {true, 1.0, 10.0};
    for (const auto& [t, s] : reliability_curve(two_exp, 20.0, 20)) {
        CHECK(s == doctest::Approx(survival(1.0, 5.0, t)).epsilon(1e-12));
    }
}

TEST_CASE("the calibrated defaults wear out: hazard grows past the knee") {
    const HazardModel h = HazardModel::geo_default();
    auto hazard_rate = [&](double t) {
        const double dt = 0.1;
        return (std::log(system_survival(h, t - dt)) - std::log(system_survival(h, t + dt))) /
               (2.0 * dt);
    };
    CHECK(hazard_rate(8.0) > hazard_rate(6.0));
}

TEST_CASE("streams are reproducible and splits are independent") {
    RandomStream a(7), b(7);
    for (int i = 0; i < 1000; ++i) CHECK(a.uniform01() == b.uniform01());

    RandomStream root(7);
    RandomStream c0 = root.split(0);
    RandomStream c0_again = root.split(0);
    RandomStream c1 = root.split(1);
    CHECK(c0.uniform01() == c0_again.uniform01());
    CHECK(c0.seed() != c1.seed());

    const HazardModel h = HazardModel::geo_default();
    RandomStream d(11), e(11);
    for (int i = 0; i < 50; ++i) {
        const FailureDraw x = draw_subsystem_failure(h, d);
        const FailureDraw y = draw_subsystem_failure(h, e);
        CHECK(x.time_years == y.time_years);
        CHECK(x.subsystem == y.subsystem);
    }
}

TEST_CASE("LEO preset slows power arrivals eightfold") {
    const HazardModel geo = HazardModel::geo_default();
    const HazardModel leo = HazardModel::leo_default();
    const auto& pg = geo.at(Subsystem::Power);
    const auto& pl = leo.at(Subsystem::Power);
    // Weibull cumulative hazard scales as eta^-beta.
    const double rate_ratio = std::pow(pg.scale_years / pl.scale_years, pg.shape);
    CHECK(rate_ratio == doctest::Approx(1.0 / 8.0).epsilon(1e-9));
    CHECK(leo.power_mode_weights[0] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("infant mortality component shortens early draws when enabled") {
    HazardModel h = HazardModel::geo_default();
    h.infant.enabled = true;
    h.infant.shape = 0.6;
    h.infant.scale_years = 0.35;
    RandomStream rng(112);
    int early = 0;
    const int n = 20'000;
    for (int i = 0; i < n; ++i) {
        if (draw_subsystem_failure(h, rng).time_years < 30.0 / 365.25) ++early;
    }
    CHECK(early > 1000);  // the wear-out-only preset has essentially none
}
