#pragma once

#include <utility>
#include <vector>

#include "sspare/errors.hpp"
#include "sspare/hazard.hpp"
#include "sspare/random.hpp"

namespace sspare {

// Weibull inverse-CDF draw: scale * (-ln u)^(1/shape).
// Throws DomainError unless u is strictly inside (0, 1).
double sample_failure_time(double shape, double scale, double u);

// First failure after time t0 for a unit aging under the same Weibull hazard
// (inverse of the conditional CDF given survival to t0). Used to draw
// successive fleet failures.
double sample_failure_time_after(double shape, double scale, double t0, double u);

// exp(-(t/scale)^shape) for t >= 0.
double survival(double shape, double scale, double t);

struct FailureDraw {
    double time_years = 0.0;
    Subsystem subsystem = Subsystem::Power;
    PowerMode power_mode = PowerMode::SolarArray;  // meaningful when subsystem == Power
};

// Failure time for one subsystem including the optional infant-mortality
// component (competing minimum). Consumes one uniform, or two when the
// infant component is enabled.
double sample_subsystem_time(const SubsystemHazard& h, const InfantMortality& infant,
                             RandomStream& stream);

// Competing-risks draw over enabled subsystems: samples a time for each in
// declaration order, returns the earliest with its subsystem; power failures
// get a submode from the mixture weights.
FailureDraw draw_subsystem_failure(const HazardModel& hazard, RandomStream& stream);

PowerMode draw_power_mode(const HazardModel& hazard, RandomStream& stream);

// Whole-satellite survival (product over enabled subsystems, independent
// competing risks) sampled on a uniform grid of `resolution` intervals.
std::vector<std::pair<double, double>> reliability_curve(const HazardModel& hazard,
                                                         double horizon_years,
                                                         int resolution);

// System survival at one time point (closed form).
double system_survival(const HazardModel& hazard, double t_years);

}  // namespace sspare
