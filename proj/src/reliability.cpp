#include "sspare/reliability.hpp"

#include <cmath>
#include <sstream>

namespace sspare {

double sample_failure_time(double shape, double scale, double u) {
    if (!(shape > 0.0) || !(scale > 0.0)) {
        throw DomainError("Weibull shape and scale must be > 0");
    }
    if (!(u > 0.0 && u < 1.0)) {
        std::ostringstream oss;
        oss << "uniform variate must be in (0, 1), got " << u;
        throw DomainError(oss.str());
    }
    return scale * std::pow(-std::log(u), 1.0 / shape);
}

double sample_failure_time_after(double shape, double scale, double t0, double u) {
    if (!(t0 >= 0.0)) throw DomainError("t0 must be >= 0");
    if (!(u > 0.0 && u < 1.0)) throw DomainError("uniform variate must be in (0, 1)");
    // Conditional quantile given survival to t0:
    // t = scale * ((t0/scale)^shape - ln u)^(1/shape).
    const double base = std::pow(t0 / scale, shape);
    return scale * std::pow(base - std::log(u), 1.0 / shape);
}

double survival(double shape, double scale, double t) {
    if (!(t >= 0.0)) throw DomainError("t must be >= 0");
    return std::exp(-std::pow(t / scale, shape));
}

double sample_subsystem_time(const SubsystemHazard& h, const InfantMortality& infant,
                             RandomStream& stream) {
    double t = sample_failure_time(h.shape, h.scale_years, stream.uniform01());
    if (infant.enabled) {
        const double early =
            sample_failure_time(infant.shape, infant.scale_years, stream.uniform01());
        t = std::min(t, early);
    }
    return t;
}

PowerMode draw_power_mode(const HazardModel& hazard, RandomStream& stream) {
    const double u = stream.uniform01();
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        acc += hazard.power_mode_weights[i];
        if (u < acc) return static_cast<PowerMode>(i);
    }
    return PowerMode::Battery;
}

FailureDraw draw_subsystem_failure(const HazardModel& hazard, RandomStream& stream) {
    FailureDraw best;
    bool any = false;
    for (int i = 0; i < kSubsystemCount; ++i) {
        const auto& sub = hazard.subsystems[i];
        if (!sub.enabled) continue;
        const double t = sample_subsystem_time(sub, hazard.infant, stream);
        if (!any || t < best.time_years) {
            best.time_years = t;
            best.subsystem = static_cast<Subsystem>(i);
            any = true;
        }
    }
    if (!any) throw DomainError("hazard model has no enabled subsystem");
    if (best.subsystem == Subsystem::Power) {
        best.power_mode = draw_power_mode(hazard, stream);
    }
    return best;
}

double system_survival(const HazardModel& hazard, double t_years) {
    double s = 1.0;
    for (int i = 0; i < kSubsystemCount; ++i) {
        const auto& sub = hazard.subsystems[i];
        if (!sub.enabled) continue;
        s *= survival(sub.shape, sub.scale_years, t_years);
        if (hazard.infant.enabled) {
            s *= survival(hazard.infant.shape, hazard.infant.scale_years, t_years);
        }
    }
    return s;
}

std::vector<std::pair<double, double>> reliability_curve(const HazardModel& hazard,
                                                         double horizon_years, int resolution) {
    if (!(horizon_years > 0.0)) throw DomainError("horizon must be > 0");
    if (resolution < 1) throw DomainError("resolution must be >= 1");
    std::vector<std::pair<double, double>> curve;
    curve.reserve(resolution + 1);
    for (int i = 0; i <= resolution; ++i) {
        const double t = horizon_years * static_cast<double>(i) / resolution;
        curve.emplace_back(t, system_survival(hazard, t));
    }
    return curve;
}

}  // namespace sspare
