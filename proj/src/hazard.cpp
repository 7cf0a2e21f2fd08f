#include "sspare/hazard.hpp"

#include <cmath>
#include <sstream>

namespace sspare {

const char* to_string(Subsystem s) {
    switch (s) {
        case Subsystem::Power: return "power";
        case Subsystem::Aocs: return "aocs";
        case Subsystem::Ttc: return "ttc";
        case Subsystem::Mechanisms: return "mechanisms";
        case Subsystem::Other: return "other";
    }
    return "?";
}

const char* to_string(PowerMode m) {
    switch (m) {
        case PowerMode::SolarArray: return "solar_array";
        case PowerMode::Distribution: return "distribution";
        case PowerMode::Battery: return "battery";
    }
    return "?";
}

HazardModel HazardModel::geo_default() {
    // Common shape beta = 3; scale_s = eta_sys * share_s^(-1/beta) with
    // eta_sys = 13 years and long-run subsystem shares
    // {0.44, 0.20, 0.14, 0.12, 0.10}.
    HazardModel h;
    const double beta = 3.0;
    const double eta_sys = 13.0;
    const double shares[kSubsystemCount] = {0.44, 0.20, 0.14, 0.12, 0.10};
    for (int i = 0; i < kSubsystemCount; ++i) {
        h.subsystems[i].enabled = true;
        h.subsystems[i].shape = beta;
        h.subsystems[i].scale_years = eta_sys * std::pow(shares[i], -1.0 / beta);
    }
    h.power_mode_weights = {0.69, 0.19, 0.12};
    return h;
}

HazardModel HazardModel::leo_default() {
    HazardModel h = geo_default();
    // 1/8 the power-failure rate: scale the power eta by 8^(1/beta).
    auto& power = h.at(Subsystem::Power);
    power.scale_years *= std::pow(8.0, 1.0 / power.shape);
    h.power_mode_weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    return h;
}

std::vector<std::string> validate(const HazardModel& h, const std::string& prefix) {
    std::vector<std::string> out;
    for (int i = 0; i < kSubsystemCount; ++i) {
        const auto& sub = h.subsystems[i];
        if (!sub.enabled) continue;
        if (!(sub.shape > 0.0)) {
            std::ostringstream oss;
            oss << prefix << "subsystems." << to_string(static_cast<Subsystem>(i))
                << ".shape: must be > 0";
            out.push_back(oss.str());
        }
        if (!(sub.scale_years > 0.0)) {
            std::ostringstream oss;
            oss << prefix << "subsystems." << to_string(static_cast<Subsystem>(i))
                << ".scale_years: must be > 0";
            out.push_back(oss.str());
        }
    }
    double sum = 0.0;
    for (double w : h.power_mode_weights) {
        if (w < 0.0) out.push_back(prefix + "power_mode_weights: weights must be >= 0");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream oss;
        oss << prefix << "power_mode_weights: must sum to 1 (got " << sum << ")";
        out.push_back(oss.str());
    }
    if (h.infant.enabled) {
        if (!(h.infant.shape > 0.0)) out.push_back(prefix + "infant.shape: must be > 0");
        if (!(h.infant.scale_years > 0.0)) out.push_back(prefix + "infant.scale_years: must be > 0");
    }
    return out;
}

}  // namespace sspare
