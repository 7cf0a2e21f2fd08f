#include "sspare/fairing.hpp"

#include <sstream>

namespace sspare {

double FairingProfile::radius_at(double h) const {
    if (stations.empty()) return 0.0;
    if (h <= stations.front().height_m) return stations.front().radius_m;
    if (h > stations.back().height_m) return 0.0;
    for (std::size_t i = 1; i < stations.size(); ++i) {
        const auto& a = stations[i - 1];
        const auto& b = stations[i];
        if (h <= b.height_m) {
            const double t = (h - a.height_m) / (b.height_m - a.height_m);
            return a.radius_m + t * (b.radius_m - a.radius_m);
        }
    }
    return stations.back().radius_m;
}

double FairingProfile::apex_height() const {
    return stations.empty() ? 0.0 : stations.back().height_m;
}

double FairingProfile::clearance_end(double start, double min_radius) const {
    if (radius_at(start) < min_radius) return start;
    const double apex = apex_height();
    if (start >= apex) return start;  // radius is 0 above the apex
    double h = start;
    for (std::size_t i = 1; i < stations.size(); ++i) {
        const auto& a = stations[i - 1];
        const auto& b = stations[i];
        if (b.height_m <= h) continue;
        const double seg_start = std::max(h, a.height_m);
        const double r0 = radius_at(seg_start);
        const double r1 = b.radius_m;
        if (r0 < min_radius) return seg_start;
        if (r1 >= min_radius) {
            h = b.height_m;
            continue;
        }
        // Linear crossing inside this segment.
        const double span = b.height_m - seg_start;
        const double t = (r0 - min_radius) / (r0 - r1);
        return seg_start + t * span;
    }
    return apex;
}

FairingProfile FairingProfile::reference() {
    // Cylinder section then a tapering nose. Calibrated so the default module
    // stack above a 5.56 m satellite packs the reference 37 modules with the
    // rods clearing one overtravel above the stack.
    return FairingProfile{{
        {0.0, 2.30},
        {6.60, 2.30},
        {9.00, 1.70},
        {9.50, 1.45},
        {10.20, 1.00},
        {11.00, 0.25},
    }};
}

std::vector<std::string> validate(const FairingProfile& p, const std::string& prefix) {
    std::vector<std::string> out;
    if (p.stations.size() < 2) {
        out.push_back(prefix + "stations: need at least two stations");
        return out;
    }
    for (std::size_t i = 0; i < p.stations.size(); ++i) {
        if (!(p.stations[i].radius_m > 0.0)) {
            std::ostringstream oss;
            oss << prefix << "stations[" << i << "].radius_m: must be > 0";
            out.push_back(oss.str());
        }
        if (i > 0 && !(p.stations[i].height_m > p.stations[i - 1].height_m)) {
            std::ostringstream oss;
            oss << prefix << "stations[" << i << "].height_m: heights must be strictly increasing";
            out.push_back(oss.str());
        }
    }
    return out;
}

}  // namespace sspare
