#pragma once

#include <string>
#include <vector>

namespace sspare {

// Payload fairing inner envelope as a piecewise-linear radius profile over
// height above the payload adapter. Radius is 0 above the last station.
struct FairingProfile {
    struct Station {
        double height_m = 0.0;
        double radius_m = 0.0;
        bool operator==(const Station&) const = default;
    };

    std::vector<Station> stations;

    bool operator==(const FairingProfile&) const = default;

    double radius_at(double height_m) const;
    double apex_height() const;

    // Largest h >= start such that radius >= min_radius everywhere on
    // [start, h]. Returns start when the radius is already below min_radius.
    double clearance_end(double start_m, double min_radius_m) const;

    // Reference tapered profile shipped with this project. The station table
    // is a calibrated asset of the simulator, not vendor data: it is tuned so
    // the default module stack sizes to the reference capacity (see README).
    static FairingProfile reference();
};

std::vector<std::string> validate(const FairingProfile& p, const std::string& prefix = "");

}  // namespace sspare
