#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace leray {

/// Structured record of one inequality/identity check.
struct VerificationReport {
    std::string name;
    std::map<std::string, double> parameters;
    std::vector<std::pair<std::string, double>> measured;  // (input id, constant)
    double bound_lo = 0.0;
    double bound_hi = 0.0;
    bool pass = false;
    std::string notes;

    /// pass iff every measured constant lies within [bound_lo, bound_hi].
    void finalize();

    nlohmann::ordered_json to_json() const;
};

}  // namespace leray
