#include "leraylab/report.hpp"

namespace leray {

void VerificationReport::finalize() {
    pass = true;
    for (const auto& [id, value] : measured) {
        if (!(value >= bound_lo && value <= bound_hi)) pass = false;
    }
}

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["parameters"] = parameters;
    nlohmann::ordered_json meas = nlohmann::ordered_json::array();
    for (const auto& [id, value] : measured) meas.push_back({{"input", id}, {"value", value}});
    j["measured"] = meas;
    j["bound"] = {{"lo", bound_lo}, {"hi", bound_hi}};
    j["verdict"] = pass ? "pass" : "fail";
    j["notes"] = notes;
    return j;
}

}  // namespace leray
