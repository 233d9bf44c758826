#include "fintip/serialize.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace fintip {

namespace {
using nlohmann::json;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double sig6(double v) {
    if (!std::isfinite(v)) return v;
    return std::stod(fmt6(v));
}

std::string prediction_to_json(const ContactPrediction& prediction) {
    json j;
    j["status"] = "contact";
    j["pixel"] = {sig6(prediction.pixel.x()), sig6(prediction.pixel.y())};
    if (prediction.surface) {
        const auto& s = *prediction.surface;
        j["surface_mm"] = {sig6(s.position.x()), sig6(s.position.y()), sig6(s.position.z())};
        j["region"] = to_string(s.region);
    }
    json regions = json::array();
    for (const auto& r : prediction.regions) {
        json jr;
        jr["area"] = r.area();
        jr["centroid"] = {sig6(r.centroid.x()), sig6(r.centroid.y())};
        jr["mean_intensity"] = sig6(r.mean_intensity);
        regions.push_back(std::move(jr));
    }
    j["regions"] = std::move(regions);
    return j.dump(2) + "\n";
}

std::string no_contact_json() {
    json j;
    j["status"] = "no-contact";
    return j.dump(2) + "\n";
}

std::string sidecar_to_json(const ImprintRender& render) {
    json j;
    j["contact"] = render.ground_truth.has_value();
    if (render.ground_truth) {
        const auto& gt = *render.ground_truth;
        j["ground_truth_mm"] = {sig6(gt.position.x()), sig6(gt.position.y()),
                                sig6(gt.position.z())};
        j["ground_truth_region"] = to_string(gt.region);
        j["max_penetration_mm"] = sig6(render.max_penetration_mm);
    }
    return j.dump(2) + "\n";
}

}  // namespace fintip
