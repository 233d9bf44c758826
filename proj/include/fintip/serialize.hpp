#pragma once

#include <string>

#include "fintip/pipeline.hpp"
#include "fintip/simulator.hpp"

// JSON serialization of detection results and render sidecars. All floats
// are rounded to 6 significant digits so emitted files are byte-stable.

namespace fintip {

std::string fmt6(double v);  // "%.6g"
double sig6(double v);       // value rounded to 6 significant digits

// {"pixel": [u,v], "surface_mm": [x,y,z], "region": tag, "regions": [...]}
// The surface fields appear only when the prediction was localized.
std::string prediction_to_json(const ContactPrediction& prediction);

// {"status": "no-contact"}
std::string no_contact_json();

// {"contact": bool, "ground_truth_mm": [...], "ground_truth_region": tag,
//  "max_penetration_mm": v}
std::string sidecar_to_json(const ImprintRender& render);

}  // namespace fintip
