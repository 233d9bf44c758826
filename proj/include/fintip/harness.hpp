#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fintip/config.hpp"
#include "fintip/simulator.hpp"

// Contact-localization experiment: per object, four taps rotated around
// the fingertip and four translated along the side, end-to-end through the
// simulator, the detector and back-projection.

namespace fintip {

enum class PositionLabel : int {
    Rot0 = 0,
    RotPi6,
    RotPi4,
    RotPi3,
    Trans0,
    Trans5,
    Trans10,
    Trans15,
};

inline constexpr int kPositionCount = 8;
inline constexpr std::array<PositionLabel, kPositionCount> kAllPositions = {
    PositionLabel::Rot0,   PositionLabel::RotPi6,  PositionLabel::RotPi4,
    PositionLabel::RotPi3, PositionLabel::Trans0,  PositionLabel::Trans5,
    PositionLabel::Trans10, PositionLabel::Trans15};

const char* to_string(PositionLabel label);   // e.g. "rot_pi6", "trans_10mm"
const char* pretty_label(PositionLabel label);  // e.g. "pi/6", "10 mm"

enum class TrialStatus { Ok, NoContact, NoIntersection };
const char* to_string(TrialStatus status);

struct TrialSpec {
    std::string object;
    SolidSpec solid;
    PositionLabel label;
    ContactPose pose;
};

struct TrialResult {
    std::string object;
    PositionLabel label = PositionLabel::Rot0;
    TrialStatus status = TrialStatus::Ok;
    std::optional<SurfacePointd> predicted;
    std::optional<SurfacePointd> truth;
    double error_mm = std::numeric_limits<double>::quiet_NaN();
};

// The eight tap poses, kAllPositions order: dome contacts at polar angles
// {0, pi/6, pi/4, pi/3} in the y = 0 meridian plane, then side contacts at
// z = d - {0, 5, 10, 15} mm below the junction circle. Throws ConfigError
// when the sensor is too short for the translation grid (d < 15 mm).
std::array<ContactPose, kPositionCount> generate_poses(const SensorGeometryd& g,
                                                       double indentation_mm);

// Commanded first-touch surface point for a label (test/reporting aid; the
// trial's ground truth is the simulator's deepest-penetration point).
Vector3d nominal_contact_point(const SensorGeometryd& g, PositionLabel label);

struct CellStats {
    double mean_mm = std::numeric_limits<double>::quiet_NaN();
    double std_mm = std::numeric_limits<double>::quiet_NaN();
    int n_ok = 0;
    int n_trials = 0;
};

struct AggregateReport {
    std::array<CellStats, kPositionCount> per_position{};
    std::vector<std::pair<std::string, CellStats>> per_object;
    double overall_mean_mm = std::numeric_limits<double>::quiet_NaN();
    int n_ok = 0;
    int n_trials = 0;
    StdMode std_mode = StdMode::Sample;
};

struct ExperimentResult {
    std::vector<TrialResult> trials;
    AggregateReport report;
};

// One run (8 contacts) per object: render -> optional seeded noise ->
// detect -> localize -> Euclidean error against the render's ground truth.
// Individual failures become trial statuses, never aborts.
ExperimentResult run_experiment(const std::vector<std::pair<std::string, SolidSpec>>& objects,
                                const RunConfig& cfg);

AggregateReport aggregate(const std::vector<TrialResult>& trials, StdMode mode);

enum class ReportFormat { Csv, Markdown, Json };
ReportFormat report_format_from(const std::string& name);  // ConfigError on unknown name

std::string emit_report(const AggregateReport& report, ReportFormat format);
AggregateReport parse_report_json(const std::string& json_text);

std::string trials_to_csv(const std::vector<TrialResult>& trials);

}  // namespace fintip
