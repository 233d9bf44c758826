#include "fintip/harness.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fintip/pipeline.hpp"
#include "fintip/serialize.hpp"

namespace fintip {

namespace {

using nlohmann::json;

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::string fmt2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string cell_text(const CellStats& c) {
    if (c.n_ok == 0) return "n/a";
    return fmt2(c.mean_mm) + " ± " + fmt2(c.std_mm);
}

CellStats stats_of(const std::vector<double>& errors, int n_trials, StdMode mode) {
    CellStats c;
    c.n_trials = n_trials;
    c.n_ok = static_cast<int>(errors.size());
    if (errors.empty()) return c;
    double sum = 0.0;
    for (double e : errors) sum += e;
    c.mean_mm = sum / errors.size();
    double ss = 0.0;
    for (double e : errors) ss += (e - c.mean_mm) * (e - c.mean_mm);
    if (mode == StdMode::Sample)
        c.std_mm = errors.size() > 1 ? std::sqrt(ss / (errors.size() - 1.0)) : 0.0;
    else
        c.std_mm = std::sqrt(ss / errors.size());
    return c;
}

json cell_json(const CellStats& c) {
    json j;
    j["mean_mm"] = c.n_ok > 0 ? json(sig6(c.mean_mm)) : json(nullptr);
    j["std_mm"] = c.n_ok > 0 ? json(sig6(c.std_mm)) : json(nullptr);
    j["n_ok"] = c.n_ok;
    j["n_trials"] = c.n_trials;
    return j;
}

CellStats cell_from_json(const json& j) {
    CellStats c;
    c.n_ok = j.at("n_ok").get<int>();
    c.n_trials = j.at("n_trials").get<int>();
    if (!j.at("mean_mm").is_null()) c.mean_mm = j.at("mean_mm").get<double>();
    if (!j.at("std_mm").is_null()) c.std_mm = j.at("std_mm").get<double>();
    return c;
}

}  // namespace

const char* to_string(PositionLabel label) {
    switch (label) {
        case PositionLabel::Rot0: return "rot_0";
        case PositionLabel::RotPi6: return "rot_pi6";
        case PositionLabel::RotPi4: return "rot_pi4";
        case PositionLabel::RotPi3: return "rot_pi3";
        case PositionLabel::Trans0: return "trans_0mm";
        case PositionLabel::Trans5: return "trans_5mm";
        case PositionLabel::Trans10: return "trans_10mm";
        case PositionLabel::Trans15: return "trans_15mm";
    }
    return "?";
}

const char* pretty_label(PositionLabel label) {
    switch (label) {
        case PositionLabel::Rot0: return "rot 0";
        case PositionLabel::RotPi6: return "rot pi/6";
        case PositionLabel::RotPi4: return "rot pi/4";
        case PositionLabel::RotPi3: return "rot pi/3";
        case PositionLabel::Trans0: return "trans 0 mm";
        case PositionLabel::Trans5: return "trans 5 mm";
        case PositionLabel::Trans10: return "trans 10 mm";
        case PositionLabel::Trans15: return "trans 15 mm";
    }
    return "?";
}

const char* to_string(TrialStatus status) {
    switch (status) {
        case TrialStatus::Ok: return "ok";
        case TrialStatus::NoContact: return "no-contact";
        case TrialStatus::NoIntersection: return "no-intersection";
    }
    return "?";
}

Vector3d nominal_contact_point(const SensorGeometryd& g, PositionLabel label) {
    const double r = g.radius, d = g.dome_center_z;
    switch (label) {
        case PositionLabel::Rot0: return {0.0, 0.0, d + r};
        case PositionLabel::RotPi6: return {r * std::sin(M_PI / 6), 0.0, d + r * std::cos(M_PI / 6)};
        case PositionLabel::RotPi4: return {r * std::sin(M_PI / 4), 0.0, d + r * std::cos(M_PI / 4)};
        case PositionLabel::RotPi3: return {r * std::sin(M_PI / 3), 0.0, d + r * std::cos(M_PI / 3)};
        case PositionLabel::Trans0: return {r, 0.0, d};
        case PositionLabel::Trans5: return {r, 0.0, d - 5.0};
        case PositionLabel::Trans10: return {r, 0.0, d - 10.0};
        case PositionLabel::Trans15: return {r, 0.0, d - 15.0};
    }
    throw DomainError("bad position label");
}

std::array<ContactPose, kPositionCount> generate_poses(const SensorGeometryd& g,
                                                       double indentation_mm) {
    g.validate();
    if (!(indentation_mm >= 0.0)) throw ConfigError("indentation_mm must be >= 0");
    if (g.dome_center_z < 15.0)
        throw ConfigError("translation grid needs d_mm >= 15 (contacts down to 15 mm below the junction)");

    std::array<ContactPose, kPositionCount> poses;
    for (int i = 0; i < kPositionCount; ++i) {
        const PositionLabel label = kAllPositions[i];
        const Vector3d s = nominal_contact_point(g, label);
        Vector3d n;
        if (i < 4) {
            n = (s - Vector3d{0.0, 0.0, g.dome_center_z}).normalized();  // dome normal
        } else {
            n = Vector3d{s.x(), s.y(), 0.0}.normalized();  // radial cylinder normal
        }
        poses[i] = pose_on_surface(s, n, indentation_mm);
    }
    return poses;
}

ExperimentResult run_experiment(const std::vector<std::pair<std::string, SolidSpec>>& objects,
                                const RunConfig& cfg) {
    cfg.validate();
    const auto poses = generate_poses(cfg.geometry, cfg.indentation_mm);

    ExperimentResult result;
    std::uint64_t trial_index = 0;
    for (const auto& [name, solid] : objects) {
        for (int i = 0; i < kPositionCount; ++i, ++trial_index) {
            TrialResult trial;
            trial.object = name;
            trial.label = kAllPositions[i];
            const ImprintRender render =
                render_imprint(solid, poses[i], cfg.geometry, cfg.intrinsics,
                               cfg.image_width, cfg.image_height, cfg.intensity_scale_mm);
            trial.truth = render.ground_truth;

            ImageXd contact = render.image;
            if (cfg.noise_sigma > 0.0)
                contact = add_noise(contact, cfg.noise_sigma, mix64(cfg.seed ^ (trial_index + 1)));

            const ImageXd reference = ImageXd::Zero(cfg.image_height, cfg.image_width);
            const auto detection = detect_contact(reference, contact, cfg.pipeline);
            if (!detection || !trial.truth) {
                trial.status = TrialStatus::NoContact;
            } else {
                try {
                    const SurfacePointd predicted =
                        localize_contact(detection->pixel, cfg.intrinsics, cfg.geometry);
                    trial.predicted = predicted;
                    trial.status = TrialStatus::Ok;
                    trial.error_mm = (predicted.position - trial.truth->position).norm();
                } catch (const NoIntersectionError&) {
                    trial.status = TrialStatus::NoIntersection;
                }
            }
            result.trials.push_back(std::move(trial));
        }
    }
    result.report = aggregate(result.trials, cfg.std_mode);
    return result;
}

AggregateReport aggregate(const std::vector<TrialResult>& trials, StdMode mode) {
    AggregateReport report;
    report.std_mode = mode;
    report.n_trials = static_cast<int>(trials.size());

    std::array<std::vector<double>, kPositionCount> by_position;
    std::array<int, kPositionCount> position_totals{};
    std::vector<std::string> object_order;
    std::map<std::string, std::vector<double>> by_object;
    std::map<std::string, int> object_totals;
    std::vector<double> all;

    for (const auto& t : trials) {
        const int pi = static_cast<int>(t.label);
        ++position_totals[pi];
        if (!object_totals.count(t.object)) object_order.push_back(t.object);
        ++object_totals[t.object];
        if (t.status == TrialStatus::Ok) {
            by_position[pi].push_back(t.error_mm);
            by_object[t.object].push_back(t.error_mm);
            all.push_back(t.error_mm);
        }
    }

    for (int i = 0; i < kPositionCount; ++i)
        report.per_position[i] = stats_of(by_position[i], position_totals[i], mode);
    for (const auto& name : object_order)
        report.per_object.emplace_back(name,
                                       stats_of(by_object[name], object_totals[name], mode));
    report.n_ok = static_cast<int>(all.size());
    if (!all.empty()) report.overall_mean_mm = stats_of(all, report.n_trials, mode).mean_mm;
    return report;
}

ReportFormat report_format_from(const std::string& name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "md" || name == "markdown") return ReportFormat::Markdown;
    if (name == "json") return ReportFormat::Json;
    throw ConfigError("unknown report format '" + name + "' (expected csv, md or json)");
}

std::string emit_report(const AggregateReport& report, ReportFormat format) {
    std::ostringstream out;
    const char* std_name = report.std_mode == StdMode::Sample ? "sample" : "population";

    switch (format) {
        case ReportFormat::Csv: {
            out << "table,label,mean_mm,std_mm,n_ok,n_trials\n";
            for (int i = 0; i < kPositionCount; ++i) {
                const auto& c = report.per_position[i];
                out << "position," << to_string(kAllPositions[i]) << ","
                    << (c.n_ok ? fmt6(c.mean_mm) : "") << "," << (c.n_ok ? fmt6(c.std_mm) : "")
                    << "," << c.n_ok << "," << c.n_trials << "\n";
            }
            for (const auto& [name, c] : report.per_object) {
                out << "object," << name << "," << (c.n_ok ? fmt6(c.mean_mm) : "") << ","
                    << (c.n_ok ? fmt6(c.std_mm) : "") << "," << c.n_ok << "," << c.n_trials
                    << "\n";
            }
            out << "overall,," << (report.n_ok ? fmt6(report.overall_mean_mm) : "") << ",,"
                << report.n_ok << "," << report.n_trials << "\n";
            out << "# std_mode," << std_name << "\n";
            break;
        }
        case ReportFormat::Markdown: {
            out << "Contact errors per position (mm)\n\n|";
            for (const auto label : kAllPositions) out << " " << pretty_label(label) << " |";
            out << "\n|";
            for (int i = 0; i < kPositionCount; ++i) out << " --- |";
            out << "\n|";
            for (const auto& c : report.per_position) out << " " << cell_text(c) << " |";
            out << "\n\nContact errors per object (mm)\n\n|";
            for (const auto& [name, c] : report.per_object) out << " " << name << " |";
            out << "\n|";
            for (size_t i = 0; i < report.per_object.size(); ++i) out << " --- |";
            out << "\n|";
            for (const auto& [name, c] : report.per_object) out << " " << cell_text(c) << " |";
            out << "\n\nMean ± std (" << std_name << ") over ok trials; "
                << report.n_ok << "/" << report.n_trials << " trials ok";
            if (report.n_ok > 0)
                out << "; overall mean " << fmt2(report.overall_mean_mm) << " mm";
            out << ".\n";
            break;
        }
        case ReportFormat::Json: {
            json j;
            j["std_mode"] = std_name;
            j["n_ok"] = report.n_ok;
            j["n_trials"] = report.n_trials;
            j["overall_mean_mm"] =
                report.n_ok ? json(sig6(report.overall_mean_mm)) : json(nullptr);
            json positions = json::array();
            for (int i = 0; i < kPositionCount; ++i) {
                json c = cell_json(report.per_position[i]);
                c["label"] = to_string(kAllPositions[i]);
                positions.push_back(std::move(c));
            }
            j["per_position"] = std::move(positions);
            json objects = json::array();
            for (const auto& [name, cell] : report.per_object) {
                json c = cell_json(cell);
                c["object"] = name;
                objects.push_back(std::move(c));
            }
            j["per_object"] = std::move(objects);
            out << j.dump(2) << "\n";
            break;
        }
    }
    return out.str();
}

AggregateReport parse_report_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("report JSON parse error: ") + e.what());
    }
    AggregateReport report;
    report.std_mode =
        j.at("std_mode").get<std::string>() == "population" ? StdMode::Population : StdMode::Sample;
    report.n_ok = j.at("n_ok").get<int>();
    report.n_trials = j.at("n_trials").get<int>();
    if (!j.at("overall_mean_mm").is_null())
        report.overall_mean_mm = j.at("overall_mean_mm").get<double>();
    const auto& positions = j.at("per_position");
    if (positions.size() != kPositionCount)
        throw ConfigError("report JSON: per_position must have 8 cells");
    for (size_t i = 0; i < positions.size(); ++i)
        report.per_position[i] = cell_from_json(positions[i]);
    for (const auto& c : j.at("per_object"))
        report.per_object.emplace_back(c.at("object").get<std::string>(), cell_from_json(c));
    return report;
}

std::string trials_to_csv(const std::vector<TrialResult>& trials) {
    std::ostringstream out;
    out << "object,position_label,pred_x,pred_y,pred_z,true_x,true_y,true_z,error_mm,status\n";
    for (const auto& t : trials) {
        out << t.object << "," << to_string(t.label) << ",";
        if (t.predicted)
            out << fmt6(t.predicted->position.x()) << "," << fmt6(t.predicted->position.y())
                << "," << fmt6(t.predicted->position.z());
        else
            out << ",,";
        out << ",";
        if (t.truth)
            out << fmt6(t.truth->position.x()) << "," << fmt6(t.truth->position.y()) << ","
                << fmt6(t.truth->position.z());
        else
            out << ",,";
        out << ",";
        if (t.status == TrialStatus::Ok) out << fmt6(t.error_mm);
        out << "," << to_string(t.status) << "\n";
    }
    return out.str();
}

}  // namespace fintip
