// fintip: simulate, detect, calibrate and benchmark contact localization
// for a finger-shaped camera-based tactile sensor.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fintip/config.hpp"
#include "fintip/geometry.hpp"
#include "fintip/harness.hpp"
#include "fintip/pipeline.hpp"
#include "fintip/png_io.hpp"
#include "fintip/serialize.hpp"
#include "fintip/simulator.hpp"

namespace fs = std::filesystem;
using namespace fintip;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write: " + path.string());
    out << content;
    if (!out) throw ConfigError("failed writing: " + path.string());
}

RunConfig load_config(const std::string& path) {
    return path.empty() ? RunConfig{} : RunConfig::load(path);
}

int cmd_simulate(const RunConfig& cfg, const std::string& scene_path,
                 const std::string& out_dir) {
    const SceneSpec scene = load_scene(scene_path);
    const ImprintRender render =
        render_imprint(scene.solid, scene.pose, cfg.geometry, cfg.intrinsics,
                       cfg.image_width, cfg.image_height, cfg.intensity_scale_mm);
    fs::create_directories(out_dir);
    save_png_gray((fs::path(out_dir) / "imprint.png").string(), render.image, 16);
    const std::string sidecar = sidecar_to_json(render);
    write_file(fs::path(out_dir) / "imprint.json", sidecar);
    std::cout << sidecar;
    return 0;
}

int cmd_detect(const RunConfig& cfg, const std::string& reference_path,
               const std::string& contact_path) {
    const ImageXd reference = load_png_gray(reference_path);
    const ImageXd contact = load_png_gray(contact_path);
    auto prediction = detect_contact(reference, contact, cfg.pipeline);
    if (!prediction) {
        std::cout << no_contact_json();
        return 0;
    }
    prediction->surface = localize_contact(prediction->pixel, cfg.intrinsics, cfg.geometry);
    std::cout << prediction_to_json(*prediction);
    return 0;
}

int cmd_calibrate(RunConfig cfg, const std::string& config_path,
                  const std::string& pair_path, std::string out_path) {
    const KeyValues kv = KeyValues::parse_file(pair_path);
    const double cx = kv.number("cx_px");
    const double cy = kv.number("cy_px");
    const Pixeld pixel{kv.number("pixel_u"), kv.number("pixel_v")};
    const Vector3d point{kv.number("surface_x_mm"), kv.number("surface_y_mm"),
                         kv.number("surface_z_mm")};
    kv.reject_unconsumed();

    const double alpha = calibrate_alpha<double>(pixel, point, cx, cy);
    if (!(alpha > 0.0))
        throw ConfigError("calibration produced non-positive alpha; check the pair");
    cfg.intrinsics = {alpha, cx, cy};

    // Residual of the fit, pixel units, against the projection equations.
    const double ru = (pixel.x() - cx) - alpha * point.x() / point.z();
    const double rv = (pixel.y() - cy) - alpha * point.y() / point.z();
    const double residual = std::hypot(ru, rv);

    if (out_path.empty()) out_path = config_path;
    if (out_path.empty())
        throw ConfigError("calibrate needs --config or --out to know where to write");
    cfg.save(out_path);
    std::cout << "{\n  \"alpha_px\": " << fmt6(alpha) << ",\n  \"residual_px\": "
              << fmt6(residual) << "\n}\n";
    return 0;
}

int cmd_experiment(RunConfig cfg, std::optional<std::uint64_t> seed,
                   const std::string& out_dir, const std::string& format_name) {
    if (seed) cfg.seed = *seed;
    const ReportFormat stdout_format = report_format_from(format_name);
    const ExperimentResult result = run_experiment(cfg.objects(), cfg);

    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "trials.csv", trials_to_csv(result.trials));
    write_file(fs::path(out_dir) / "report.csv", emit_report(result.report, ReportFormat::Csv));
    write_file(fs::path(out_dir) / "report.md",
               emit_report(result.report, ReportFormat::Markdown));
    write_file(fs::path(out_dir) / "report.json",
               emit_report(result.report, ReportFormat::Json));
    std::cout << emit_report(result.report, stdout_format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finger-shaped tactile sensor toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "configuration file (key = value)")
        ->envname("FINTIP_CONFIG");

    auto* simulate = app.add_subcommand("simulate", "render a synthetic imprint from a scene");
    std::string scene_path,
        sim_out = ".";
    simulate->add_option("--scene", scene_path, "scene description file")->required();
    simulate->add_option("--out", sim_out, "output directory");

    auto* detect = app.add_subcommand("detect", "detect and localize a contact in a PNG pair");
    std::string reference_path, contact_path;
    detect->add_option("reference", reference_path, "reference (no contact) PNG")->required();
    detect->add_option("contact", contact_path, "in-contact PNG")->required();

    auto* calibrate =
        app.add_subcommand("calibrate", "fit alpha from one pixel/surface correspondence");
    std::string pair_path, calib_out;
    calibrate->add_option("pair", pair_path, "correspondence file")->required();
    calibrate->add_option("--out", calib_out, "where to write the updated config");

    auto* experiment =
        app.add_subcommand("experiment", "run the simulated contact-localization benchmark");
    std::string exp_out = ".", format_name = "md";
    std::optional<std::uint64_t> seed;
    experiment->add_option("--out", exp_out, "output directory");
    experiment->add_option("--seed", seed, "noise seed override");
    experiment->add_option("--format", format_name, "stdout report format: csv, md or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const RunConfig cfg = load_config(config_path);
        if (simulate->parsed()) return cmd_simulate(cfg, scene_path, sim_out);
        if (detect->parsed()) return cmd_detect(cfg, reference_path, contact_path);
        if (calibrate->parsed()) return cmd_calibrate(cfg, config_path, pair_path, calib_out);
        if (experiment->parsed()) return cmd_experiment(cfg, seed, exp_out, format_name);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
