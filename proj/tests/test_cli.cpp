#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fintip/config.hpp"
#include "fintip/png_io.hpp"

using namespace fintip;
namespace fs = std::filesystem;

namespace {

const std::string kCli = FINTIP_CLI_PATH;
const fs::path kFixtures = fs::path(FINTIP_SOURCE_DIR) / "tests" / "fixtures";
const fs::path kDefaultConfig = fs::path(FINTIP_SOURCE_DIR) / "configs" / "default.cfg";

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream outfile(path, std::ios::binary);
    outfile << content;
}

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() / ("fintip_cli_out_" +
                                                      std::to_string(counter) + ".txt");
    const fs::path err = fs::temp_directory_path() / ("fintip_cli_err_" +
                                                      std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = env_prefix + kCli + " " + args + " > " + out.string() + " 2> " +
                            err.string();
    const int raw = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WEXITSTATUS(raw);
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
}

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("detect: identical frames report no contact with exit 0") {
    const fs::path dir = temp_dir("fintip_cli_detect");
    const fs::path png = dir / "frame.png";
    save_png_gray(png.string(), ImageXd::Constant(480, 640, 0.25), 16);
    const auto r = run_cli("--config " + kDefaultConfig.string() + " detect " + png.string() +
                           " " + png.string());
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("status") == "no-contact");
}

TEST_CASE("detect: unreadable, truncated or mismatched inputs exit 2") {
    const fs::path dir = temp_dir("fintip_cli_detect_bad");
    const fs::path good = dir / "good.png";
    save_png_gray(good.string(), ImageXd::Constant(480, 640, 0.25), 16);

    auto r = run_cli("detect " + (dir / "missing.png").string() + " " + good.string());
    CHECK(r.exit_code == 2);

    const std::string bytes = slurp(good);
    const fs::path truncated = dir / "truncated.png";
    spit(truncated, bytes.substr(0, bytes.size() / 4));
    r = run_cli("detect " + good.string() + " " + truncated.string());
    CHECK(r.exit_code == 2);

    const fs::path small = dir / "small.png";
    save_png_gray(small.string(), ImageXd::Constant(100, 100, 0.25), 16);
    r = run_cli("detect " + good.string() + " " + small.string());
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());  // diagnostics go to stderr
    CHECK(!r.err.empty());
}

TEST_CASE("simulate: committed scene renders the committed imprint and detection") {
    const fs::path dir = temp_dir("fintip_cli_sim");
    const fs::path scene = kFixtures / "scene_cone_side.txt";
    auto r = run_cli("--config " + kDefaultConfig.string() + " simulate --scene " +
                     scene.string() + " --out " + dir.string());
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(dir / "imprint.png"));
    CHECK(fs::exists(dir / "imprint.json"));
    const auto sidecar = nlohmann::json::parse(r.out);
    CHECK(sidecar.at("contact") == true);
    CHECK(sidecar.at("max_penetration_mm").get<double>() > 0.0);

    // Reference frame: a blank image of the same size as the render.
    const ImageXd imprint = load_png_gray((dir / "imprint.png").string());
    const fs::path blank = dir / "blank.png";
    save_png_gray(blank.string(), ImageXd::Zero(imprint.rows(), imprint.cols()), 16);
    const auto detect = run_cli("--config " + kDefaultConfig.string() + " detect " +
                                blank.string() + " " + (dir / "imprint.png").string());
    REQUIRE(detect.exit_code == 0);
    const std::string golden = slurp(kFixtures / "golden_detect_cone_side.json");
    REQUIRE(!golden.empty());
    CHECK(detect.out == golden);
}

TEST_CASE("simulate: no-contact scene writes a blank imprint, exit 0") {
    const fs::path dir = temp_dir("fintip_cli_sim_far");
    const auto r = run_cli("--config " + kDefaultConfig.string() + " simulate --scene " +
                           (kFixtures / "scene_no_contact.txt").string() + " --out " +
                           dir.string());
    REQUIRE(r.exit_code == 0);
    const auto sidecar = nlohmann::json::parse(r.out);
    CHECK(sidecar.at("contact") == false);
    const ImageXd img = load_png_gray((dir / "imprint.png").string());
    CHECK((img == 0.0).all());
}

TEST_CASE("simulate: bad scene kind or missing file exit 2") {
    const fs::path dir = temp_dir("fintip_cli_sim_bad");
    const fs::path bad = dir / "bad_scene.txt";
    spit(bad, "kind = hypercube\ntranslation_mm = 0 0 37\n");
    auto r = run_cli("simulate --scene " + bad.string());
    CHECK(r.exit_code == 2);
    r = run_cli("simulate --scene " + (dir / "absent.txt").string());
    CHECK(r.exit_code == 2);
}

TEST_CASE("calibrate: updates alpha in the config and echoes the residual") {
    const fs::path dir = temp_dir("fintip_cli_calib");
    const fs::path cfg_path = dir / "work.cfg";
    RunConfig cfg;
    cfg.intrinsics.alpha = 111.0;  // wrong on purpose
    cfg.save(cfg_path.string());

    // Exact pair for alpha = 300: the trans-15 contact (7.5, 0, 15) viewed
    // from cx = 319.5 maps to u = 319.5 + 300 * 0.5 = 469.5.
    const fs::path pair = dir / "pair.txt";
    spit(pair,
         "cx_px = 319.5\ncy_px = 239.5\npixel_u = 469.5\npixel_v = 239.5\n"
         "surface_x_mm = 7.5\nsurface_y_mm = 0\nsurface_z_mm = 15\n");
    const auto r = run_cli("--config " + cfg_path.string() + " calibrate " + pair.string());
    REQUIRE(r.exit_code == 0);
    const auto echoed = nlohmann::json::parse(r.out);
    CHECK(echoed.at("alpha_px").get<double>() == doctest::Approx(300.0));
    CHECK(echoed.at("residual_px").get<double>() == doctest::Approx(0.0));
    const RunConfig updated = RunConfig::load(cfg_path.string());
    CHECK(updated.intrinsics.alpha == doctest::Approx(300.0));

    const fs::path axial = dir / "axial.txt";
    spit(axial,
         "cx_px = 319.5\ncy_px = 239.5\npixel_u = 319.5\npixel_v = 239.5\n"
         "surface_x_mm = 0\nsurface_y_mm = 0\nsurface_z_mm = 37.5\n");
    CHECK(run_cli("--config " + cfg_path.string() + " calibrate " + axial.string()).exit_code ==
          2);
}

TEST_CASE("experiment: default config writes 56 trials and all reports") {
    const fs::path dir = temp_dir("fintip_cli_exp");
    const auto r = run_cli("--config " + kDefaultConfig.string() + " experiment --out " +
                           dir.string() + " --format json");
    REQUIRE(r.exit_code == 0);
    const std::string csv = slurp(dir / "trials.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 57);  // header + 56 trials
    CHECK(fs::exists(dir / "report.csv"));
    CHECK(fs::exists(dir / "report.md"));
    CHECK(fs::exists(dir / "report.json"));
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("n_trials") == 56);
}

TEST_CASE("experiment: infeasible translation grid exits 2") {
    const fs::path dir = temp_dir("fintip_cli_exp_bad");
    const fs::path cfg_path = dir / "short.cfg";
    RunConfig cfg;
    cfg.geometry.dome_center_z = 10.0;
    cfg.save(cfg_path.string());
    const auto r = run_cli("--config " + cfg_path.string() + " experiment --out " +
                           dir.string());
    CHECK(r.exit_code == 2);
}

TEST_CASE("unknown format and unknown subcommand exit 2") {
    CHECK(run_cli("experiment --format yaml").exit_code == 2);
    CHECK(run_cli("transmogrify").exit_code == 2);
}

TEST_CASE("config path comes from the environment when the flag is absent") {
    const fs::path dir = temp_dir("fintip_cli_env");
    const fs::path png = dir / "frame.png";
    save_png_gray(png.string(), ImageXd::Constant(480, 640, 0.5), 8);
    const auto r = run_cli("detect " + png.string() + " " + png.string(),
                           "FINTIP_CONFIG=" + kDefaultConfig.string() + " ");
    CHECK(r.exit_code == 0);
    const auto missing = run_cli("detect " + png.string() + " " + png.string(),
                                 "FINTIP_CONFIG=/nonexistent.cfg ");
    CHECK(missing.exit_code == 2);
}

}  // TEST_SUITE
