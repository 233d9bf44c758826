#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "fintip/config.hpp"

using namespace fintip;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("key-value parsing: comments, sections, errors") {
    const auto kv = KeyValues::parse_string(
        "# comment\n[sensor]\nr_mm = 7.5\n d_mm=30 # trailing\n\naxis = 1 0 0\n", "test");
    CHECK(kv.number("r_mm") == 7.5);
    CHECK(kv.number("d_mm") == 30.0);
    CHECK(kv.vec3("axis") == Vector3d(1.0, 0.0, 0.0));
    CHECK_NOTHROW(kv.reject_unconsumed());

    CHECK_THROWS_AS(KeyValues::parse_string("novalue\n", "t"), ConfigError);
    CHECK_THROWS_AS(KeyValues::parse_string("a = 1\na = 2\n", "t"), ConfigError);
    CHECK_THROWS_AS(KeyValues::parse_string("a = abc\n", "t").number("a"), ConfigError);
    CHECK_THROWS_AS(KeyValues::parse_string("a = 1 2\n", "t").vec3("a"), ConfigError);

    const auto unknown = KeyValues::parse_string("mystery = 1\n", "t");
    CHECK_THROWS_AS(unknown.reject_unconsumed(), ConfigError);
}

TEST_CASE("run config round-trips through save and load") {
    RunConfig cfg;
    cfg.geometry.radius = 6.5;
    cfg.intrinsics.alpha = 280.0;
    cfg.pipeline.threshold_mode = ThresholdMode::Absolute;
    cfg.pipeline.fusion_weight = FusionWeight::MeanIntensity;
    cfg.std_mode = StdMode::Population;
    cfg.seed = 99;
    cfg.slab.tilt_deg = 12.5;

    const fs::path path = fs::temp_directory_path() / "fintip_roundtrip.cfg";
    cfg.save(path.string());
    const RunConfig loaded = RunConfig::load(path.string());
    CHECK(loaded.geometry.radius == cfg.geometry.radius);
    CHECK(loaded.intrinsics.alpha == cfg.intrinsics.alpha);
    CHECK(loaded.pipeline.threshold_mode == ThresholdMode::Absolute);
    CHECK(loaded.pipeline.fusion_weight == FusionWeight::MeanIntensity);
    CHECK(loaded.std_mode == StdMode::Population);
    CHECK(loaded.seed == 99);
    CHECK(loaded.slab.tilt_deg == 12.5);
}

TEST_CASE("run config rejects unknown keys and bad values") {
    const auto bad = temp_file("fintip_bad.cfg", "r_mm = 7.5\nnot_a_key = 1\n");
    CHECK_THROWS_AS(RunConfig::load(bad.string()), ConfigError);

    const auto negative = temp_file("fintip_neg.cfg", "r_mm = -1\n");
    CHECK_THROWS_AS(RunConfig::load(negative.string()), ConfigError);

    const auto mode = temp_file("fintip_mode.cfg", "threshold_mode = sometimes\n");
    CHECK_THROWS_AS(RunConfig::load(mode.string()), ConfigError);

    CHECK_THROWS_AS(RunConfig::load("/nonexistent/fintip.cfg"), ConfigError);
}

TEST_CASE("objects come out in report column order") {
    const RunConfig cfg;
    const auto objects = cfg.objects();
    REQUIRE(objects.size() == 7);
    CHECK(objects[0].first == "cone");
    CHECK(objects[1].first == "sphere");
    CHECK(objects[2].first == "irregular-prism");
    CHECK(objects[3].first == "cylinder");
    CHECK(objects[4].first == "edge");
    CHECK(objects[5].first == "tube");
    CHECK(objects[6].first == "slab");
}

TEST_CASE("scene loading builds solid and pose") {
    const auto path = temp_file("fintip_scene.txt",
                                "kind = cone\nhalf_angle_deg = 20\nheight_mm = 3\n"
                                "axis = 0 1 0\nangle_rad = 0.7853981633974483\n"
                                "translation_mm = 7.5 0 20\nindentation_mm = 1\n");
    const SceneSpec scene = load_scene(path.string());
    CHECK(kind_name(scene.solid) == std::string("cone"));
    CHECK(std::get<Cone>(scene.solid).half_angle_deg == 20.0);
    CHECK(scene.pose.indentation_mm == 1.0);
    CHECK(scene.pose.translation == Vector3d(7.5, 0.0, 20.0));
    CHECK(scene.pose.rotation.determinant() == doctest::Approx(1.0));

    const auto bad_kind = temp_file("fintip_badkind.txt",
                                    "kind = dodecahedron\ntranslation_mm = 0 0 0\n");
    CHECK_THROWS_AS(load_scene(bad_kind.string()), ConfigError);

    const auto bad_axis = temp_file("fintip_badaxis.txt",
                                    "kind = sphere\naxis = 0 0 0\nangle_rad = 1\n"
                                    "translation_mm = 0 0 0\n");
    CHECK_THROWS_AS(load_scene(bad_axis.string()), ConfigError);
}

}  // TEST_SUITE
