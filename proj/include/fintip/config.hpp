#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fintip/pipeline.hpp"
#include "fintip/sdf.hpp"
#include "fintip/simulator.hpp"
#include "fintip/types.hpp"

// Structured text configuration: `key = value` lines, `#` comments,
// decorative [section] headers. Keys are globally unique.

namespace fintip {

enum class StdMode { Sample, Population };

// Low-level store preserving nothing but key/value pairs.
class KeyValues {
public:
    static KeyValues parse_file(const std::string& path);
    static KeyValues parse_string(const std::string& text, const std::string& origin);

    bool has(const std::string& key) const;
    const std::string& raw(const std::string& key) const;  // marks the key consumed
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::int64_t integer_or(const std::string& key, std::int64_t fallback) const;
    std::string text_or(const std::string& key, const std::string& fallback) const;
    Vector3d vec3(const std::string& key) const;  // three whitespace-separated numbers

    void reject_unconsumed() const;  // ConfigError on unknown keys

private:
    std::string origin_;
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, bool> consumed_;
};

struct RunConfig {
    SensorGeometryd geometry{7.5, 30.0};
    CameraIntrinsicsd intrinsics{600.0, 639.5, 399.5};
    int image_width = 1280;
    int image_height = 800;
    PipelineConfig pipeline{};

    double intensity_scale_mm = 0.0;  // 0 = per-image normalization

    double indentation_mm = 0.3;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    StdMode std_mode = StdMode::Sample;

    Cone cone{};
    SphereSolid sphere{};
    IrregularPrism prism{};
    CylinderSolid cylinder{};
    EdgeSolid edge{};
    TubeSolid tube{};
    Slab slab{};

    // The experiment's objects, report column order.
    std::vector<std::pair<std::string, SolidSpec>> objects() const;

    static RunConfig load(const std::string& path);
    void save(const std::string& path) const;
    void validate() const;
};

struct SceneSpec {
    SolidSpec solid;
    ContactPose pose;
};

// kind + per-kind size keys + axis/angle_rad/translation_mm/indentation_mm.
SceneSpec load_scene(const std::string& path);

// Builds a solid from bare parameter keys (scene files).
SolidSpec solid_from_keys(const std::string& kind, const KeyValues& kv);

}  // namespace fintip
