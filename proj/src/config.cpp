#include "fintip/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fintip/errors.hpp"

namespace fintip {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& value, const std::string& key,
                    const std::string& origin) {
    try {
        size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(origin + ": key '" + key + "' has non-numeric value '" + value + "'");
    }
}

}  // namespace

KeyValues KeyValues::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

KeyValues KeyValues::parse_string(const std::string& text, const std::string& origin) {
    KeyValues kv;
    kv.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty() || stripped.front() == '[') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (kv.values_.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        kv.values_[key] = value;
        kv.consumed_[key] = false;
    }
    return kv;
}

bool KeyValues::has(const std::string& key) const { return values_.count(key) > 0; }

const std::string& KeyValues::raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(origin_ + ": missing key '" + key + "'");
    consumed_[key] = true;
    return it->second;
}

double KeyValues::number(const std::string& key) const {
    return parse_number(raw(key), key, origin_);
}

double KeyValues::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

std::int64_t KeyValues::integer_or(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const double v = number(key);
    if (v != std::floor(v))
        throw ConfigError(origin_ + ": key '" + key + "' must be an integer");
    return static_cast<std::int64_t>(v);
}

std::string KeyValues::text_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
}

Vector3d KeyValues::vec3(const std::string& key) const {
    std::istringstream in(raw(key));
    Vector3d v;
    if (!(in >> v.x() >> v.y() >> v.z()))
        throw ConfigError(origin_ + ": key '" + key + "' must hold three numbers");
    std::string rest;
    if (in >> rest)
        throw ConfigError(origin_ + ": key '" + key + "' must hold exactly three numbers");
    return v;
}

void KeyValues::reject_unconsumed() const {
    for (const auto& [key, used] : consumed_)
        if (!used) throw ConfigError(origin_ + ": unknown key '" + key + "'");
}

std::vector<std::pair<std::string, SolidSpec>> RunConfig::objects() const {
    return {{"cone", cone},     {"sphere", sphere}, {"irregular-prism", prism},
            {"cylinder", cylinder}, {"edge", edge},     {"tube", tube},
            {"slab", slab}};
}

RunConfig RunConfig::load(const std::string& path) {
    const KeyValues kv = KeyValues::parse_file(path);
    RunConfig cfg;

    cfg.geometry.radius = kv.number_or("r_mm", cfg.geometry.radius);
    cfg.geometry.dome_center_z = kv.number_or("d_mm", cfg.geometry.dome_center_z);
    cfg.intrinsics.alpha = kv.number_or("alpha_px", cfg.intrinsics.alpha);
    cfg.intrinsics.cx = kv.number_or("cx_px", cfg.intrinsics.cx);
    cfg.intrinsics.cy = kv.number_or("cy_px", cfg.intrinsics.cy);
    cfg.image_width = static_cast<int>(kv.integer_or("image_width", cfg.image_width));
    cfg.image_height = static_cast<int>(kv.integer_or("image_height", cfg.image_height));

    cfg.pipeline.kernel_size =
        static_cast<int>(kv.integer_or("kernel_size", cfg.pipeline.kernel_size));
    cfg.pipeline.threshold_fraction =
        kv.number_or("threshold_fraction", cfg.pipeline.threshold_fraction);
    cfg.pipeline.min_area_fraction =
        kv.number_or("min_area_fraction", cfg.pipeline.min_area_fraction);
    cfg.pipeline.max_area_fraction =
        kv.number_or("max_area_fraction", cfg.pipeline.max_area_fraction);
    const std::string mode = kv.text_or("threshold_mode", "per-image-max");
    if (mode == "per-image-max")
        cfg.pipeline.threshold_mode = ThresholdMode::PerImageMax;
    else if (mode == "absolute")
        cfg.pipeline.threshold_mode = ThresholdMode::Absolute;
    else
        throw ConfigError("threshold_mode must be 'per-image-max' or 'absolute'");
    const std::string fusion = kv.text_or("fusion_weight", "area");
    if (fusion == "area")
        cfg.pipeline.fusion_weight = FusionWeight::Area;
    else if (fusion == "mean-intensity")
        cfg.pipeline.fusion_weight = FusionWeight::MeanIntensity;
    else
        throw ConfigError("fusion_weight must be 'area' or 'mean-intensity'");

    cfg.intensity_scale_mm = kv.number_or("intensity_scale_mm", cfg.intensity_scale_mm);

    cfg.indentation_mm = kv.number_or("indentation_mm", cfg.indentation_mm);
    cfg.noise_sigma = kv.number_or("noise_sigma", cfg.noise_sigma);
    cfg.seed = static_cast<std::uint64_t>(kv.integer_or("seed", 0));
    const std::string std_mode = kv.text_or("std_mode", "sample");
    if (std_mode == "sample")
        cfg.std_mode = StdMode::Sample;
    else if (std_mode == "population")
        cfg.std_mode = StdMode::Population;
    else
        throw ConfigError("std_mode must be 'sample' or 'population'");

    cfg.cone.half_angle_deg = kv.number_or("cone_half_angle_deg", cfg.cone.half_angle_deg);
    cfg.cone.height_mm = kv.number_or("cone_height_mm", cfg.cone.height_mm);
    cfg.sphere.radius_mm = kv.number_or("sphere_radius_mm", cfg.sphere.radius_mm);
    cfg.prism.scale_mm = kv.number_or("prism_scale_mm", cfg.prism.scale_mm);
    cfg.prism.height_mm = kv.number_or("prism_height_mm", cfg.prism.height_mm);
    cfg.prism.tilt_deg = kv.number_or("prism_tilt_deg", cfg.prism.tilt_deg);
    cfg.cylinder.radius_mm = kv.number_or("cylinder_radius_mm", cfg.cylinder.radius_mm);
    cfg.cylinder.height_mm = kv.number_or("cylinder_height_mm", cfg.cylinder.height_mm);
    cfg.cylinder.tilt_deg = kv.number_or("cylinder_tilt_deg", cfg.cylinder.tilt_deg);
    cfg.edge.half_angle_deg = kv.number_or("edge_half_angle_deg", cfg.edge.half_angle_deg);
    cfg.edge.length_mm = kv.number_or("edge_length_mm", cfg.edge.length_mm);
    cfg.edge.height_mm = kv.number_or("edge_height_mm", cfg.edge.height_mm);
    cfg.edge.tilt_deg = kv.number_or("edge_tilt_deg", cfg.edge.tilt_deg);
    cfg.tube.outer_radius_mm = kv.number_or("tube_outer_radius_mm", cfg.tube.outer_radius_mm);
    cfg.tube.inner_radius_mm = kv.number_or("tube_inner_radius_mm", cfg.tube.inner_radius_mm);
    cfg.tube.height_mm = kv.number_or("tube_height_mm", cfg.tube.height_mm);
    cfg.tube.tilt_deg = kv.number_or("tube_tilt_deg", cfg.tube.tilt_deg);
    cfg.slab.half_width_mm = kv.number_or("slab_half_width_mm", cfg.slab.half_width_mm);
    cfg.slab.half_length_mm = kv.number_or("slab_half_length_mm", cfg.slab.half_length_mm);
    cfg.slab.height_mm = kv.number_or("slab_height_mm", cfg.slab.height_mm);
    cfg.slab.tilt_deg = kv.number_or("slab_tilt_deg", cfg.slab.tilt_deg);

    kv.reject_unconsumed();
    cfg.validate();
    return cfg;
}

void RunConfig::validate() const {
    geometry.validate();
    intrinsics.validate();
    if (image_width < 1 || image_height < 1)
        throw ConfigError("image dimensions must be positive");
    pipeline.validate();
    if (intensity_scale_mm < 0.0) throw ConfigError("intensity_scale_mm must be >= 0");
    if (!(indentation_mm >= 0.0)) throw ConfigError("indentation_mm must be >= 0");
    if (noise_sigma < 0.0) throw ConfigError("noise_sigma must be >= 0");
    for (const auto& [name, solid] : objects()) fintip::validate(solid);
}

void RunConfig::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config: " + path);
    out.precision(17);
    out << "[sensor]\n"
        << "r_mm = " << geometry.radius << "\n"
        << "d_mm = " << geometry.dome_center_z << "\n\n"
        << "[camera]\n"
        << "alpha_px = " << intrinsics.alpha << "\n"
        << "cx_px = " << intrinsics.cx << "\n"
        << "cy_px = " << intrinsics.cy << "\n"
        << "image_width = " << image_width << "\n"
        << "image_height = " << image_height << "\n\n"
        << "[pipeline]\n"
        << "kernel_size = " << pipeline.kernel_size << "\n"
        << "threshold_fraction = " << pipeline.threshold_fraction << "\n"
        << "min_area_fraction = " << pipeline.min_area_fraction << "\n"
        << "max_area_fraction = " << pipeline.max_area_fraction << "\n"
        << "threshold_mode = "
        << (pipeline.threshold_mode == ThresholdMode::PerImageMax ? "per-image-max" : "absolute")
        << "\n"
        << "fusion_weight = "
        << (pipeline.fusion_weight == FusionWeight::Area ? "area" : "mean-intensity") << "\n\n"
        << "[simulator]\n"
        << "intensity_scale_mm = " << intensity_scale_mm << "\n\n"
        << "[experiment]\n"
        << "indentation_mm = " << indentation_mm << "\n"
        << "noise_sigma = " << noise_sigma << "\n"
        << "seed = " << seed << "\n"
        << "std_mode = " << (std_mode == StdMode::Sample ? "sample" : "population") << "\n\n"
        << "[objects]\n"
        << "cone_half_angle_deg = " << cone.half_angle_deg << "\n"
        << "cone_height_mm = " << cone.height_mm << "\n"
        << "sphere_radius_mm = " << sphere.radius_mm << "\n"
        << "prism_scale_mm = " << prism.scale_mm << "\n"
        << "prism_height_mm = " << prism.height_mm << "\n"
        << "prism_tilt_deg = " << prism.tilt_deg << "\n"
        << "cylinder_radius_mm = " << cylinder.radius_mm << "\n"
        << "cylinder_height_mm = " << cylinder.height_mm << "\n"
        << "cylinder_tilt_deg = " << cylinder.tilt_deg << "\n"
        << "edge_half_angle_deg = " << edge.half_angle_deg << "\n"
        << "edge_length_mm = " << edge.length_mm << "\n"
        << "edge_height_mm = " << edge.height_mm << "\n"
        << "edge_tilt_deg = " << edge.tilt_deg << "\n"
        << "tube_outer_radius_mm = " << tube.outer_radius_mm << "\n"
        << "tube_inner_radius_mm = " << tube.inner_radius_mm << "\n"
        << "tube_height_mm = " << tube.height_mm << "\n"
        << "tube_tilt_deg = " << tube.tilt_deg << "\n"
        << "slab_half_width_mm = " << slab.half_width_mm << "\n"
        << "slab_half_length_mm = " << slab.half_length_mm << "\n"
        << "slab_height_mm = " << slab.height_mm << "\n"
        << "slab_tilt_deg = " << slab.tilt_deg << "\n";
    if (!out) throw ConfigError("failed writing config: " + path);
}

SolidSpec solid_from_keys(const std::string& kind, const KeyValues& kv) {
    if (kind == "cone") {
        Cone s;
        s.half_angle_deg = kv.number_or("half_angle_deg", s.half_angle_deg);
        s.height_mm = kv.number_or("height_mm", s.height_mm);
        return s;
    }
    if (kind == "sphere") {
        SphereSolid s;
        s.radius_mm = kv.number_or("radius_mm", s.radius_mm);
        return s;
    }
    if (kind == "irregular-prism") {
        IrregularPrism s;
        s.scale_mm = kv.number_or("scale_mm", s.scale_mm);
        s.height_mm = kv.number_or("height_mm", s.height_mm);
        s.tilt_deg = kv.number_or("tilt_deg", s.tilt_deg);
        return s;
    }
    if (kind == "cylinder") {
        CylinderSolid s;
        s.radius_mm = kv.number_or("radius_mm", s.radius_mm);
        s.height_mm = kv.number_or("height_mm", s.height_mm);
        s.tilt_deg = kv.number_or("tilt_deg", s.tilt_deg);
        return s;
    }
    if (kind == "edge") {
        EdgeSolid s;
        s.half_angle_deg = kv.number_or("half_angle_deg", s.half_angle_deg);
        s.length_mm = kv.number_or("length_mm", s.length_mm);
        s.height_mm = kv.number_or("height_mm", s.height_mm);
        s.tilt_deg = kv.number_or("tilt_deg", s.tilt_deg);
        return s;
    }
    if (kind == "tube") {
        TubeSolid s;
        s.outer_radius_mm = kv.number_or("outer_radius_mm", s.outer_radius_mm);
        s.inner_radius_mm = kv.number_or("inner_radius_mm", s.inner_radius_mm);
        s.height_mm = kv.number_or("height_mm", s.height_mm);
        s.tilt_deg = kv.number_or("tilt_deg", s.tilt_deg);
        return s;
    }
    if (kind == "slab") {
        Slab s;
        s.half_width_mm = kv.number_or("half_width_mm", s.half_width_mm);
        s.half_length_mm = kv.number_or("half_length_mm", s.half_length_mm);
        s.height_mm = kv.number_or("height_mm", s.height_mm);
        s.tilt_deg = kv.number_or("tilt_deg", s.tilt_deg);
        return s;
    }
    throw ConfigError("unknown solid kind '" + kind + "'");
}

SceneSpec load_scene(const std::string& path) {
    const KeyValues kv = KeyValues::parse_file(path);
    SceneSpec scene;
    scene.solid = solid_from_keys(kv.raw("kind"), kv);
    fintip::validate(scene.solid);

    const double angle = kv.number_or("angle_rad", 0.0);
    Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
    if (kv.has("axis")) {
        const Vector3d axis = kv.vec3("axis");
        if (axis.norm() < 1e-12) {
            if (angle != 0.0) throw ConfigError(path + ": zero axis with nonzero angle");
        } else {
            rot = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
        }
    } else if (angle != 0.0) {
        throw ConfigError(path + ": angle_rad given without axis");
    }
    scene.pose.rotation = rot;
    scene.pose.translation = kv.vec3("translation_mm");
    scene.pose.indentation_mm = kv.number_or("indentation_mm", 0.0);
    scene.pose.validate();
    kv.reject_unconsumed();
    return scene;
}

}  // namespace fintip
