#pragma once

#include <variant>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "fintip/types.hpp"

// Signed-distance solids pressed against the membrane by the simulator.
//
// Every solid is defined in its own contact frame: the point that first
// touches a plane z = 0 from above sits at the origin and the body extends
// toward +z. Kinds with a flat base carry a small canonical tilt (degrees,
// about a built-in horizontal axis) so taps are corner- or rim-first; the
// frame is re-anchored after tilting, keeping the lowest point at the
// origin.

namespace fintip {

struct Cone {
    double half_angle_deg = 25.0;  // apex at the origin, opening toward +z
    double height_mm = 2.0;
};

struct SphereSolid {
    double radius_mm = 0.35;  // resting point at the origin, center at (0, 0, R)
};

// Prism over a fixed asymmetric pentagon footprint (unit extent, scaled by
// scale_mm), extruded toward +z.
struct IrregularPrism {
    double scale_mm = 0.35;
    double height_mm = 1.0;
    double tilt_deg = 0.0;
};

struct CylinderSolid {
    double radius_mm = 0.15;  // flat circular base
    double height_mm = 1.0;
    double tilt_deg = 0.0;
};

// Wedge whose apex line runs along local y.
struct EdgeSolid {
    double half_angle_deg = 18.0;
    double length_mm = 0.85;
    double height_mm = 1.0;
    double tilt_deg = 0.0;
};

struct TubeSolid {
    double outer_radius_mm = 0.20;  // flat annular base
    double inner_radius_mm = 0.05;
    double height_mm = 1.0;
    double tilt_deg = 14.0;
};

struct Slab {
    double half_width_mm = 0.12;  // base extent along local x
    double half_length_mm = 0.45;  // along local y
    double height_mm = 1.0;
    double tilt_deg = 0.0;
};

using SolidSpec =
    std::variant<Cone, SphereSolid, IrregularPrism, CylinderSolid, EdgeSolid, TubeSolid, Slab>;

const char* kind_name(const SolidSpec& solid);

void validate(const SolidSpec& solid);  // throws ConfigError on bad sizes

// Tilt + anchoring baked in once; cheap to evaluate per pixel.
class CompiledSolid {
public:
    explicit CompiledSolid(const SolidSpec& solid);

    // Exact signed distance (mm): negative inside, zero on the boundary.
    double operator()(const Vector3d& p) const;

private:
    SolidSpec spec_;
    Eigen::Matrix3d tilt_transpose_;
    Vector3d anchor_;
};

inline double sdf(const SolidSpec& solid, const Vector3d& p) {
    return CompiledSolid(solid)(p);
}

}  // namespace fintip
