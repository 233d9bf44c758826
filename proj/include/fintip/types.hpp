#pragma once

#include <Eigen/Core>

#include "fintip/errors.hpp"

namespace fintip {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

// Continuous image coordinate (u, v); u grows along +x of the camera
// frame, v along +y. Pixel centers sit at integer coordinates.
template <typename Scalar>
using Pixel = Eigen::Matrix<Scalar, 2, 1>;

// Single-channel raster, row-major, intensities in [0, 1].
// rows() = image height (v), cols() = image width (u).
template <typename Scalar>
using ImageArray = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Vector3d = Vector3<double>;
using Pixeld   = Pixel<double>;
using ImageXd  = ImageArray<double>;

enum class SurfaceRegion { Sphere, Cylinder, Junction };

inline const char* to_string(SurfaceRegion r) {
    switch (r) {
        case SurfaceRegion::Sphere: return "sphere";
        case SurfaceRegion::Cylinder: return "cylinder";
        case SurfaceRegion::Junction: return "junction";
    }
    return "?";
}

// Membrane shell of a finger-shaped sensor: an open cylinder of radius
// `radius` around the +z axis for 0 <= z <= dome_center_z, closed by a
// hemispherical dome of the same radius centered at (0, 0, dome_center_z).
// The camera focal point sits at the origin looking along +z.
template <typename Scalar>
struct SensorGeometry {
    Scalar radius;         // r, mm: shared radius of cylinder and dome
    Scalar dome_center_z;  // d, mm: focal point to dome center; junction circle at z = d

    void validate() const {
        if (!(radius > Scalar(0)))
            throw ConfigError("sensor radius must be > 0");
        if (!(dome_center_z > Scalar(0)))
            throw ConfigError("sensor dome_center_z must be > 0");
    }
};

// Ideal square-pixel pinhole camera at the sensor base.
template <typename Scalar>
struct CameraIntrinsics {
    Scalar alpha;  // focal length x pixel pitch, px
    Scalar cx;     // principal point, px
    Scalar cy;

    void validate() const {
        if (!(alpha > Scalar(0)))
            throw ConfigError("camera alpha must be > 0");
    }
};

// A point on the membrane, camera frame, mm.
template <typename Scalar>
struct SurfacePoint {
    Vector3<Scalar> position;
    SurfaceRegion region;
};

using SensorGeometryd   = SensorGeometry<double>;
using CameraIntrinsicsd = CameraIntrinsics<double>;
using SurfacePointd     = SurfacePoint<double>;

}  // namespace fintip
