#include "fintip/simulator.hpp"

#include <array>
#include <cmath>

#include "fintip/errors.hpp"

namespace fintip {

namespace {

Vector3d dome_point(const SensorGeometryd& g, double theta, double phi) {
    const double s = std::sin(theta);
    return {g.radius * s * std::cos(phi), g.radius * s * std::sin(phi),
            g.dome_center_z + g.radius * std::cos(theta)};
}

Vector3d cylinder_point(const SensorGeometryd& g, double z, double phi) {
    return {g.radius * std::cos(phi), g.radius * std::sin(phi), z};
}

SurfaceRegion classify_z(const SensorGeometryd& g, double z) {
    if (std::abs(z - g.dome_center_z) <= 1e-9 * g.radius) return SurfaceRegion::Junction;
    return z > g.dome_center_z ? SurfaceRegion::Sphere : SurfaceRegion::Cylinder;
}

struct ChartMax {
    double p0 = 0.0, p1 = 0.0;  // chart parameters
    double depth = -std::numeric_limits<double>::infinity();
};

// Compass search on a 2-D chart, parameters clamped to their ranges.
template <typename PointFn, typename DepthFn>
ChartMax refine_on_chart(ChartMax best, double lo0, double hi0, double step0, double step1,
                         bool wrap1, const PointFn& point_of, const DepthFn& depth_at) {
    constexpr double kTwoPi = 2.0 * M_PI;
    while (step0 > 1e-10 || step1 > 1e-10) {
        bool improved = false;
        for (int i = -1; i <= 1; ++i) {
            for (int j = -1; j <= 1; ++j) {
                if (i == 0 && j == 0) continue;
                double q0 = std::clamp(best.p0 + i * step0, lo0, hi0);
                double q1 = best.p1 + j * step1;
                if (wrap1) q1 = std::fmod(q1 + kTwoPi, kTwoPi);
                const double depth = depth_at(point_of(q0, q1));
                if (depth > best.depth) {
                    best = {q0, q1, depth};
                    improved = true;
                }
            }
        }
        if (!improved) {
            step0 /= 2.0;
            step1 /= 2.0;
        }
    }
    return best;
}

}  // namespace

Eigen::Isometry3d ContactPose::placement() const {
    const Vector3d normal = rotation.col(2);
    Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
    t.linear() = rotation;
    t.translation() = translation - indentation_mm * normal;
    return t;
}

void ContactPose::validate() const {
    if (!rotation.allFinite() || !translation.allFinite())
        throw ConfigError("pose: non-finite transform");
    if ((rotation * rotation.transpose() - Eigen::Matrix3d::Identity()).norm() > 1e-9 ||
        rotation.determinant() < 0.0)
        throw ConfigError("pose: rotation must be orthonormal");
    if (!(indentation_mm >= 0.0)) throw ConfigError("pose: indentation_mm must be >= 0");
}

ContactPose pose_on_surface(const Vector3d& surface_point, const Vector3d& normal,
                            double indentation_mm) {
    const Vector3d n = normal.normalized();
    // Deterministic tangent pair; n never parallels +y for the poses used here.
    Vector3d t1 = Vector3d::UnitY().cross(n).norm() > 1e-9 ? Vector3d::UnitY()
                                                           : Vector3d::UnitX();
    t1 = (t1 - t1.dot(n) * n).normalized();
    const Vector3d t2 = n.cross(t1);
    ContactPose pose;
    pose.rotation.col(0) = t1;
    pose.rotation.col(1) = t2;
    pose.rotation.col(2) = n;
    pose.translation = surface_point;
    pose.indentation_mm = indentation_mm;
    return pose;
}

std::optional<DeepestPoint> deepest_contact(const SolidSpec& solid, const ContactPose& pose,
                                            const SensorGeometryd& g) {
    pose.validate();
    g.validate();
    const CompiledSolid sdf_of(solid);
    const Eigen::Isometry3d inverse = pose.placement().inverse();
    const auto depth_at = [&](const Vector3d& p) { return -sdf_of(inverse * p); };

    constexpr int kN0 = 96, kN1 = 192;
    constexpr double kTwoPi = 2.0 * M_PI;
    const double half_pi = M_PI / 2.0;

    ChartMax dome_best, side_best;
    for (int i = 0; i <= kN0; ++i) {
        const double theta = half_pi * i / kN0;
        const double z = g.dome_center_z * i / kN0;
        for (int j = 0; j < kN1; ++j) {
            const double phi = kTwoPi * j / kN1;
            const double dome_depth = depth_at(dome_point(g, theta, phi));
            if (dome_depth > dome_best.depth) dome_best = {theta, phi, dome_depth};
            const double side_depth = depth_at(cylinder_point(g, z, phi));
            if (side_depth > side_best.depth) side_best = {z, phi, side_depth};
        }
    }

    dome_best = refine_on_chart(
        dome_best, 0.0, half_pi, half_pi / kN0, kTwoPi / kN1, true,
        [&](double t, double p) { return dome_point(g, t, p); }, depth_at);
    side_best = refine_on_chart(
        side_best, 0.0, g.dome_center_z, g.dome_center_z / kN0, kTwoPi / kN1, true,
        [&](double z, double p) { return cylinder_point(g, z, p); }, depth_at);

    Vector3d best_point;
    double best_depth;
    if (dome_best.depth >= side_best.depth) {
        best_point = dome_point(g, dome_best.p0, dome_best.p1);
        best_depth = dome_best.depth;
    } else {
        best_point = cylinder_point(g, side_best.p0, side_best.p1);
        best_depth = side_best.depth;
    }
    if (!(best_depth > 0.0)) return std::nullopt;
    return DeepestPoint{{best_point, classify_z(g, best_point.z())}, best_depth};
}

ImprintRender render_imprint(const SolidSpec& solid, const ContactPose& pose,
                             const SensorGeometryd& g, const CameraIntrinsicsd& k,
                             int width, int height, double intensity_scale_mm) {
    pose.validate();
    g.validate();
    k.validate();
    if (width <= 0 || height <= 0) throw ConfigError("render: resolution must be positive");
    if (intensity_scale_mm < 0.0)
        throw ConfigError("render: intensity_scale_mm must be >= 0");

    const CompiledSolid sdf_of(solid);
    const Eigen::Isometry3d inverse = pose.placement().inverse();
    if (sdf_of(inverse * Vector3d::Zero()) <= 0.0)
        throw ConfigError("render: pose places the solid over the camera origin");

    ImageXd img(height, width);
    for (int v = 0; v < height; ++v) {
        for (int u = 0; u < width; ++u) {
            const auto s = back_project<double>(
                {static_cast<double>(u), static_cast<double>(v)}, k, g);
            const double depth = -sdf_of(inverse * s.position);
            img(v, u) = std::max(depth, 0.0);
        }
    }

    const auto deepest = deepest_contact(solid, pose, g);
    if (!deepest) return {ImageXd::Zero(height, width), std::nullopt, 0.0};

    const double scale =
        intensity_scale_mm > 0.0 ? intensity_scale_mm : img.maxCoeff();
    if (scale > 0.0)
        img = (img / scale).min(1.0);
    else
        img.setZero();  // contact exists but falls outside the viewed surface
    return {std::move(img), deepest->point, deepest->penetration_mm};
}

}  // namespace fintip
