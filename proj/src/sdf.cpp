#include "fintip/sdf.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fintip/errors.hpp"

namespace fintip {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

using Vec2 = Eigen::Vector2d;

// Exact signed distance to a simple polygon (negative inside).
template <size_t N>
double polygon_sdf(const std::array<Vec2, N>& v, const Vec2& p) {
    double d2 = (p - v[0]).squaredNorm();
    double sign = 1.0;
    for (size_t i = 0, j = N - 1; i < N; j = i++) {
        const Vec2 e = v[j] - v[i];
        const Vec2 w = p - v[i];
        const double t = std::clamp(w.dot(e) / e.squaredNorm(), 0.0, 1.0);
        d2 = std::min(d2, (w - e * t).squaredNorm());
        const bool c0 = p.y() >= v[i].y();
        const bool c1 = p.y() < v[j].y();
        const bool c2 = e.x() * w.y() > e.y() * w.x();
        if ((c0 && c1 && c2) || (!c0 && !c1 && !c2)) sign = -sign;
    }
    return sign * std::sqrt(d2);
}

// Extends a 2-D cross-section distance along the remaining axis to [0, H].
double extrude(double d2d, double axis, double height) {
    const double w = std::abs(axis - height / 2.0) - height / 2.0;
    const double outside = std::hypot(std::max(d2d, 0.0), std::max(w, 0.0));
    return outside + std::min(std::max(d2d, w), 0.0);
}

// For solids of revolution the 3-D distance equals the planar distance to
// the cross-section evaluated at (rho, z). Sections containing the axis
// must be mirrored so the axis is interior, not a phantom boundary.
double revolved_triangle(const Vec2& rz, double base_radius, double height) {
    const std::array<Vec2, 3> tri{Vec2{0.0, 0.0}, Vec2{base_radius, height},
                                  Vec2{-base_radius, height}};
    return polygon_sdf(tri, rz);
}

double rect_sdf(const Vec2& p, const Vec2& lo, const Vec2& hi) {
    const Vec2 center = (lo + hi) / 2.0;
    const Vec2 half = (hi - lo) / 2.0;
    const Vec2 q = (p - center).cwiseAbs() - half;
    return q.cwiseMax(0.0).norm() + std::min(std::max(q.x(), q.y()), 0.0);
}

// Unit-extent asymmetric pentagon footprint of the irregular prism.
const std::array<Vec2, 5>& pentagon() {
    static const std::array<Vec2, 5> v{Vec2{1.00, 0.10}, Vec2{0.20, 0.90}, Vec2{-0.75, 0.55},
                                       Vec2{-0.90, -0.50}, Vec2{0.40, -0.80}};
    return v;
}

double untilted_sdf(const Cone& s, const Vector3d& p) {
    const double rho = std::hypot(p.x(), p.y());
    const double base = s.height_mm * std::tan(s.half_angle_deg * kDegToRad);
    return revolved_triangle({rho, p.z()}, base, s.height_mm);
}

double untilted_sdf(const SphereSolid& s, const Vector3d& p) {
    return (p - Vector3d{0.0, 0.0, s.radius_mm}).norm() - s.radius_mm;
}

double untilted_sdf(const IrregularPrism& s, const Vector3d& p) {
    std::array<Vec2, 5> v = pentagon();
    for (auto& vert : v) vert *= s.scale_mm;
    return extrude(polygon_sdf(v, {p.x(), p.y()}), p.z(), s.height_mm);
}

double untilted_sdf(const CylinderSolid& s, const Vector3d& p) {
    const double rho = std::hypot(p.x(), p.y());
    return rect_sdf({rho, p.z()}, {-s.radius_mm, 0.0}, {s.radius_mm, s.height_mm});
}

double untilted_sdf(const EdgeSolid& s, const Vector3d& p) {
    const double spread = s.height_mm * std::tan(s.half_angle_deg * kDegToRad);
    const double d2d = revolved_triangle({p.x(), p.z()}, spread, s.height_mm);
    return extrude(d2d, p.y() + s.length_mm / 2.0, s.length_mm);
}

double untilted_sdf(const TubeSolid& s, const Vector3d& p) {
    const double rho = std::hypot(p.x(), p.y());
    return rect_sdf({rho, p.z()}, {s.inner_radius_mm, 0.0}, {s.outer_radius_mm, s.height_mm});
}

double untilted_sdf(const Slab& s, const Vector3d& p) {
    const Vector3d center{0.0, 0.0, s.height_mm / 2.0};
    const Vector3d half{s.half_width_mm, s.half_length_mm, s.height_mm / 2.0};
    const Vector3d q = (p - center).cwiseAbs() - half;
    return q.cwiseMax(0.0).norm() + std::min(q.maxCoeff(), 0.0);
}

double tilt_of(const SolidSpec& s) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Cone> || std::is_same_v<T, SphereSolid>)
                return 0.0;
            else
                return v.tilt_deg;
        },
        s);
}

// Axis the canonical tilt rotates about. Diagonal for footprints with
// axis-aligned edges so the tilted base leads with a single corner.
Vector3d tilt_axis_of(const SolidSpec& s) {
    if (std::holds_alternative<EdgeSolid>(s)) return Vector3d::UnitX();
    if (std::holds_alternative<Slab>(s) || std::holds_alternative<IrregularPrism>(s)) {
        const double a = 30.0 * kDegToRad;
        return {std::cos(a), std::sin(a), 0.0};
    }
    return Vector3d::UnitY();
}

// Lowest point of the tilted base: support of the base contact set in the
// descending direction. m is the solid-frame image of world +z.
Vector3d base_support(const SolidSpec& s, const Vector3d& m) {
    const Vec2 mxy{m.x(), m.y()};
    if (mxy.norm() < 1e-12) return Vector3d::Zero();
    const Vec2 dir = -mxy.normalized();
    return std::visit(
        [&](const auto& v) -> Vector3d {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CylinderSolid>) {
                return {v.radius_mm * dir.x(), v.radius_mm * dir.y(), 0.0};
            } else if constexpr (std::is_same_v<T, TubeSolid>) {
                return {v.outer_radius_mm * dir.x(), v.outer_radius_mm * dir.y(), 0.0};
            } else if constexpr (std::is_same_v<T, EdgeSolid>) {
                return {0.0, (m.y() > 0 ? -1.0 : 1.0) * v.length_mm / 2.0, 0.0};
            } else if constexpr (std::is_same_v<T, Slab>) {
                return {(m.x() > 0 ? -1.0 : 1.0) * v.half_width_mm,
                        (m.y() > 0 ? -1.0 : 1.0) * v.half_length_mm, 0.0};
            } else if constexpr (std::is_same_v<T, IrregularPrism>) {
                Vector3d best = Vector3d::Zero();
                double lowest = std::numeric_limits<double>::infinity();
                for (const auto& vert : pentagon()) {
                    const Vector3d b{vert.x() * v.scale_mm, vert.y() * v.scale_mm, 0.0};
                    const double h = b.dot(m);
                    if (h < lowest) {
                        lowest = h;
                        best = b;
                    }
                }
                return best;
            } else {
                return Vector3d::Zero();  // cone apex / sphere pole
            }
        },
        s);
}

}  // namespace

const char* kind_name(const SolidSpec& solid) {
    struct Visitor {
        const char* operator()(const Cone&) const { return "cone"; }
        const char* operator()(const SphereSolid&) const { return "sphere"; }
        const char* operator()(const IrregularPrism&) const { return "irregular-prism"; }
        const char* operator()(const CylinderSolid&) const { return "cylinder"; }
        const char* operator()(const EdgeSolid&) const { return "edge"; }
        const char* operator()(const TubeSolid&) const { return "tube"; }
        const char* operator()(const Slab&) const { return "slab"; }
    };
    return std::visit(Visitor{}, solid);
}

void validate(const SolidSpec& solid) {
    const auto positive = [&](double v, const char* what) {
        if (!(v > 0.0))
            throw ConfigError(std::string(kind_name(solid)) + ": " + what + " must be > 0");
    };
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Cone>) {
                positive(s.half_angle_deg, "half_angle_deg");
                positive(s.height_mm, "height_mm");
                if (s.half_angle_deg >= 90.0) throw ConfigError("cone: half_angle_deg must be < 90");
            } else if constexpr (std::is_same_v<T, SphereSolid>) {
                positive(s.radius_mm, "radius_mm");
            } else if constexpr (std::is_same_v<T, IrregularPrism>) {
                positive(s.scale_mm, "scale_mm");
                positive(s.height_mm, "height_mm");
            } else if constexpr (std::is_same_v<T, CylinderSolid>) {
                positive(s.radius_mm, "radius_mm");
                positive(s.height_mm, "height_mm");
            } else if constexpr (std::is_same_v<T, EdgeSolid>) {
                positive(s.half_angle_deg, "half_angle_deg");
                positive(s.length_mm, "length_mm");
                positive(s.height_mm, "height_mm");
                if (s.half_angle_deg >= 90.0) throw ConfigError("edge: half_angle_deg must be < 90");
            } else if constexpr (std::is_same_v<T, TubeSolid>) {
                positive(s.inner_radius_mm, "inner_radius_mm");
                positive(s.height_mm, "height_mm");
                if (!(s.outer_radius_mm > s.inner_radius_mm))
                    throw ConfigError("tube: outer_radius_mm must exceed inner_radius_mm");
            } else if constexpr (std::is_same_v<T, Slab>) {
                positive(s.half_width_mm, "half_width_mm");
                positive(s.half_length_mm, "half_length_mm");
                positive(s.height_mm, "height_mm");
            }
        },
        solid);
}

CompiledSolid::CompiledSolid(const SolidSpec& solid) : spec_(solid) {
    fintip::validate(spec_);
    const double tilt = tilt_of(spec_);
    if (tilt == 0.0) {
        tilt_transpose_.setIdentity();
        anchor_ = base_support(spec_, Vector3d::UnitZ());
        return;
    }
    const Eigen::Matrix3d rot =
        Eigen::AngleAxisd(tilt * kDegToRad, tilt_axis_of(spec_)).toRotationMatrix();
    tilt_transpose_ = rot.transpose();
    anchor_ = base_support(spec_, tilt_transpose_ * Vector3d::UnitZ());
}

double CompiledSolid::operator()(const Vector3d& p) const {
    const Vector3d q = tilt_transpose_ * p + anchor_;
    return std::visit([&](const auto& s) { return untilted_sdf(s, q); }, spec_);
}

}  // namespace fintip
