#pragma once

#include <cmath>
#include <optional>

#include "fintip/errors.hpp"
#include "fintip/types.hpp"

// Surface model and pixel <-> surface mapping.
//
// The membrane is the union of
//   x^2 + y^2 + (z - d)^2 = r^2   for z > d   (dome)
//   x^2 + y^2 = r^2               for z <= d  (cylinder)
// and a pixel (u, v) of the pinhole camera sees along the ray
//   x = (u - cx)/alpha * z,  y = (v - cy)/alpha * z,  z > 0.

namespace fintip {

// Classifies p against the two surface pieces. Returns the region when p
// lies on the membrane within `tol` (mm, distance-like residual), nullopt
// otherwise. Total for finite input.
template <typename Scalar>
std::optional<SurfaceRegion> surface_contains(const Vector3<Scalar>& p,
                                              const SensorGeometry<Scalar>& g,
                                              Scalar tol) {
    if (!(tol > Scalar(0))) throw DomainError("surface_contains: tol must be > 0");
    if (!p.allFinite()) return std::nullopt;

    const Scalar lateral = std::hypot(p.x(), p.y());
    const Scalar dz = p.z() - g.dome_center_z;
    const Scalar sphere_residual = std::abs(std::hypot(lateral, dz) - g.radius);
    const Scalar cylinder_residual = std::abs(lateral - g.radius);

    if (std::abs(dz) <= tol) {
        if (cylinder_residual <= tol) return SurfaceRegion::Junction;
        return std::nullopt;
    }
    if (dz > Scalar(0)) {
        if (sphere_residual <= tol) return SurfaceRegion::Sphere;
        return std::nullopt;
    }
    if (cylinder_residual <= tol) return SurfaceRegion::Cylinder;
    return std::nullopt;
}

// Pinhole projection; identity extrinsics (focal point at the origin).
template <typename Scalar>
Pixel<Scalar> project(const Vector3<Scalar>& p, const CameraIntrinsics<Scalar>& k) {
    if (!(p.z() > Scalar(0)))
        throw DomainError("project: point at or behind the focal plane");
    return {k.alpha * p.x() / p.z() + k.cx, k.alpha * p.y() / p.z() + k.cy};
}

// Radius, in pixels from the principal point, of the junction circle's image.
// Rays inside it hit the dome, outside it the cylinder.
template <typename Scalar>
Scalar junction_radius_px(const CameraIntrinsics<Scalar>& k, const SensorGeometry<Scalar>& g) {
    return g.radius * k.alpha / g.dome_center_z;
}

// Maps a pixel to the camera-facing membrane point along its viewing ray.
//
// With rho = |(u,v) - (cx,cy)| the ray's lateral radius grows as rho*z/alpha,
// so the cylinder is met at z = r*alpha/rho and the dome where
//   (rho^2 + alpha^2) z^2 - 2 d alpha^2 z + (d^2 - r^2) alpha^2 = 0,
// whose larger root is the visible (camera-facing) dome sheet; the smaller
// root is the sphere crossing below the junction plane, which is not part of
// the membrane. Both branches meet at z = d when rho = r*alpha/d.
template <typename Scalar>
SurfacePoint<Scalar> back_project(const Pixel<Scalar>& px,
                                  const CameraIntrinsics<Scalar>& k,
                                  const SensorGeometry<Scalar>& g) {
    if (!px.allFinite()) throw DomainError("back_project: non-finite pixel");
    const Scalar du = px.x() - k.cx;
    const Scalar dv = px.y() - k.cy;
    const Scalar rho = std::hypot(du, dv);
    const Scalar rho_j = junction_radius_px(k, g);
    const Scalar d = g.dome_center_z;
    const Scalar r = g.radius;
    const Scalar a = k.alpha;

    Scalar z;
    SurfaceRegion region;
    if (rho < rho_j) {
        const Scalar lead = rho * rho + a * a;
        const Scalar disc = d * d * a * a - lead * (d * d - r * r);
        if (disc < Scalar(0))
            throw NoIntersectionError("back_project: ray misses the dome");
        z = (d * a * a + a * std::sqrt(disc)) / lead;
        region = SurfaceRegion::Sphere;
    } else {
        z = r * a / rho;
        region = (rho == rho_j) ? SurfaceRegion::Junction : SurfaceRegion::Cylinder;
    }
    return {{du / a * z, dv / a * z, z}, region};
}

// Implicit shell residual along the ray of (du, dv) at depth z; negative
// strictly between the camera and the membrane, positive beyond it.
// Continuous across z = d since both pieces share the junction circle.
template <typename Scalar>
Scalar shell_residual(Scalar du, Scalar dv, const CameraIntrinsics<Scalar>& k,
                      const SensorGeometry<Scalar>& g, Scalar z) {
    const Scalar lat2 = (du * du + dv * dv) * z * z / (k.alpha * k.alpha);
    const Scalar r2 = g.radius * g.radius;
    if (z > g.dome_center_z) {
        const Scalar dz = z - g.dome_center_z;
        return lat2 + dz * dz - r2;
    }
    return lat2 - r2;
}

// Brute-force reference for back_project: marches the ray from z = 0 until
// the shell residual changes sign, then bisects the bracket. Step in mm;
// 1e-4 * r is plenty for 1e-3 * r agreement.
template <typename Scalar>
SurfacePoint<Scalar> ray_march_surface(const Pixel<Scalar>& px,
                                       const CameraIntrinsics<Scalar>& k,
                                       const SensorGeometry<Scalar>& g,
                                       Scalar step) {
    if (!(step > Scalar(0))) throw DomainError("ray_march_surface: step must be > 0");
    const Scalar du = px.x() - k.cx;
    const Scalar dv = px.y() - k.cy;
    const Scalar z_max = Scalar(2) * (g.dome_center_z + g.radius);

    Scalar lo = Scalar(0);  // residual at z=0 is -r^2, inside
    Scalar hi = lo;
    bool bracketed = false;
    for (Scalar z = step; z <= z_max + step / Scalar(2); z += step) {
        if (shell_residual(du, dv, k, g, z) >= Scalar(0)) {
            hi = z;
            bracketed = true;
            break;
        }
        lo = z;
    }
    if (!bracketed)
        throw NoIntersectionError("ray_march_surface: no crossing within range");

    for (int i = 0; i < 200 && (hi - lo) > Scalar(1e-15) * z_max; ++i) {
        const Scalar mid = (lo + hi) / Scalar(2);
        if (shell_residual(du, dv, k, g, mid) >= Scalar(0))
            hi = mid;
        else
            lo = mid;
    }
    const Scalar z = (lo + hi) / Scalar(2);
    const Vector3<Scalar> p{du / k.alpha * z, dv / k.alpha * z, z};
    const Scalar band = std::max(step, Scalar(1e-9) * g.radius);
    SurfaceRegion region = SurfaceRegion::Cylinder;
    if (std::abs(z - g.dome_center_z) <= band)
        region = SurfaceRegion::Junction;
    else if (z > g.dome_center_z)
        region = SurfaceRegion::Sphere;
    return {p, region};
}

// Recovers alpha from one pixel <-> surface-point correspondence by least
// squares over alpha*x = (u - cx)*z and alpha*y = (v - cy)*z. A point on
// the optical axis carries no scale information.
template <typename Scalar>
Scalar calibrate_alpha(const Pixel<Scalar>& px, const Vector3<Scalar>& p,
                       Scalar cx, Scalar cy) {
    if (!(p.z() > Scalar(0)))
        throw DomainError("calibrate_alpha: surface point must have z > 0");
    const Scalar den = p.x() * p.x() + p.y() * p.y();
    if (den == Scalar(0))
        throw DomainError("calibrate_alpha: axial point carries no scale information");
    return ((px.x() - cx) * p.x() + (px.y() - cy) * p.y()) * p.z() / den;
}

}  // namespace fintip
