#pragma once

#include <optional>

#include <Eigen/Geometry>

#include "fintip/geometry.hpp"
#include "fintip/image.hpp"
#include "fintip/sdf.hpp"

// Synthetic imprint renderer: presses an SDF solid against the membrane
// and turns per-pixel penetration depth into a difference-domain image.

namespace fintip {

// Rigid placement of a solid against the membrane. `rotation` maps the
// solid's contact frame into the camera frame (its +z column is the
// outward contact normal); `translation` is where the solid's touch anchor
// sits at first contact. The final placement advances the solid by
// indentation_mm along -normal, pressing it into the membrane.
struct ContactPose {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Vector3d translation = Vector3d::Zero();
    double indentation_mm = 0.0;

    Eigen::Isometry3d placement() const;
    void validate() const;  // orthonormal rotation, indentation >= 0
};

// Pose whose contact frame tangents/normal form a right-handed basis at a
// surface point with outward normal `normal`.
ContactPose pose_on_surface(const Vector3d& surface_point, const Vector3d& normal,
                            double indentation_mm);

struct ImprintRender {
    ImageXd image;                           // difference domain, [0, 1]
    std::optional<SurfacePointd> ground_truth;  // deepest-penetration point
    double max_penetration_mm = 0.0;
};

struct DeepestPoint {
    SurfacePointd point;
    double penetration_mm = 0.0;
};

// Deepest-penetration membrane point under the pose: coarse parametric
// sweep over both surface pieces plus compass refinement. Nullopt when the
// solid penetrates nowhere.
std::optional<DeepestPoint> deepest_contact(const SolidSpec& solid, const ContactPose& pose,
                                            const SensorGeometryd& g);

// Renders penetration depth through the sensor's own camera model. Pixel
// intensity is min(depth / scale, 1) with scale = intensity_scale_mm, or
// the image's own maximum when intensity_scale_mm == 0.
ImprintRender render_imprint(const SolidSpec& solid, const ContactPose& pose,
                             const SensorGeometryd& g, const CameraIntrinsicsd& k,
                             int width, int height, double intensity_scale_mm = 0.0);

}  // namespace fintip
