#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fintip/geometry.hpp"
#include "fintip/image.hpp"

// Image-subtraction contact detector: difference -> mean filter ->
// threshold -> connected components -> area gate -> weighted fusion.

namespace fintip {

enum class FusionWeight { Area, MeanIntensity };

struct PipelineConfig {
    int kernel_size = 15;
    double threshold_fraction = 0.60;
    double min_area_fraction = 0.00012;  // of total picture area
    double max_area_fraction = 0.0004;
    ThresholdMode threshold_mode = ThresholdMode::PerImageMax;
    FusionWeight fusion_weight = FusionWeight::Area;

    void validate() const;
};

// One 8-connected nonzero region of the thresholded difference image.
struct ContactRegion {
    std::vector<Eigen::Vector2i> pixels;  // (u, v), discovery order from a row-major scan
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();  // intensity-weighted, px
    double mean_intensity = 0.0;

    long long area() const { return static_cast<long long>(pixels.size()); }
};

struct ContactPrediction {
    Eigen::Vector2d pixel;  // fused estimate, px
    std::vector<ContactRegion> regions;
    std::optional<SurfacePointd> surface;  // filled by localization
};

// Maximal 8-connected regions of nonzero pixels, ordered by their first
// row-major pixel; centroid and mean_intensity are taken from `retained`.
std::vector<ContactRegion> connected_components(const ImageXd& retained);

// Keeps regions with min_frac*total <= area <= max_frac*total (inclusive,
// real-valued bounds); input order preserved.
std::vector<ContactRegion> filter_by_area(std::vector<ContactRegion> regions,
                                          const PipelineConfig& cfg, double total_area_px);

// Intensity-weighted first moment over the region's pixels.
Eigen::Vector2d region_centroid(const ContactRegion& region, const ImageXd& intensities);

// Weighted average of region centroids; nullopt when there are no regions.
std::optional<Eigen::Vector2d> fuse_prediction(const std::vector<ContactRegion>& regions,
                                               FusionWeight weight = FusionWeight::Area);

// Full detector. Returns nullopt (no contact) when no region survives the
// area gate; throws ShapeError on dimension mismatch. Total otherwise for
// a valid config.
std::optional<ContactPrediction> detect_contact(const ImageXd& reference,
                                                const ImageXd& contact,
                                                const PipelineConfig& cfg);

// Maps a fused pixel estimate onto the membrane.
SurfacePointd localize_contact(const Eigen::Vector2d& pixel, const CameraIntrinsicsd& k,
                               const SensorGeometryd& g);

}  // namespace fintip
