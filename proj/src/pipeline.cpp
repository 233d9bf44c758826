#include "fintip/pipeline.hpp"

#include <deque>

namespace fintip {

void PipelineConfig::validate() const {
    if (kernel_size < 1 || kernel_size % 2 == 0)
        throw ConfigError("pipeline: kernel_size must be odd and >= 1");
    if (!(threshold_fraction >= 0.0 && threshold_fraction <= 1.0))
        throw ConfigError("pipeline: threshold_fraction must be in [0, 1]");
    if (!(min_area_fraction > 0.0 && min_area_fraction < max_area_fraction &&
          max_area_fraction < 1.0))
        throw ConfigError("pipeline: need 0 < min_area_fraction < max_area_fraction < 1");
}

std::vector<ContactRegion> connected_components(const ImageXd& retained) {
    const Eigen::Index rows = retained.rows(), cols = retained.cols();
    std::vector<ContactRegion> regions;
    std::vector<char> visited(static_cast<size_t>(rows * cols), 0);
    const auto idx = [cols](Eigen::Index v, Eigen::Index u) {
        return static_cast<size_t>(v * cols + u);
    };

    std::deque<Eigen::Vector2i> frontier;
    for (Eigen::Index v = 0; v < rows; ++v) {
        for (Eigen::Index u = 0; u < cols; ++u) {
            if (visited[idx(v, u)] || retained(v, u) == 0.0) continue;
            ContactRegion region;
            visited[idx(v, u)] = 1;
            frontier.push_back({static_cast<int>(u), static_cast<int>(v)});
            while (!frontier.empty()) {
                const Eigen::Vector2i px = frontier.front();
                frontier.pop_front();
                region.pixels.push_back(px);
                for (int dv = -1; dv <= 1; ++dv) {
                    for (int du = -1; du <= 1; ++du) {
                        if (du == 0 && dv == 0) continue;
                        const Eigen::Index nu = px.x() + du, nv = px.y() + dv;
                        if (nu < 0 || nv < 0 || nu >= cols || nv >= rows) continue;
                        if (visited[idx(nv, nu)] || retained(nv, nu) == 0.0) continue;
                        visited[idx(nv, nu)] = 1;
                        frontier.push_back({static_cast<int>(nu), static_cast<int>(nv)});
                    }
                }
            }
            double mass = 0.0;
            for (const auto& px : region.pixels) mass += retained(px.y(), px.x());
            region.mean_intensity = mass / static_cast<double>(region.pixels.size());
            region.centroid = region_centroid(region, retained);
            regions.push_back(std::move(region));
        }
    }
    return regions;
}

std::vector<ContactRegion> filter_by_area(std::vector<ContactRegion> regions,
                                          const PipelineConfig& cfg, double total_area_px) {
    if (!(total_area_px > 0.0))
        throw DomainError("filter_by_area: total area must be > 0");
    const double lo = cfg.min_area_fraction * total_area_px;
    const double hi = cfg.max_area_fraction * total_area_px;
    std::vector<ContactRegion> kept;
    for (auto& r : regions) {
        const double area = static_cast<double>(r.area());
        if (area >= lo && area <= hi) kept.push_back(std::move(r));
    }
    return kept;
}

Eigen::Vector2d region_centroid(const ContactRegion& region, const ImageXd& intensities) {
    if (region.pixels.empty())
        throw DomainError("region_centroid: empty region");
    Eigen::Vector2d first_moment = Eigen::Vector2d::Zero();
    double mass = 0.0;
    for (const auto& px : region.pixels) {
        const double w = intensities(px.y(), px.x());
        first_moment += w * px.cast<double>();
        mass += w;
    }
    if (mass == 0.0)
        throw DomainError("region_centroid: zero total intensity");
    return first_moment / mass;
}

std::optional<Eigen::Vector2d> fuse_prediction(const std::vector<ContactRegion>& regions,
                                               FusionWeight weight) {
    if (regions.empty()) return std::nullopt;
    Eigen::Vector2d acc = Eigen::Vector2d::Zero();
    double total = 0.0;
    for (const auto& r : regions) {
        const double w = (weight == FusionWeight::Area) ? static_cast<double>(r.area())
                                                        : r.mean_intensity;
        acc += w * r.centroid;
        total += w;
    }
    return acc / total;
}

std::optional<ContactPrediction> detect_contact(const ImageXd& reference,
                                                const ImageXd& contact,
                                                const PipelineConfig& cfg) {
    const ImageXd diff = abs_difference(reference, contact);
    const ImageXd filtered = mean_filter(diff, cfg.kernel_size);
    const ImageXd retained =
        threshold_retain(filtered, cfg.threshold_fraction, cfg.threshold_mode);
    auto regions = filter_by_area(connected_components(retained), cfg,
                                  static_cast<double>(diff.size()));
    const auto fused = fuse_prediction(regions, cfg.fusion_weight);
    if (!fused) return std::nullopt;
    return ContactPrediction{*fused, std::move(regions), std::nullopt};
}

SurfacePointd localize_contact(const Eigen::Vector2d& pixel, const CameraIntrinsicsd& k,
                               const SensorGeometryd& g) {
    return back_project<double>(pixel, k, g);
}

}  // namespace fintip
