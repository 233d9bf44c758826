#pragma once

#include <algorithm>
#include <random>

#include "fintip/errors.hpp"
#include "fintip/types.hpp"

// Difference-domain image operations of the contact detector.

namespace fintip {

enum class ThresholdMode { PerImageMax, Absolute };

template <typename Scalar>
ImageArray<Scalar> abs_difference(const ImageArray<Scalar>& reference,
                                  const ImageArray<Scalar>& contact) {
    if (reference.rows() != contact.rows() || reference.cols() != contact.cols())
        throw ShapeError("abs_difference: image dimensions differ");
    return (contact - reference).abs();
}

// Box mean with edge replication; separable, exact. Output range is a
// subset of the input range.
template <typename Scalar>
ImageArray<Scalar> mean_filter(const ImageArray<Scalar>& img, int kernel_size) {
    if (kernel_size < 1 || kernel_size % 2 == 0)
        throw ConfigError("mean_filter: kernel_size must be odd and >= 1");
    if (kernel_size == 1) return img;

    const Eigen::Index rows = img.rows(), cols = img.cols();
    const int half = kernel_size / 2;
    const Scalar inv_k = Scalar(1) / Scalar(kernel_size);

    ImageArray<Scalar> tmp(rows, cols);
    for (Eigen::Index rr = 0; rr < rows; ++rr) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            Scalar acc = 0;
            for (int j = -half; j <= half; ++j) {
                const Eigen::Index cc = std::clamp<Eigen::Index>(c + j, 0, cols - 1);
                acc += img(rr, cc);
            }
            tmp(rr, c) = acc * inv_k;
        }
    }
    ImageArray<Scalar> out(rows, cols);
    for (Eigen::Index rr = 0; rr < rows; ++rr) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            Scalar acc = 0;
            for (int j = -half; j <= half; ++j) {
                const Eigen::Index rj = std::clamp<Eigen::Index>(rr + j, 0, rows - 1);
                acc += tmp(rj, c);
            }
            out(rr, c) = acc * inv_k;
        }
    }
    return out;
}

// Zeroes pixels below fraction * base, keeps the rest unchanged. Base is
// the image maximum (adaptive) or full scale 1.0 (absolute). Nonzero
// output pixels double as the detection mask.
template <typename Scalar>
ImageArray<Scalar> threshold_retain(const ImageArray<Scalar>& img, Scalar fraction,
                                    ThresholdMode mode) {
    const Scalar base = (mode == ThresholdMode::PerImageMax) ? img.maxCoeff() : Scalar(1);
    const Scalar cut = fraction * base;
    return (img < cut).select(ImageArray<Scalar>::Zero(img.rows(), img.cols()), img);
}

// Gaussian pixel noise clamped to [0, 1]; deterministic per seed.
template <typename Scalar>
ImageArray<Scalar> add_noise(const ImageArray<Scalar>& img, Scalar sigma, std::uint64_t seed) {
    if (sigma < Scalar(0)) throw DomainError("add_noise: sigma must be >= 0");
    if (sigma == Scalar(0)) return img;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, static_cast<double>(sigma));
    ImageArray<Scalar> out(img.rows(), img.cols());
    const Scalar* src = img.data();
    Scalar* dst = out.data();
    for (Eigen::Index i = 0; i < img.size(); ++i)
        dst[i] = std::clamp<Scalar>(src[i] + Scalar(gauss(rng)), Scalar(0), Scalar(1));
    return out;
}

}  // namespace fintip
