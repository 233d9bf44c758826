#include <doctest.h>

#include <random>

#include "fintip/image.hpp"

using namespace fintip;

namespace {

ImageXd random_image(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ImageXd img(rows, cols);
    for (Eigen::Index i = 0; i < img.size(); ++i) img.data()[i] = unit(rng);
    return img;
}

}  // namespace

TEST_SUITE("image") {

TEST_CASE("abs_difference basics") {
    ImageXd a = ImageXd::Constant(4, 5, 0.2);
    ImageXd b = ImageXd::Constant(4, 5, 0.5);
    CHECK((abs_difference(a, a) == 0.0).all());
    CHECK((abs_difference(a, b) - 0.3).abs().maxCoeff() < 1e-15);
    CHECK((abs_difference(a, b) == abs_difference(b, a)).all());
    const ImageXd mismatched = ImageXd::Zero(5, 4);
    CHECK_THROWS_AS(abs_difference(a, mismatched), ShapeError);
}

TEST_CASE("mean_filter keeps constants and rejects even kernels") {
    const ImageXd flat = ImageXd::Constant(20, 30, 0.37);
    CHECK((mean_filter(flat, 15) - 0.37).abs().maxCoeff() < 1e-14);
    CHECK_THROWS_AS(mean_filter(flat, 14), ConfigError);
    CHECK_THROWS_AS(mean_filter(flat, 0), ConfigError);

    const ImageXd noise = random_image(16, 17, 3);
    CHECK((mean_filter(noise, 1) == noise).all());
}

TEST_CASE("mean_filter spreads an interior impulse into a uniform plateau") {
    ImageXd img = ImageXd::Zero(40, 40);
    img(20, 20) = 1.0;
    const ImageXd out = mean_filter(img, 15);
    for (int v = 13; v <= 27; ++v)
        for (int u = 13; u <= 27; ++u)
            CHECK(out(v, u) == doctest::Approx(1.0 / 225.0).epsilon(1e-12));
    CHECK(out(20, 28) == 0.0);
    // Interior support: total mass is preserved to near machine precision.
    CHECK(std::abs(out.sum() - 1.0) < 1e-12);
}

TEST_CASE("mean_filter output range stays inside the input range") {
    const ImageXd img = random_image(30, 30, 5);
    const ImageXd out = mean_filter(img, 7);
    CHECK(out.minCoeff() >= img.minCoeff() - 1e-15);
    CHECK(out.maxCoeff() <= img.maxCoeff() + 1e-15);
}

TEST_CASE("threshold_retain in both modes") {
    ImageXd zero = ImageXd::Zero(6, 6);
    CHECK((threshold_retain(zero, 0.6, ThresholdMode::PerImageMax) == 0.0).all());

    ImageXd img = ImageXd::Zero(2, 3);
    img << 0.1, 0.29, 0.31, 0.5, 0.3, 0.0;
    const ImageXd adaptive = threshold_retain(img, 0.6, ThresholdMode::PerImageMax);
    // max = 0.5 -> cut at 0.3; values >= 0.3 survive unchanged.
    CHECK(adaptive(0, 0) == 0.0);
    CHECK(adaptive(0, 1) == 0.0);
    CHECK(adaptive(0, 2) == 0.31);
    CHECK(adaptive(1, 0) == 0.5);
    CHECK(adaptive(1, 1) == 0.3);

    ImageXd two_level(1, 4);
    two_level << 0.1, 0.9, 0.1, 0.9;
    const ImageXd absolute = threshold_retain(two_level, 0.6, ThresholdMode::Absolute);
    CHECK(absolute(0, 0) == 0.0);
    CHECK(absolute(0, 1) == 0.9);
    CHECK(absolute(0, 2) == 0.0);
    CHECK(absolute(0, 3) == 0.9);
}

TEST_CASE("add_noise determinism and limits") {
    const ImageXd img = random_image(24, 24, 9);
    CHECK((add_noise(img, 0.0, 1) == img).all());
    const ImageXd a = add_noise(img, 0.05, 42);
    const ImageXd b = add_noise(img, 0.05, 42);
    CHECK((a == b).all());
    const ImageXd c = add_noise(img, 0.05, 43);
    CHECK((a != c).any());
    CHECK(a.minCoeff() >= 0.0);
    CHECK(a.maxCoeff() <= 1.0);
    CHECK_THROWS_AS(add_noise(img, -0.1, 1), DomainError);
}

TEST_CASE("add_noise on a blank frame stays near zero mean after clamping") {
    const ImageXd blank = ImageXd::Zero(480, 640);
    const double sigma = 0.05;
    const ImageXd noisy = add_noise(blank, sigma, 2024);
    // Clamped half-normal: mean sigma/sqrt(2 pi) ~ 0.3989 sigma; well within
    // sigma of zero and stable at N = 307200 (3 sigma / sqrt(N) margin).
    const double mean = noisy.mean();
    const double expected = sigma / std::sqrt(2.0 * M_PI);
    CHECK(mean == doctest::Approx(expected).epsilon(0.05));
    CHECK(std::abs(mean - 0.0) < sigma);
}

}  // TEST_SUITE
