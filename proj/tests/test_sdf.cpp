#include <doctest.h>

#include <random>

#include "fintip/sdf.hpp"
#include "fintip/errors.hpp"

using namespace fintip;

namespace {

std::vector<SolidSpec> all_solids() {
    return {Cone{}, SphereSolid{}, IrregularPrism{}, CylinderSolid{}, EdgeSolid{}, TubeSolid{},
            Slab{}};
}

}  // namespace

TEST_SUITE("sdf") {

TEST_CASE("sphere distances") {
    const SphereSolid ball{3.0};
    // Center at (0, 0, 3): p at the center and at distance 5 from it.
    CHECK(sdf(ball, {0.0, 0.0, 3.0}) == doctest::Approx(-3.0));
    CHECK(sdf(ball, {5.0, 0.0, 3.0}) == doctest::Approx(2.0));
    CHECK(sdf(ball, {0.0, 0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("slab face point is on the boundary") {
    Slab s;
    s.tilt_deg = 0.0;
    CHECK(sdf(s, {0.0, 0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sdf(s, {0.0, 0.0, 0.5 * s.height_mm}) < 0.0);
    CHECK(sdf(s, {0.0, 0.0, -1.0}) == doctest::Approx(1.0));
    CHECK(sdf(s, {s.half_width_mm + 2.0, 0.0, 0.5}) == doctest::Approx(2.0));
}

TEST_CASE("cone apex sits at the origin and the interior is negative") {
    Cone c{20.0, 3.0};
    CHECK(std::abs(sdf(c, {0.0, 0.0, 0.0})) < 1e-12);
    CHECK(sdf(c, {0.0, 0.0, 1.0}) < 0.0);
    CHECK(sdf(c, {0.0, 0.0, -0.5}) == doctest::Approx(0.5).epsilon(1e-6));
    // Lateral surface at height h has radius h*tan(beta).
    const double rho = 2.0 * std::tan(20.0 * M_PI / 180.0);
    CHECK(std::abs(sdf(c, {rho, 0.0, 2.0})) < 1e-12);
}

TEST_CASE("tube has an annular base") {
    TubeSolid t{0.45, 0.30, 2.0, 0.0};
    CHECK(std::abs(sdf(t, {0.45, 0.0, 0.0})) < 1e-12);  // outer rim on the plane
    CHECK(std::abs(sdf(t, {0.30, 0.0, 0.0})) < 1e-12);  // inner rim too
    CHECK(sdf(t, {0.0, 0.0, 1.0}) > 0.0);               // hollow core
    CHECK(sdf(t, {0.375, 0.0, 1.0}) < 0.0);             // wall interior
}

TEST_CASE("every solid's touch anchor lies on its boundary") {
    // The contact frames are re-anchored after the canonical tilt, so the
    // origin is always the first-touch point against z = 0 from above.
    for (const auto& solid : all_solids()) {
        CAPTURE(kind_name(solid));
        CHECK(std::abs(sdf(solid, {0.0, 0.0, 0.0})) < 1e-9);
        // Nothing pokes below the touch plane except the anchor itself.
        std::mt19937_64 rng(101);
        std::uniform_real_distribution<double> span(-3.0, 3.0);
        for (int i = 0; i < 4000; ++i) {
            const Vector3d p{span(rng), span(rng), -std::abs(span(rng)) - 1e-3};
            CHECK(sdf(solid, p) > 0.0);
        }
    }
}

TEST_CASE("signed distances are 1-Lipschitz") {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> span(-4.0, 4.0);
    for (const auto& solid : all_solids()) {
        CAPTURE(kind_name(solid));
        const CompiledSolid f(solid);
        for (int i = 0; i < 4000; ++i) {
            const Vector3d a{span(rng), span(rng), span(rng)};
            const Vector3d b{span(rng), span(rng), span(rng)};
            CHECK(std::abs(f(a) - f(b)) <= (a - b).norm() + 1e-6);
        }
    }
}

TEST_CASE("boundary points evaluate to ~zero along rays") {
    // Walk from far outside toward the solid; the first sign change brackets
    // a boundary point whose sdf must vanish.
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (const auto& solid : all_solids()) {
        const CompiledSolid f(solid);
        int crossings = 0;
        for (int i = 0; i < 200 && crossings < 20; ++i) {
            Vector3d dir{unit(rng), unit(rng), unit(rng)};
            if (dir.norm() < 1e-6) continue;
            dir.normalize();
            const Vector3d target{0.2 * unit(rng), 0.2 * unit(rng), 1.0 + 0.5 * unit(rng)};
            Vector3d prev = target + 10.0 * dir;
            if (f(prev) <= 0.0) continue;
            bool inside_found = false;
            for (double t = 10.0; t >= 0.0; t -= 0.01) {
                const Vector3d p = target + t * dir;
                if (f(p) < 0.0) {
                    inside_found = true;
                    break;
                }
                prev = p;
            }
            if (!inside_found) continue;
            ++crossings;
            // Bisect prev (outside) toward the inside point.
            Vector3d lo = prev, hi = prev - 0.01 * dir;
            for (int it = 0; it < 60; ++it) {
                const Vector3d mid = (lo + hi) / 2.0;
                (f(mid) >= 0.0 ? lo : hi) = mid;
            }
            CHECK(std::abs(f((lo + hi) / 2.0)) < 1e-9);
        }
        CAPTURE(kind_name(solid));
        CHECK(crossings > 0);
    }
}

TEST_CASE("validation rejects degenerate sizes") {
    CHECK_THROWS_AS(validate(SolidSpec{Cone{0.0, 1.0}}), ConfigError);
    CHECK_THROWS_AS(validate(SolidSpec{Cone{95.0, 1.0}}), ConfigError);
    CHECK_THROWS_AS(validate(SolidSpec{SphereSolid{-1.0}}), ConfigError);
    CHECK_THROWS_AS(validate(SolidSpec{TubeSolid{0.3, 0.45, 2.0, 0.0}}), ConfigError);
    CHECK_NOTHROW(validate(SolidSpec{TubeSolid{0.45, 0.3, 2.0, 10.0}}));
}

}  // TEST_SUITE
