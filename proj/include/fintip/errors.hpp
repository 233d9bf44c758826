#pragma once

#include <stdexcept>

namespace fintip {

// Invalid configuration, scene description or external input.
// The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Image dimension mismatch between operands.
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside an operation's domain (point behind the focal plane,
// empty region, degenerate calibration pair, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A viewing ray that never reaches the sensor surface.
struct NoIntersectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fintip
