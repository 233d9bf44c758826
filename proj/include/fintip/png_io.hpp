#pragma once

#include <string>

#include "fintip/types.hpp"

namespace fintip {

// Reads an 8- or 16-bit PNG (gray, gray+alpha, RGB or RGBA) as a single
// channel normalized to [0, 1]; color channels are averaged, alpha is
// dropped. Throws ConfigError on unreadable or truncated files.
ImageXd load_png_gray(const std::string& path);

// Writes a single-channel PNG, clamping to [0, 1]; bit_depth 8 or 16.
void save_png_gray(const std::string& path, const ImageXd& img, int bit_depth = 16);

}  // namespace fintip
