#include "fintip/png_io.hpp"

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <memory>
#include <vector>

#include <png.h>

#include "fintip/errors.hpp"

namespace fintip {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

ImageXd load_png_gray(const std::string& path) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw ConfigError("cannot open PNG: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ConfigError("libpng initialisation failed");
    }

    std::vector<png_byte> raster;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ConfigError("failed to decode PNG: " + path);
    }

    png_init_io(png, file.get());
    png_read_info(png, info);

    // Normalize to 8/16-bit gray or color samples.
    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    if (png_get_bit_depth(png, info) == 16) png_set_swap(png);
    png_read_update_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int channels = png_get_channels(png, info);
    const int depth = png_get_bit_depth(png, info);
    const size_t stride = png_get_rowbytes(png, info);

    raster.resize(stride * height);
    rows.resize(height);
    for (png_uint_32 r = 0; r < height; ++r) rows[r] = raster.data() + r * stride;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    ImageXd img(height, width);
    const double scale = depth == 16 ? 65535.0 : 255.0;
    for (png_uint_32 r = 0; r < height; ++r) {
        for (png_uint_32 c = 0; c < width; ++c) {
            double acc = 0.0;
            for (int ch = 0; ch < channels; ++ch) {
                if (depth == 16) {
                    const auto* px = reinterpret_cast<const png_uint_16*>(rows[r]);
                    acc += px[c * channels + ch];
                } else {
                    acc += rows[r][c * channels + ch];
                }
            }
            img(r, c) = acc / (channels * scale);
        }
    }
    return img;
}

void save_png_gray(const std::string& path, const ImageXd& img, int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16)
        throw ConfigError("save_png_gray: bit_depth must be 8 or 16");
    if (img.rows() < 1 || img.cols() < 1)
        throw ConfigError("save_png_gray: empty image");

    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw ConfigError("cannot write PNG: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw ConfigError("libpng initialisation failed");
    }

    const auto width = static_cast<png_uint_32>(img.cols());
    const auto height = static_cast<png_uint_32>(img.rows());
    std::vector<png_byte> raster(static_cast<size_t>(width) * height * (bit_depth / 8));
    std::vector<png_bytep> rows(height);

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw ConfigError("failed to encode PNG: " + path);
    }

    png_init_io(png, file.get());
    png_set_IHDR(png, info, width, height, bit_depth, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    if (bit_depth == 16) png_set_swap(png);

    const double scale = bit_depth == 16 ? 65535.0 : 255.0;
    for (png_uint_32 r = 0; r < height; ++r) {
        rows[r] = raster.data() + static_cast<size_t>(r) * width * (bit_depth / 8);
        for (png_uint_32 c = 0; c < width; ++c) {
            const double v = std::clamp(img(r, c), 0.0, 1.0);
            const auto q = static_cast<png_uint_16>(std::lround(v * scale));
            if (bit_depth == 16)
                reinterpret_cast<png_uint_16*>(rows[r])[c] = q;
            else
                rows[r][c] = static_cast<png_byte>(q);
        }
    }
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace fintip
