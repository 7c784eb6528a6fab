#ifndef FUZZQUANT_RASTER_HPP
#define FUZZQUANT_RASTER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fuzzquant/errors.hpp"

namespace fq {

/// 8-bit grayscale raster, row-major, 0 = black.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}

    uint8_t at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
    uint8_t& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
};

/// Interleaved 8-bit RGB raster (overlay output).
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> rgb;

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h), rgb(static_cast<size_t>(w) * h * 3, 0) {}

    void set(int x, int y, uint8_t r, uint8_t g, uint8_t b) {
        size_t o = (static_cast<size_t>(y) * width + x) * 3;
        rgb[o] = r;
        rgb[o + 1] = g;
        rgb[o + 2] = b;
    }
};

struct PupilCircle {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 0.0;
};

/// Integer Rec.601 luma: round(0.299 R + 0.587 G + 0.114 B).
uint8_t luma_rec601(uint8_t r, uint8_t g, uint8_t b);

/// Loads PGM (P5 or P2, maxval <= 255) and 8-bit PNG (grayscale as-is, RGB
/// through Rec.601 luma). Anything else is UnsupportedFormat.
GrayImage load_image(const std::string& path);

/// Writes PGM P5 (.pgm) or 8-bit grayscale PNG (.png); round-trips bit-exactly.
void save_image(const GrayImage& img, const std::string& path);

/// Writes an 8-bit RGB PNG (.png only).
void save_rgb(const RgbImage& img, const std::string& path);

/// Copy of the image with the pupil circle (red) and the limbic circle
/// (green) rasterized around the pupil center with the midpoint algorithm.
RgbImage render_overlay(const GrayImage& img, const PupilCircle& pupil, int limbic_radius);

} // namespace fq

#endif
