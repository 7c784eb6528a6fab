#ifndef FUZZQUANT_POLAR_HPP
#define FUZZQUANT_POLAR_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "fuzzquant/raster.hpp"

namespace fq {

/// Precomputed pixel-to-pixel unwrap lookup for a pupil-concentric disc.
/// Ring r (1-based, 1..radius) holds n_r = max(1, round(2*pi*r)) source
/// coordinates sampled at equally spaced angles with per-axis rounding, so
/// each ring pixel is transcribed (not interpolated) and can be traced back
/// exactly. Depends only on (center, radius, image dims): one map serves
/// every image with the same geometry.
class PolarMap {
public:
    PolarMap(int cx, int cy, int radius, int image_width, int image_height,
             std::vector<int> row_offsets, std::vector<int32_t> src_x,
             std::vector<int32_t> src_y)
        : cx_(cx), cy_(cy), radius_(radius), image_width_(image_width),
          image_height_(image_height), row_offsets_(std::move(row_offsets)),
          src_x_(std::move(src_x)), src_y_(std::move(src_y)) {}

    int center_x() const { return cx_; }
    int center_y() const { return cy_; }
    int radius() const { return radius_; }
    int rows() const { return radius_; }
    int image_width() const { return image_width_; }
    int image_height() const { return image_height_; }

    /// Samples in ring r (1-based).
    int row_samples(int r) const { return row_offsets_[r] - row_offsets_[r - 1]; }
    /// Width of the widest (outermost) ring.
    int width() const { return row_samples(radius_); }

    std::pair<int, int> source(int r, int t) const {
        const int idx = row_offsets_[r - 1] + t;
        return {src_x_[idx], src_y_[idx]};
    }

private:
    int cx_, cy_, radius_, image_width_, image_height_;
    std::vector<int> row_offsets_; // radius+1 entries
    std::vector<int32_t> src_x_, src_y_;
};

/// Polar transcription of the disc: ragged rings left-aligned into an
/// R x W grid, black padding on the right of each row.
struct UnwrappedImage {
    int rows = 0;
    int width = 0;
    std::vector<uint8_t> pixels;
    std::vector<int> row_valid; // n_r per ring

    uint8_t at(int r, int t) const { return pixels[static_cast<size_t>(r - 1) * width + t]; }
    bool valid(int r, int t) const {
        return r >= 1 && r <= rows && t >= 0 && t < row_valid[r - 1];
    }
};

/// UI rows resampled to a fixed width (the rectangular unwrapped image).
struct RectUnwrapped {
    int rows = 0;
    int width = 0;
    std::vector<uint8_t> pixels;

    uint8_t at(int r, int t) const { return pixels[static_cast<size_t>(r - 1) * width + t]; }
};

PolarMap build_polar_map(int cx, int cy, int radius, int image_width, int image_height);

/// Copies source pixels through the map; bit-exact, no intensity arithmetic.
UnwrappedImage unwrap(const GrayImage& img, const PolarMap& map);

/// Linear per-row resampling of the valid pixels to w_out columns; a one-pixel
/// row replicates its value.
RectUnwrapped stretch_rows(const UnwrappedImage& ui, int w_out);

/// Exact source coordinate of a valid UI position.
std::pair<int, int> trace_back(const PolarMap& map, int r, int t);

} // namespace fq

#endif
