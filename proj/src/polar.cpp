#include "fuzzquant/polar.hpp"

#include <cmath>
#include <numbers>

namespace fq {

PolarMap build_polar_map(int cx, int cy, int radius, int image_width, int image_height) {
    if (radius < 1)
        throw Error(ErrorCode::ZeroRadius, "build_polar_map: radius must be >= 1");
    if (cx - radius < 0 || cx + radius >= image_width || cy - radius < 0 ||
        cy + radius >= image_height)
        throw Error(ErrorCode::DiscOutOfBounds, "build_polar_map: disc exceeds image bounds");

    std::vector<int> offsets;
    offsets.reserve(radius + 1);
    offsets.push_back(0);
    std::vector<int32_t> xs, ys;
    for (int r = 1; r <= radius; ++r) {
        const int n_r = std::max(1L, std::lround(2.0 * std::numbers::pi * r));
        for (int t = 0; t < n_r; ++t) {
            const double theta = 2.0 * std::numbers::pi * t / n_r;
            xs.push_back(cx + static_cast<int32_t>(std::lround(r * std::cos(theta))));
            ys.push_back(cy + static_cast<int32_t>(std::lround(r * std::sin(theta))));
        }
        offsets.push_back(static_cast<int>(xs.size()));
    }
    return PolarMap(cx, cy, radius, image_width, image_height, std::move(offsets),
                    std::move(xs), std::move(ys));
}

UnwrappedImage unwrap(const GrayImage& img, const PolarMap& map) {
    if (img.width != map.image_width() || img.height != map.image_height())
        throw Error(ErrorCode::DimensionMismatch,
                    "unwrap: map was built for different image dimensions");
    UnwrappedImage ui;
    ui.rows = map.rows();
    ui.width = map.width();
    ui.pixels.assign(static_cast<size_t>(ui.rows) * ui.width, 0);
    ui.row_valid.resize(ui.rows);
    for (int r = 1; r <= ui.rows; ++r) {
        const int n_r = map.row_samples(r);
        ui.row_valid[r - 1] = n_r;
        uint8_t* dst = ui.pixels.data() + static_cast<size_t>(r - 1) * ui.width;
        for (int t = 0; t < n_r; ++t) {
            const auto [x, y] = map.source(r, t);
            dst[t] = img.at(x, y);
        }
    }
    return ui;
}

RectUnwrapped stretch_rows(const UnwrappedImage& ui, int w_out) {
    if (w_out < 2)
        throw std::invalid_argument("stretch_rows: output width must be >= 2");
    RectUnwrapped rui;
    rui.rows = ui.rows;
    rui.width = w_out;
    rui.pixels.resize(static_cast<size_t>(ui.rows) * w_out);
    for (int r = 1; r <= ui.rows; ++r) {
        const int n_src = ui.row_valid[r - 1];
        if (n_src < 1)
            throw Error(ErrorCode::EmptyRow, "stretch_rows: row without valid pixels");
        const uint8_t* src = ui.pixels.data() + static_cast<size_t>(r - 1) * ui.width;
        uint8_t* dst = rui.pixels.data() + static_cast<size_t>(r - 1) * w_out;
        if (n_src == 1) {
            for (int u = 0; u < w_out; ++u)
                dst[u] = src[0];
            continue;
        }
        const double step = static_cast<double>(n_src - 1) / (w_out - 1);
        for (int u = 0; u < w_out; ++u) {
            const double s = u * step;
            int i0 = static_cast<int>(s);
            if (i0 > n_src - 2)
                i0 = n_src - 2;
            const double frac = s - i0;
            const double value = src[i0] + frac * (src[i0 + 1] - src[i0]);
            dst[u] = static_cast<uint8_t>(std::lround(value));
        }
    }
    return rui;
}

std::pair<int, int> trace_back(const PolarMap& map, int r, int t) {
    if (r < 1 || r > map.rows() || t < 0 || t >= map.row_samples(r))
        throw Error(ErrorCode::InvalidPosition, "trace_back: padding or out-of-range position");
    return map.source(r, t);
}

} // namespace fq
