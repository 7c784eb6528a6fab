#include "fuzzquant/cfis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "fuzzquant/kernels.hpp"

namespace fq {

namespace {

int64_t elapsed_us(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration_cast<std::chrono::microseconds>(
               std::chrono::steady_clock::now() - since)
        .count();
}

// Longest run of non-zero entries; ties go to the run with the larger start.
// Returns {start, end} 1-based inclusive, or {0, 0} when all entries are zero.
std::pair<int, int> longest_true_run(const std::vector<uint8_t>& flags) {
    int best_start = 0, best_len = 0;
    int start = -1;
    const int n = static_cast<int>(flags.size());
    for (int i = 0; i <= n; ++i) {
        if (i < n && flags[i]) {
            if (start < 0)
                start = i;
        } else if (start >= 0) {
            const int len = i - start;
            if (len > best_len || (len == best_len && start > best_start)) {
                best_len = len;
                best_start = start;
            }
            start = -1;
        }
    }
    if (best_len == 0)
        return {0, 0};
    return {best_start + 1, best_start + best_len};
}

} // namespace

RadialProfiles radial_profiles(const UnwrappedImage& ui, const RectUnwrapped& rui) {
    if (ui.rows != rui.rows)
        throw Error(ErrorCode::RowCountMismatch, "radial_profiles: UI/RUI row counts differ");
    RadialProfiles profiles;
    const int L = ui.rows;
    profiles.A.resize(L);
    profiles.B.resize(L);
    profiles.C.resize(L);
    for (int r = 1; r <= L; ++r) {
        const int n_r = ui.row_valid[r - 1];
        if (n_r < 1)
            throw Error(ErrorCode::EmptyRow, "radial_profiles: UI row without valid pixels");
        const uint8_t* ui_row = ui.pixels.data() + static_cast<size_t>(r - 1) * ui.width;
        const uint8_t* rui_row = rui.pixels.data() + static_cast<size_t>(r - 1) * rui.width;
        profiles.A[r - 1] =
            static_cast<double>(kernels::sum_u8(ui_row, n_r)) / n_r;
        profiles.B[r - 1] =
            static_cast<double>(kernels::sum_u8(rui_row, rui.width)) / rui.width;
        profiles.C[r - 1] = 0.5 * (profiles.A[r - 1] + profiles.B[r - 1]);
    }
    return profiles;
}

FuzzyIrisBand iris_band(const std::vector<double>& profile, const Quantization& q3) {
    if (q3.k != 3)
        throw std::invalid_argument("iris_band: expected a 3-means quantization");
    if (q3.labels.size() != profile.size())
        throw Error(ErrorCode::LengthMismatch, "iris_band: quantization/profile length mismatch");

    FuzzyIrisBand band;
    band.crisp.resize(profile.size());
    for (size_t i = 0; i < profile.size(); ++i) {
        band.crisp[i] = q3.labels[i] == 2 ? 1 : 0; // middle-intensity cluster
        ++band.cells_examined;
    }
    const auto [run_start, run_end] = longest_true_run(band.crisp);
    if (run_start == 0)
        throw Error(ErrorCode::NoIrisBand, "iris_band: middle cluster is empty");
    band.run_start = run_start;
    band.run_end = run_end;
    for (size_t i = 0; i < band.crisp.size(); ++i) {
        const int row = static_cast<int>(i) + 1;
        if (row < run_start || row > run_end)
            band.crisp[i] = 0;
    }

    Signal profile_signal{profile};
    band.labels = q3.labels;
    band.cfi = fuzzy_indicator(profile_signal, q3);
    band.fib = boundary_indicator(band.cfi, q3.labels);
    return band;
}

std::vector<uint8_t> vote_iris_rows(const std::vector<uint8_t>& p,
                                    const std::vector<uint8_t>& q,
                                    const std::vector<uint8_t>& r) {
    if (p.size() != q.size() || q.size() != r.size())
        throw Error(ErrorCode::LengthMismatch, "vote_iris_rows: band lengths differ");
    std::vector<uint8_t> voted(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        const int votes = (p[i] ? 1 : 0) + (q[i] ? 1 : 0) + (r[i] ? 1 : 0);
        voted[i] = votes >= 2 ? 1 : 0;
    }
    return voted;
}

int limbic_boundary(const std::vector<uint8_t>& voted) {
    const auto [start, end] = longest_true_run(voted);
    if (start == 0)
        throw Error(ErrorCode::NoIrisBand, "limbic_boundary: no voted iris rows");
    return end;
}

namespace {

[[noreturn]] void rethrow_with_stage(const Error& e, const char* stage) {
    throw Error(e.code(), e.what(), stage);
}

} // namespace

SegmentationResult segment(const GrayImage& img, const CfisConfig& config) {
    SegmentationResult result;
    const auto t_total = std::chrono::steady_clock::now();

    auto t_stage = std::chrono::steady_clock::now();
    try {
        result.pupil = find_pupil(img, config.pupil);
    } catch (const Error& e) {
        rethrow_with_stage(e, "pupil");
    }
    result.timings.pupil_us = elapsed_us(t_stage);

    UnwrappedImage ui;
    RectUnwrapped rui;
    t_stage = std::chrono::steady_clock::now();
    try {
        const int cx = static_cast<int>(std::lround(result.pupil.cx));
        const int cy = static_cast<int>(std::lround(result.pupil.cy));
        const int fit = std::min(std::min(cx, img.width - 1 - cx),
                                 std::min(cy, img.height - 1 - cy));
        int radius = config.max_radius > 0 ? std::min(config.max_radius, fit) : fit;
        if (radius < 3)
            throw Error(ErrorCode::DiscOutOfBounds,
                        "segment: pupil too close to the border to unwrap");
        const PolarMap map = build_polar_map(cx, cy, radius, img.width, img.height);
        ui = unwrap(img, map);
        rui = stretch_rows(ui, config.rui_width);
        result.unwrap_radius = radius;
    } catch (const Error& e) {
        rethrow_with_stage(e, "limbic");
    }
    result.timings.unwrap_us = elapsed_us(t_stage);

    t_stage = std::chrono::steady_clock::now();
    RadialProfiles profiles;
    try {
        profiles = radial_profiles(ui, rui);
    } catch (const Error& e) {
        rethrow_with_stage(e, "limbic");
    }
    result.timings.profiles_us = elapsed_us(t_stage);

    t_stage = std::chrono::steady_clock::now();
    Quantization p_q, q_q, r_q;
    try {
        p_q = kmeans_quantize(Signal{profiles.A}, 3);
        q_q = kmeans_quantize(Signal{profiles.B}, 3);
        r_q = kmeans_quantize(Signal{profiles.C}, 3);
    } catch (const Error& e) {
        rethrow_with_stage(e, "limbic");
    }
    result.timings.quantize_us = elapsed_us(t_stage);

    t_stage = std::chrono::steady_clock::now();
    try {
        result.bands[0] = iris_band(profiles.A, p_q);
        result.bands[1] = iris_band(profiles.B, q_q);
        result.bands[2] = iris_band(profiles.C, r_q);
        result.cells_examined = result.bands[0].cells_examined +
                                result.bands[1].cells_examined +
                                result.bands[2].cells_examined;
        result.voted = vote_iris_rows(result.bands[0].crisp, result.bands[1].crisp,
                                      result.bands[2].crisp);
        result.limbic_row = limbic_boundary(result.voted);
        const auto [band_start, band_end] = longest_true_run(result.voted);
        result.band_start = band_start;
        result.band_end = band_end;
    } catch (const Error& e) {
        rethrow_with_stage(e, "limbic");
    }
    result.timings.vote_us = elapsed_us(t_stage);

    const int rows = result.band_end - result.band_start + 1;
    result.iris_segment = GrayImage(rui.width, rows);
    for (int r = 0; r < rows; ++r) {
        const uint8_t* src =
            rui.pixels.data() + static_cast<size_t>(result.band_start - 1 + r) * rui.width;
        std::copy(src, src + rui.width,
                  result.iris_segment.pixels.begin() + static_cast<size_t>(r) * rui.width);
    }

    result.timings.total_us = elapsed_us(t_total);
    return result;
}

} // namespace fq
