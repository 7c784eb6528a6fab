#ifndef FUZZQUANT_CFIS_HPP
#define FUZZQUANT_CFIS_HPP

#include <cstdint>
#include <vector>

#include "fuzzquant/indicators.hpp"
#include "fuzzquant/polar.hpp"
#include "fuzzquant/pupil.hpp"
#include "fuzzquant/quantizer.hpp"
#include "fuzzquant/raster.hpp"

namespace fq {

/// Per-ring chromatic profiles of the unwrapped eye: A from the valid UI
/// pixels, B from the RUI rows, C the elementwise mean of A and B.
struct RadialProfiles {
    std::vector<double> A;
    std::vector<double> B;
    std::vector<double> C;
};

/// Crisp and fuzzy membership of each ring in one profile's iris band. The
/// crisp band is the longest contiguous run of middle-cluster rows; cfi/fib
/// carry the graded memberships and boundary indicator over the whole profile.
struct FuzzyIrisBand {
    std::vector<uint8_t> crisp;
    std::vector<int32_t> labels; // raw 3-means labels of the profile
    std::vector<double> cfi;
    std::vector<double> fib;
    int run_start = 0; // 1-based, inclusive
    int run_end = 0;
    long long cells_examined = 0;
};

struct StageTimings {
    int64_t pupil_us = 0;
    int64_t unwrap_us = 0;
    int64_t profiles_us = 0;
    int64_t quantize_us = 0;
    int64_t vote_us = 0;
    int64_t total_us = 0;
};

struct SegmentationResult {
    PupilCircle pupil;
    int limbic_row = 0; // 1-based ring index; ring r has radius r pixels
    std::vector<uint8_t> voted;
    FuzzyIrisBand bands[3]; // from P(A), Q(B), R(C)
    int band_start = 0;     // selected voted run, 1-based inclusive
    int band_end = 0;
    GrayImage iris_segment; // RUI rows band_start..band_end
    int unwrap_radius = 0;  // L, the radial search length
    long long cells_examined = 0;
    StageTimings timings;
};

struct CfisConfig {
    int rui_width = 512;
    int max_radius = 0; // 0 = largest disc around the pupil center that fits
    PupilOptions pupil;
};

RadialProfiles radial_profiles(const UnwrappedImage& ui, const RectUnwrapped& rui);

/// Middle-intensity cluster membership of each ring, restricted to the
/// longest contiguous run (ties resolve to the outermost run).
FuzzyIrisBand iris_band(const std::vector<double>& profile, const Quantization& q3);

/// Majority vote across the three bands.
std::vector<uint8_t> vote_iris_rows(const std::vector<uint8_t>& p,
                                    const std::vector<uint8_t>& q,
                                    const std::vector<uint8_t>& r);

/// Last row of the longest voted run (ties to the outermost run).
int limbic_boundary(const std::vector<uint8_t>& voted);

/// Full CFIS pipeline. Errors carry the failing stage: "pupil" for pupil
/// finder failures, "limbic" for everything after it.
SegmentationResult segment(const GrayImage& img, const CfisConfig& config = {});

} // namespace fq

#endif
