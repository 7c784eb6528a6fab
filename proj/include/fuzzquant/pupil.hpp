#ifndef FUZZQUANT_PUPIL_HPP
#define FUZZQUANT_PUPIL_HPP

#include <cstdint>
#include <vector>

#include "fuzzquant/raster.hpp"

namespace fq {

struct PupilOptions {
    double min_area_frac = 0.0005; // of the image area
    double disc_likeness = 0.6;    // area / bounding-box area (ideal disc ~= pi/4)
};

/// Connected component of foreground runs (4-connectivity).
struct Component {
    long long area = 0;
    double centroid_x = 0.0;
    double centroid_y = 0.0;
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0; // inclusive bounding box

    long long bbox_area() const {
        return static_cast<long long>(max_x - min_x + 1) * (max_y - min_y + 1);
    }
};

/// Run-length connected components of a binary mask (non-zero = foreground).
/// Runs on adjacent rows connect when their column intervals overlap by at
/// least one column. Components come back in discovery order (top-to-bottom,
/// left-to-right of their first run).
std::vector<Component> rle_components(const std::vector<uint8_t>& mask, int width, int height);

/// Dark-cluster pupil finder: 3-means over the pixel intensities, binary mask
/// of the darkest cluster, run-length components, then the largest component
/// that looks like a disc (fill ratio against its bounding box). Center is
/// the component centroid and the radius comes from its area.
PupilCircle find_pupil(const GrayImage& img, const PupilOptions& options = {});

} // namespace fq

#endif
