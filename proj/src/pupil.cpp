#include "fuzzquant/pupil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "fuzzquant/kernels.hpp"
#include "fuzzquant/quantizer.hpp"

namespace fq {

namespace {

struct Run {
    int row;
    int begin; // first column
    int end;   // one past last column
    int parent;
};

int find_root(std::vector<Run>& runs, int i) {
    while (runs[i].parent != i) {
        runs[i].parent = runs[runs[i].parent].parent;
        i = runs[i].parent;
    }
    return i;
}

void union_runs(std::vector<Run>& runs, int a, int b) {
    const int ra = find_root(runs, a);
    const int rb = find_root(runs, b);
    if (ra != rb)
        runs[std::max(ra, rb)].parent = std::min(ra, rb);
}

} // namespace

std::vector<Component> rle_components(const std::vector<uint8_t>& mask, int width, int height) {
    if (static_cast<size_t>(width) * height != mask.size())
        throw std::invalid_argument("rle_components: mask size does not match dimensions");

    std::vector<Run> runs;
    int prev_begin = 0, prev_end = 0;
    for (int y = 0; y < height; ++y) {
        const uint8_t* row = mask.data() + static_cast<size_t>(y) * width;
        const int row_first = static_cast<int>(runs.size());
        int x = 0;
        while (x < width) {
            while (x < width && row[x] == 0)
                ++x;
            if (x >= width)
                break;
            const int begin = x;
            while (x < width && row[x] != 0)
                ++x;
            const int idx = static_cast<int>(runs.size());
            runs.push_back({y, begin, x, idx});
            // connect with overlapping runs of the previous row
            for (int p = prev_begin; p < prev_end; ++p) {
                if (runs[p].begin < x && runs[p].end > begin)
                    union_runs(runs, p, idx);
            }
        }
        prev_begin = row_first;
        prev_end = static_cast<int>(runs.size());
    }

    std::vector<int> root_to_comp(runs.size(), -1);
    std::vector<Component> components;
    std::vector<double> sum_x(runs.size(), 0.0), sum_y(runs.size(), 0.0);
    for (int i = 0; i < static_cast<int>(runs.size()); ++i) {
        const int root = find_root(runs, i);
        int c = root_to_comp[root];
        if (c < 0) {
            c = static_cast<int>(components.size());
            root_to_comp[root] = c;
            Component comp;
            comp.min_x = runs[i].begin;
            comp.max_x = runs[i].end - 1;
            comp.min_y = comp.max_y = runs[i].row;
            components.push_back(comp);
        }
        Component& comp = components[c];
        const long long len = runs[i].end - runs[i].begin;
        comp.area += len;
        // columns begin..end-1 sum to len*(begin+end-1)/2
        sum_x[c] += 0.5 * len * (runs[i].begin + runs[i].end - 1);
        sum_y[c] += static_cast<double>(len) * runs[i].row;
        comp.min_x = std::min(comp.min_x, runs[i].begin);
        comp.max_x = std::max(comp.max_x, runs[i].end - 1);
        comp.min_y = std::min(comp.min_y, runs[i].row);
        comp.max_y = std::max(comp.max_y, runs[i].row);
    }
    for (size_t c = 0; c < components.size(); ++c) {
        components[c].centroid_x = sum_x[c] / components[c].area;
        components[c].centroid_y = sum_y[c] / components[c].area;
    }
    return components;
}

PupilCircle find_pupil(const GrayImage& img, const PupilOptions& options) {
    if (img.width < 32 || img.height < 32)
        throw std::invalid_argument("find_pupil: image must be at least 32x32");

    // An image without three separable intensity bands has no pupil to find.
    bool seen[256] = {};
    int distinct = 0;
    for (uint8_t px : img.pixels) {
        if (!seen[px]) {
            seen[px] = true;
            ++distinct;
        }
    }
    if (distinct < 3)
        throw Error(ErrorCode::PupilNotFound,
                    "find_pupil: fewer than three distinct intensities");

    Signal signal;
    signal.values.assign(img.pixels.begin(), img.pixels.end());
    const Quantization q = kmeans_quantize(signal, 3);

    // Darkest cluster = intensities at or below the first decision boundary.
    const double dark_boundary = 0.5 * (q.centroids[0] + q.centroids[1]);
    const uint8_t threshold = static_cast<uint8_t>(
        std::clamp(std::floor(dark_boundary), 0.0, 255.0));
    std::vector<uint8_t> mask(img.pixels.size());
    kernels::mask_le_u8(img.pixels.data(), img.pixels.size(), threshold, mask.data());

    const std::vector<Component> components = rle_components(mask, img.width, img.height);
    // the radius-from-area rule needs at least pi pixels for a radius of 1
    const double min_area = std::max(options.min_area_frac * img.width * img.height, 4.0);
    const Component* best = nullptr;
    for (const Component& comp : components) {
        if (comp.area < min_area)
            continue;
        const double fill = static_cast<double>(comp.area) / comp.bbox_area();
        if (fill < options.disc_likeness)
            continue;
        if (!best || comp.area > best->area)
            best = &comp;
    }
    if (!best)
        throw Error(ErrorCode::PupilNotFound, "find_pupil: no disc-like dark component");

    PupilCircle circle;
    circle.cx = best->centroid_x;
    circle.cy = best->centroid_y;
    circle.radius = std::sqrt(best->area / std::numbers::pi);
    if (circle.cx - circle.radius < 0 || circle.cx + circle.radius > img.width - 1 ||
        circle.cy - circle.radius < 0 || circle.cy + circle.radius > img.height - 1)
        throw Error(ErrorCode::PupilNotFound, "find_pupil: candidate circle cut off by border");
    return circle;
}

} // namespace fq
