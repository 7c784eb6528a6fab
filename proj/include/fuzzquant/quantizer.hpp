#ifndef FUZZQUANT_QUANTIZER_HPP
#define FUZZQUANT_QUANTIZER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fuzzquant/errors.hpp"

namespace fq {

/// A finite sequence of real scalar samples (gray levels in the iris
/// application, but arbitrary units are fine).
struct Signal {
    std::vector<double> values;

    size_t size() const { return values.size(); }
};

struct QuantizeOptions {
    int max_iterations = 200;
};

/// Result of a 1-D k-means run: a Lloyd fixed point.
///
/// Invariants: centroids strictly ascending; labels[i] is the 1-based index
/// of the centroid nearest to values[i] (midpoint ties toward the lower
/// index); every cluster is non-empty; each centroid is the mean of its
/// cluster. The optional symbol sequence re-encodes labels for the combined
/// crisp indicator (any bijective alphabet induces the same partition).
struct Quantization {
    int k = 0;
    std::vector<double> centroids;
    std::vector<int32_t> labels;
    std::optional<std::vector<std::string>> symbols;
    double sse = 0.0;
    std::vector<double> sse_trace; // SSE after every assignment step, non-increasing
};

/// Midpoints between adjacent centroids; the k-1 decision boundaries of the
/// nearest-centroid rule.
std::vector<double> decision_boundaries(const std::vector<double>& centroids);

/// Lloyd iteration over the sorted samples (clusters of a 1-D quantization
/// are contiguous ranges, so assignment reduces to boundary searches).
/// Deterministic: centroids start evenly spaced over the value range, the
/// loop stops at an exact fixed point (no label changes), and an emptied
/// cluster is reseeded at the sample farthest from its current centroid.
Quantization kmeans_quantize(const Signal& signal, int k, const QuantizeOptions& options = {});

/// Within-cluster sum of squared errors for an arbitrary (signal, quantization)
/// pair, summed in sample order.
double sse(const Signal& signal, const Quantization& q);

} // namespace fq

#endif
