#include "fuzzquant/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fuzzquant/kernels.hpp"

namespace fq {

std::vector<double> decision_boundaries(const std::vector<double>& centroids) {
    std::vector<double> bounds;
    if (centroids.size() < 2)
        return bounds;
    bounds.reserve(centroids.size() - 1);
    for (size_t j = 0; j + 1 < centroids.size(); ++j)
        bounds.push_back(0.5 * (centroids[j] + centroids[j + 1]));
    return bounds;
}

namespace {

// Cluster j (0-based) holds sorted[splits[j] .. splits[j+1]).
using Splits = std::vector<size_t>;

Splits compute_splits(const std::vector<double>& sorted, const std::vector<double>& centroids) {
    const size_t k = centroids.size();
    Splits splits(k + 1, 0);
    splits[k] = sorted.size();
    const std::vector<double> bounds = decision_boundaries(centroids);
    for (size_t j = 0; j + 1 < k; ++j) {
        // values equal to a boundary stay in the lower cluster
        splits[j + 1] = std::upper_bound(sorted.begin(), sorted.end(), bounds[j]) - sorted.begin();
    }
    return splits;
}

bool has_empty(const Splits& splits) {
    for (size_t j = 0; j + 1 < splits.size(); ++j)
        if (splits[j] == splits[j + 1])
            return true;
    return false;
}

double splits_sse(const std::vector<double>& sorted, const Splits& splits,
                  const std::vector<double>& centroids) {
    double total = 0.0;
    for (size_t j = 0; j + 1 < splits.size(); ++j) {
        const double c = centroids[j];
        for (size_t i = splits[j]; i < splits[j + 1]; ++i) {
            const double d = sorted[i] - c;
            total += d * d;
        }
    }
    return total;
}

std::vector<double> cluster_means(const std::vector<double>& sorted, const Splits& splits,
                                  const std::vector<double>& fallback) {
    std::vector<double> means(fallback);
    for (size_t j = 0; j + 1 < splits.size(); ++j) {
        const size_t count = splits[j + 1] - splits[j];
        if (count == 0)
            continue;
        double sum = 0.0;
        for (size_t i = splits[j]; i < splits[j + 1]; ++i)
            sum += sorted[i];
        means[j] = sum / static_cast<double>(count);
    }
    return means;
}

// Reseed the (first) empty cluster's centroid at the sample farthest from
// its currently assigned centroid. Clusters are contiguous ranges of the
// sorted data, so the farthest sample of each cluster sits at one of its ends.
void reseed_empty(const std::vector<double>& sorted, const Splits& splits,
                  std::vector<double>& centroids) {
    size_t empty_j = 0;
    for (size_t j = 0; j + 1 < splits.size(); ++j) {
        if (splits[j] == splits[j + 1]) {
            empty_j = j;
            break;
        }
    }
    double best_dist = -1.0;
    double best_value = sorted.front();
    for (size_t j = 0; j + 1 < splits.size(); ++j) {
        if (splits[j] == splits[j + 1])
            continue;
        for (size_t i : {splits[j], splits[j + 1] - 1}) {
            const double d = std::fabs(sorted[i] - centroids[j]);
            if (d > best_dist) {
                best_dist = d;
                best_value = sorted[i];
            }
        }
    }
    centroids[empty_j] = best_value;
}

} // namespace

Quantization kmeans_quantize(const Signal& signal, int k, const QuantizeOptions& options) {
    const size_t n = signal.values.size();
    if (n == 0)
        throw Error(ErrorCode::EmptySignal, "kmeans_quantize: empty signal");
    if (k < 1)
        throw std::invalid_argument("kmeans_quantize: k must be >= 1");
    for (double v : signal.values) {
        if (!std::isfinite(v))
            throw Error(ErrorCode::NonFiniteValue, "kmeans_quantize: non-finite sample");
    }

    std::vector<double> sorted(signal.values);
    std::sort(sorted.begin(), sorted.end());

    size_t distinct = 1;
    for (size_t i = 1; i < n; ++i)
        if (sorted[i] != sorted[i - 1])
            ++distinct;
    if (distinct < static_cast<size_t>(k))
        throw Error(ErrorCode::DegenerateK,
                    "kmeans_quantize: fewer than k distinct values (" +
                        std::to_string(distinct) + " < " + std::to_string(k) + ")");

    // Evenly spaced codebook over the value range; distinct whenever k >= 2
    // because the range is then non-degenerate.
    const double lo = sorted.front();
    const double hi = sorted.back();
    std::vector<double> centroids(k);
    for (int j = 0; j < k; ++j)
        centroids[j] = lo + (j + 0.5) * (hi - lo) / k;

    Quantization out;
    out.k = k;

    Splits splits = compute_splits(sorted, centroids);
    out.sse_trace.push_back(splits_sse(sorted, splits, centroids));

    int iterations = 0;
    while (true) {
        if (++iterations > options.max_iterations)
            throw Error(ErrorCode::ConvergenceFailure,
                        "kmeans_quantize: no fixed point within " +
                            std::to_string(options.max_iterations) + " iterations");
        if (has_empty(splits)) {
            reseed_empty(sorted, splits, centroids);
            std::sort(centroids.begin(), centroids.end());
            splits = compute_splits(sorted, centroids);
            out.sse_trace.push_back(splits_sse(sorted, splits, centroids));
            continue;
        }
        std::vector<double> updated = cluster_means(sorted, splits, centroids);
        std::sort(updated.begin(), updated.end());
        Splits new_splits = compute_splits(sorted, updated);
        out.sse_trace.push_back(splits_sse(sorted, new_splits, updated));
        centroids = std::move(updated);
        if (new_splits == splits && !has_empty(new_splits))
            break;
        splits = std::move(new_splits);
    }

    for (int j = 0; j + 1 < k; ++j) {
        if (!(centroids[j] < centroids[j + 1]))
            throw Error(ErrorCode::DegenerateK,
                        "kmeans_quantize: coinciding centroids at fixed point");
    }

    out.centroids = centroids;
    out.sse = splits_sse(sorted, splits, centroids);
    out.labels.resize(n);
    const std::vector<double> bounds = decision_boundaries(centroids);
    kernels::assign_nearest(signal.values.data(), n, bounds.data(),
                            static_cast<int>(bounds.size()), out.labels.data());
    return out;
}

double sse(const Signal& signal, const Quantization& q) {
    if (signal.values.size() != q.labels.size())
        throw Error(ErrorCode::LengthMismatch,
                    "sse: label count does not match signal length");
    double total = 0.0;
    for (size_t i = 0; i < signal.values.size(); ++i) {
        const int32_t label = q.labels[i];
        if (label < 1 || label > q.k)
            throw std::invalid_argument("sse: label out of range");
        const double d = signal.values[i] - q.centroids[label - 1];
        total += d * d;
    }
    return total;
}

} // namespace fq
