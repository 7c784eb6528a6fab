#ifndef FUZZQUANT_INDICATORS_HPP
#define FUZZQUANT_INDICATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fuzzquant/quantizer.hpp"

namespace fq {

/// The interdependent triplet built on top of a quantization:
///   cci — combined crisp indicator, the 1..n cluster index per sample;
///   cfi — combined fuzzy indicator, monotone in the sample value, equal to
///         cci at centroids and cci +/- 0.5 at decision boundaries;
///   fib — fuzzy indicator of the boundaries, 2*|cfi - cci|, in [0,1],
///         0 at full membership and 1 exactly on inter-cluster boundaries.
struct CombinedIndicators {
    std::vector<int32_t> cci;
    std::vector<double> cfi;
    std::vector<double> fib;
    int n = 0; // number of sets in the disjoint reunion (the cluster count)
};

/// The crisp indicator is the label vector itself.
std::vector<int32_t> crisp_indicator(const Quantization& q);

/// Labels mapped through the quantization's symbol sequence (cluster index j
/// encodes as symbols[j-1]); falls back to the decimal index when no symbol
/// sequence is attached. Any bijective alphabet induces the same partition.
std::vector<std::string> crisp_symbols(const Quantization& q);

/// Piecewise-linear fuzzy membership, anchored so that a sample at its
/// centroid scores exactly its label and a sample on a decision midpoint
/// scores exactly label +/- 0.5. Values beyond the outermost centroids clamp
/// to full membership of the edge cluster.
std::vector<double> fuzzy_indicator(const Signal& signal, const Quantization& q);

std::vector<double> boundary_indicator(const std::vector<double>& cfi,
                                       const std::vector<int32_t>& cci);
std::vector<double> boundary_indicator(const CombinedIndicators& ind);

CombinedIndicators make_indicators(const Signal& signal, const Quantization& q);

struct TripletViolation {
    std::string rule;
    size_t index = 0;
    std::string detail;
};

struct TripletReport {
    bool ok = true;
    std::vector<TripletViolation> violations; // first offending index per rule
};

/// Executable check of the triplet invariants: equal lengths, cci in 1..n,
/// |cfi - cci| <= 0.5 (round-back), fib == 2|cfi - cci| exactly, fib in [0,1].
/// With the originating signal supplied, also checks that cfi is monotone
/// non-decreasing in the sample value.
TripletReport verify_triplet(const CombinedIndicators& ind, const Signal* signal = nullptr);

} // namespace fq

#endif
