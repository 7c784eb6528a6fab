#include "fuzzquant/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fuzzquant/kernels.hpp"

namespace fq {

std::vector<int32_t> crisp_indicator(const Quantization& q) {
    return q.labels;
}

std::vector<std::string> crisp_symbols(const Quantization& q) {
    std::vector<std::string> out;
    out.reserve(q.labels.size());
    for (int32_t label : q.labels) {
        if (q.symbols && label >= 1 && static_cast<size_t>(label) <= q.symbols->size())
            out.push_back((*q.symbols)[label - 1]);
        else
            out.push_back(std::to_string(label));
    }
    return out;
}

std::vector<double> fuzzy_indicator(const Signal& signal, const Quantization& q) {
    const auto& c = q.centroids;
    const int n = static_cast<int>(c.size());
    for (int j = 0; j + 1 < n; ++j) {
        if (!(c[j] < c[j + 1]))
            throw Error(ErrorCode::DegenerateCentroids,
                        "fuzzy_indicator: centroids not strictly increasing");
    }
    if (signal.values.size() != q.labels.size())
        throw Error(ErrorCode::LengthMismatch,
                    "fuzzy_indicator: label count does not match signal length");

    std::vector<double> cfi(signal.values.size());
    for (size_t i = 0; i < signal.values.size(); ++i) {
        const int j = q.labels[i]; // 1-based
        if (j < 1 || j > n)
            throw std::invalid_argument("fuzzy_indicator: label out of range");
        const double v = signal.values[i];
        double value;
        if (v >= c[j - 1]) {
            if (j == n) {
                value = j; // full member of the top cluster
            } else {
                const double mid = 0.5 * (c[j - 1] + c[j]);
                value = v >= mid ? j + 0.5 : j + 0.5 * ((v - c[j - 1]) / (mid - c[j - 1]));
            }
        } else {
            if (j == 1) {
                value = j;
            } else {
                const double mid = 0.5 * (c[j - 2] + c[j - 1]);
                value = v <= mid ? j - 0.5 : j - 0.5 * ((c[j - 1] - v) / (c[j - 1] - mid));
            }
        }
        cfi[i] = value;
    }
    return cfi;
}

std::vector<double> boundary_indicator(const std::vector<double>& cfi,
                                       const std::vector<int32_t>& cci) {
    if (cfi.size() != cci.size())
        throw Error(ErrorCode::LengthMismatch, "boundary_indicator: cfi/cci length mismatch");
    std::vector<double> fib(cfi.size());
    kernels::boundary_residual(cfi.data(), cci.data(), cfi.size(), fib.data());
    return fib;
}

std::vector<double> boundary_indicator(const CombinedIndicators& ind) {
    return boundary_indicator(ind.cfi, ind.cci);
}

CombinedIndicators make_indicators(const Signal& signal, const Quantization& q) {
    CombinedIndicators ind;
    ind.n = q.k;
    ind.cci = crisp_indicator(q);
    ind.cfi = fuzzy_indicator(signal, q);
    ind.fib = boundary_indicator(ind.cfi, ind.cci);
    return ind;
}

namespace {

void add_violation(TripletReport& report, const char* rule, size_t index,
                   const std::string& detail) {
    for (const auto& v : report.violations)
        if (v.rule == rule)
            return; // keep the first offending index per rule
    report.ok = false;
    report.violations.push_back({rule, index, detail});
}

} // namespace

TripletReport verify_triplet(const CombinedIndicators& ind, const Signal* signal) {
    TripletReport report;
    const size_t len = ind.cci.size();
    if (ind.cfi.size() != len || ind.fib.size() != len) {
        add_violation(report, "equal-lengths", 0, "cci/cfi/fib sizes differ");
        return report;
    }
    for (size_t i = 0; i < len; ++i) {
        if (ind.cci[i] < 1 || ind.cci[i] > ind.n) {
            add_violation(report, "cci-range", i, "cci outside 1..n");
            break;
        }
    }
    for (size_t i = 0; i < len; ++i) {
        if (!(std::fabs(ind.cfi[i] - ind.cci[i]) <= 0.5)) {
            add_violation(report, "round-back", i, "|cfi - cci| > 0.5");
            break;
        }
    }
    for (size_t i = 0; i < len; ++i) {
        if (ind.fib[i] != 2.0 * std::fabs(ind.cfi[i] - static_cast<double>(ind.cci[i]))) {
            add_violation(report, "fib-identity", i, "fib != 2|cfi - cci|");
            break;
        }
    }
    for (size_t i = 0; i < len; ++i) {
        if (!(ind.fib[i] >= 0.0 && ind.fib[i] <= 1.0)) {
            add_violation(report, "fib-range", i, "fib outside [0,1]");
            break;
        }
    }
    if (signal) {
        if (signal->values.size() != len) {
            add_violation(report, "signal-length", 0, "signal length differs from triplet");
        } else if (len > 1) {
            std::vector<size_t> order(len);
            std::iota(order.begin(), order.end(), size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
                return signal->values[a] < signal->values[b];
            });
            for (size_t idx = 1; idx < len; ++idx) {
                const size_t prev = order[idx - 1];
                const size_t cur = order[idx];
                const bool equal_values = signal->values[prev] == signal->values[cur];
                const bool bad = equal_values ? ind.cfi[prev] != ind.cfi[cur]
                                              : ind.cfi[prev] > ind.cfi[cur];
                if (bad) {
                    add_violation(report, "cfi-monotone", cur,
                                  "cfi not monotone in the sample value");
                    break;
                }
            }
        }
    }
    return report;
}

} // namespace fq
