#include "fuzzquant/kernels.hpp"

#include <cmath>

namespace fq::kernels::scalar {

uint64_t sum_u8(const uint8_t* data, size_t n) {
    uint64_t sum = 0;
    for (size_t i = 0; i < n; ++i)
        sum += data[i];
    return sum;
}

void mask_le_u8(const uint8_t* src, size_t n, uint8_t threshold, uint8_t* out) {
    for (size_t i = 0; i < n; ++i)
        out[i] = src[i] <= threshold ? 1 : 0;
}

void assign_nearest(const double* values, size_t n, const double* boundaries,
                    int num_boundaries, int32_t* labels) {
    for (size_t i = 0; i < n; ++i) {
        const double v = values[i];
        int32_t label = 1;
        for (int j = 0; j < num_boundaries; ++j)
            label += v > boundaries[j] ? 1 : 0;
        labels[i] = label;
    }
}

void boundary_residual(const double* cfi, const int32_t* cci, size_t n, double* fib) {
    for (size_t i = 0; i < n; ++i)
        fib[i] = 2.0 * std::fabs(cfi[i] - static_cast<double>(cci[i]));
}

} // namespace fq::kernels::scalar
