#ifndef FUZZQUANT_KERNELS_HPP
#define FUZZQUANT_KERNELS_HPP

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops of the pipeline. Every kernel exists as a scalar
// reference implementation and, on x86-64, an AVX2 variant selected at
// runtime. All variants are bit-exact equivalent: integer kernels by nature,
// the double kernels because each element is an independent correctly-rounded
// expression (no reductions over floating point, no FMA contraction).

namespace fq::kernels {

// Sum of n bytes. Exact (integer accumulation, order-free).
uint64_t sum_u8(const uint8_t* data, size_t n);

// out[i] = (src[i] <= threshold) ? 1 : 0.
void mask_le_u8(const uint8_t* src, size_t n, uint8_t threshold, uint8_t* out);

// 1-based nearest-cluster labels from k-1 sorted decision boundaries
// (midpoints between adjacent ascending centroids):
//   labels[i] = 1 + |{ j : values[i] > boundaries[j] }|
// A value sitting exactly on a boundary joins the lower cluster.
void assign_nearest(const double* values, size_t n, const double* boundaries,
                    int num_boundaries, int32_t* labels);

// fib[i] = 2 * |cfi[i] - cci[i]|.
void boundary_residual(const double* cfi, const int32_t* cci, size_t n, double* fib);

// Name of the dispatch target in use ("avx2" or "scalar").
const char* active_target();

// Testing hook: pin dispatch to the scalar path.
void force_scalar(bool on);

namespace scalar {
uint64_t sum_u8(const uint8_t* data, size_t n);
void mask_le_u8(const uint8_t* src, size_t n, uint8_t threshold, uint8_t* out);
void assign_nearest(const double* values, size_t n, const double* boundaries,
                    int num_boundaries, int32_t* labels);
void boundary_residual(const double* cfi, const int32_t* cci, size_t n, double* fib);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define FUZZQUANT_HAVE_AVX2_TARGET 1
bool cpu_has_avx2();
namespace avx2 {
uint64_t sum_u8(const uint8_t* data, size_t n);
void mask_le_u8(const uint8_t* src, size_t n, uint8_t threshold, uint8_t* out);
void assign_nearest(const double* values, size_t n, const double* boundaries,
                    int num_boundaries, int32_t* labels);
void boundary_residual(const double* cfi, const int32_t* cci, size_t n, double* fib);
} // namespace avx2
#endif

} // namespace fq::kernels

#endif
