#include "fuzzquant/kernels.hpp"

#include <atomic>

namespace fq::kernels {

#if defined(FUZZQUANT_HAVE_AVX2_TARGET)
bool cpu_has_avx2() {
    static const bool has = __builtin_cpu_supports("avx2");
    return has;
}
#endif

namespace {

std::atomic<bool> g_force_scalar{false};

bool use_avx2() {
#if defined(FUZZQUANT_HAVE_AVX2_TARGET)
    return !g_force_scalar.load(std::memory_order_relaxed) && cpu_has_avx2();
#else
    return false;
#endif
}

} // namespace

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

const char* active_target() { return use_avx2() ? "avx2" : "scalar"; }

uint64_t sum_u8(const uint8_t* data, size_t n) {
#if defined(FUZZQUANT_HAVE_AVX2_TARGET)
    if (use_avx2())
        return avx2::sum_u8(data, n);
#endif
    return scalar::sum_u8(data, n);
}

void mask_le_u8(const uint8_t* src, size_t n, uint8_t threshold, uint8_t* out) {
#if defined(FUZZQUANT_HAVE_AVX2_TARGET)
    if (use_avx2()) {
        avx2::mask_le_u8(src, n, threshold, out);
        return;
    }
#endif
    scalar::mask_le_u8(src, n, threshold, out);
}

void assign_nearest(const double* values, size_t n, const double* boundaries,
                    int num_boundaries, int32_t* labels) {
#if defined(FUZZQUANT_HAVE_AVX2_TARGET)
    if (use_avx2()) {
        avx2::assign_nearest(values, n, boundaries, num_boundaries, labels);
        return;
    }
#endif
    scalar::assign_nearest(values, n, boundaries, num_boundaries, labels);
}

void boundary_residual(const double* cfi, const int32_t* cci, size_t n, double* fib) {
#if defined(FUZZQUANT_HAVE_AVX2_TARGET)
    if (use_avx2()) {
        avx2::boundary_residual(cfi, cci, n, fib);
        return;
    }
#endif
    scalar::boundary_residual(cfi, cci, n, fib);
}

} // namespace fq::kernels
