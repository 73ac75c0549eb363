#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops. Every kernel has a scalar reference and an AVX2
// variant; the variant is chosen once at runtime from CPUID, overridable with
// WAVECAST_SIMD=scalar|avx2.
//
// Elementwise kernels perform the same IEEE operations in the same order in
// both variants, so their results are bit-identical. dot() is a reduction and
// only agrees to rounding.

namespace wavecast::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
    // y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // y[i] += x[i]
    void (*add)(const double* x, double* y, std::size_t n);
    // y[i] += (x[i] - c)^2
    void (*add_squared_diff)(const double* x, double c, double* y, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    // out[t] = sum_l taps[l] * in[(t - l*stride) mod n]
    void (*circular_filter)(const double* in, std::size_t n, const double* taps, std::size_t n_taps,
                            std::size_t stride, double* out);
    // out[t] = sum_l taps[l] * in[(t + l*stride) mod n]
    void (*circular_filter_adjoint)(const double* in, std::size_t n, const double* taps,
                                    std::size_t n_taps, std::size_t stride, double* out);
};

bool isa_available(Isa isa);
const KernelTable& kernels(Isa isa);
Isa active_isa();
const KernelTable& active();
std::string_view isa_name(Isa isa);

// Span wrappers over the active table. Sizes are checked.
void axpy(double a, std::span<const double> x, std::span<double> y);
void add(std::span<const double> x, std::span<double> y);
void add_squared_diff(std::span<const double> x, double c, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
void circular_filter(std::span<const double> in, std::span<const double> taps, std::size_t stride,
                     std::span<double> out);
void circular_filter_adjoint(std::span<const double> in, std::span<const double> taps,
                             std::size_t stride, std::span<double> out);

namespace detail {
extern const KernelTable scalar_table;
#if defined(WAVECAST_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace wavecast::simd
