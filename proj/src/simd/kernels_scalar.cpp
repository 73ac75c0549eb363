#include "wavecast/simd.hpp"

namespace wavecast::simd::detail {
namespace {

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void add(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + x[i];
}

void add_squared_diff(const double* x, double c, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - c;
        y[i] = y[i] + d * d;
    }
}

double dot(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

void circular_filter(const double* in, std::size_t n, const double* taps, std::size_t n_taps,
                     std::size_t stride, double* out) {
    for (std::size_t t = 0; t < n; ++t) {
        double acc = taps[0] * in[t];
        for (std::size_t l = 1; l < n_taps; ++l) {
            const std::size_t back = (l * stride) % n;
            const std::size_t idx = t >= back ? t - back : t + n - back;
            acc = acc + taps[l] * in[idx];
        }
        out[t] = acc;
    }
}

void circular_filter_adjoint(const double* in, std::size_t n, const double* taps,
                             std::size_t n_taps, std::size_t stride, double* out) {
    for (std::size_t t = 0; t < n; ++t) {
        double acc = taps[0] * in[t];
        for (std::size_t l = 1; l < n_taps; ++l) {
            const std::size_t fwd = (l * stride) % n;
            const std::size_t idx = t + fwd < n ? t + fwd : t + fwd - n;
            acc = acc + taps[l] * in[idx];
        }
        out[t] = acc;
    }
}

}  // namespace

const KernelTable scalar_table{
    &axpy, &add, &add_squared_diff, &dot, &circular_filter, &circular_filter_adjoint,
};

}  // namespace wavecast::simd::detail
