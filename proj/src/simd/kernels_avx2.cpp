#include <immintrin.h>

#include "wavecast/simd.hpp"

// Compiled with -mavx2 only (no -mfma): each lane performs exactly the scalar
// kernel's mul/add sequence.

namespace wavecast::simd::detail {
namespace {

void axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
    }
    for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void add(const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) y[i] = y[i] + x[i];
}

void add_squared_diff(const double* x, double c, double* y, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), vc);
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(d, d)));
    }
    for (; i < n; ++i) {
        const double d = x[i] - c;
        y[i] = y[i] + d * d;
    }
}

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
        acc1 = _mm256_add_pd(acc1,
                             _mm256_mul_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double filter_point(const double* in, std::size_t n, const double* taps, std::size_t n_taps,
                    std::size_t stride, std::size_t t) {
    double acc = taps[0] * in[t];
    for (std::size_t l = 1; l < n_taps; ++l) {
        const std::size_t back = (l * stride) % n;
        const std::size_t idx = t >= back ? t - back : t + n - back;
        acc = acc + taps[l] * in[idx];
    }
    return acc;
}

void circular_filter(const double* in, std::size_t n, const double* taps, std::size_t n_taps,
                     std::size_t stride, double* out) {
    const std::size_t reach = (n_taps - 1) * stride;
    if (reach >= n) {
        for (std::size_t t = 0; t < n; ++t) out[t] = filter_point(in, n, taps, n_taps, stride, t);
        return;
    }
    // Wrapped head.
    for (std::size_t t = 0; t < reach; ++t) out[t] = filter_point(in, n, taps, n_taps, stride, t);
    std::size_t t = reach;
    for (; t + 4 <= n; t += 4) {
        __m256d acc = _mm256_mul_pd(_mm256_set1_pd(taps[0]), _mm256_loadu_pd(in + t));
        for (std::size_t l = 1; l < n_taps; ++l) {
            const __m256d v = _mm256_loadu_pd(in + t - l * stride);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(taps[l]), v));
        }
        _mm256_storeu_pd(out + t, acc);
    }
    for (; t < n; ++t) out[t] = filter_point(in, n, taps, n_taps, stride, t);
}

double adjoint_point(const double* in, std::size_t n, const double* taps, std::size_t n_taps,
                     std::size_t stride, std::size_t t) {
    double acc = taps[0] * in[t];
    for (std::size_t l = 1; l < n_taps; ++l) {
        const std::size_t fwd = (l * stride) % n;
        const std::size_t idx = t + fwd < n ? t + fwd : t + fwd - n;
        acc = acc + taps[l] * in[idx];
    }
    return acc;
}

void circular_filter_adjoint(const double* in, std::size_t n, const double* taps,
                             std::size_t n_taps, std::size_t stride, double* out) {
    const std::size_t reach = (n_taps - 1) * stride;
    if (reach >= n) {
        for (std::size_t t = 0; t < n; ++t) out[t] = adjoint_point(in, n, taps, n_taps, stride, t);
        return;
    }
    const std::size_t body_end = n - reach;
    std::size_t t = 0;
    for (; t + 4 <= body_end; t += 4) {
        __m256d acc = _mm256_mul_pd(_mm256_set1_pd(taps[0]), _mm256_loadu_pd(in + t));
        for (std::size_t l = 1; l < n_taps; ++l) {
            const __m256d v = _mm256_loadu_pd(in + t + l * stride);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(taps[l]), v));
        }
        _mm256_storeu_pd(out + t, acc);
    }
    for (; t < n; ++t) out[t] = adjoint_point(in, n, taps, n_taps, stride, t);
}

}  // namespace

const KernelTable avx2_table{
    &axpy, &add, &add_squared_diff, &dot, &circular_filter, &circular_filter_adjoint,
};

}  // namespace wavecast::simd::detail
