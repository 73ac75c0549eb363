#include <cstdlib>
#include <stdexcept>
#include <string>

#include "wavecast/simd.hpp"

namespace wavecast::simd {
namespace {

Isa detect() {
    if (const char* forced = std::getenv("WAVECAST_SIMD")) {
        const std::string name(forced);
        if (name == "scalar") return Isa::Scalar;
        if (name == "avx2" && isa_available(Isa::Avx2)) return Isa::Avx2;
    }
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string("simd::") + what + ": size mismatch");
}

void require_filter_args(std::size_t n_in, std::size_t n_out, std::size_t n_taps,
                         std::size_t stride, const char* what) {
    require_same_size(n_in, n_out, what);
    if (n_in == 0 || n_taps == 0 || stride == 0) {
        throw std::invalid_argument(std::string("simd::") + what + ": empty input, taps or stride");
    }
}

}  // namespace

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return true;
        case Isa::Avx2:
#if defined(WAVECAST_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& kernels(Isa isa) {
#if defined(WAVECAST_HAVE_AVX2)
    if (isa == Isa::Avx2) {
        if (!isa_available(Isa::Avx2)) throw std::runtime_error("AVX2 not supported on this CPU");
        return detail::avx2_table;
    }
#else
    if (isa == Isa::Avx2) throw std::runtime_error("AVX2 kernels not compiled in");
#endif
    return detail::scalar_table;
}

Isa active_isa() {
    static const Isa isa = detect();
    return isa;
}

const KernelTable& active() {
    static const KernelTable& table = kernels(active_isa());
    return table;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void axpy(double a, std::span<const double> x, std::span<double> y) {
    require_same_size(x.size(), y.size(), "axpy");
    active().axpy(a, x.data(), y.data(), x.size());
}

void add(std::span<const double> x, std::span<double> y) {
    require_same_size(x.size(), y.size(), "add");
    active().add(x.data(), y.data(), x.size());
}

void add_squared_diff(std::span<const double> x, double c, std::span<double> y) {
    require_same_size(x.size(), y.size(), "add_squared_diff");
    active().add_squared_diff(x.data(), c, y.data(), x.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
    require_same_size(x.size(), y.size(), "dot");
    return active().dot(x.data(), y.data(), x.size());
}

void circular_filter(std::span<const double> in, std::span<const double> taps, std::size_t stride,
                     std::span<double> out) {
    require_filter_args(in.size(), out.size(), taps.size(), stride, "circular_filter");
    active().circular_filter(in.data(), in.size(), taps.data(), taps.size(), stride, out.data());
}

void circular_filter_adjoint(std::span<const double> in, std::span<const double> taps,
                             std::size_t stride, std::span<double> out) {
    require_filter_args(in.size(), out.size(), taps.size(), stride, "circular_filter_adjoint");
    active().circular_filter_adjoint(in.data(), in.size(), taps.data(), taps.size(), stride,
                                     out.data());
}

}  // namespace wavecast::simd
