#include <doctest.h>

#include <vector>

#include "support.hpp"
#include "wavecast/simd.hpp"

using namespace wavecast;
using testing::Rng;

namespace {

// Reference for the circular filters, written directly from the definition.
std::vector<double> filter_oracle(const std::vector<double>& in, const std::vector<double>& taps,
                                  std::size_t stride, bool adjoint) {
    const std::size_t n = in.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t l = 0; l < taps.size(); ++l) {
            const std::size_t shift = (l * stride) % n;
            const std::size_t idx = adjoint ? (t + shift) % n : (t + n - shift) % n;
            out[t] += taps[l] * in[idx];
        }
    }
    return out;
}

std::vector<simd::Isa> isas() {
    std::vector<simd::Isa> out{simd::Isa::Scalar};
    if (simd::isa_available(simd::Isa::Avx2)) out.push_back(simd::Isa::Avx2);
    return out;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar table is always available") {
    CHECK(simd::isa_available(simd::Isa::Scalar));
    CHECK(simd::isa_name(simd::Isa::Scalar) == "scalar");
    CHECK(simd::isa_name(simd::active_isa()).size() > 0);
}

TEST_CASE("elementwise kernels are bit-identical across ISAs") {
    Rng rng(11);
    const auto& ref = simd::kernels(simd::Isa::Scalar);
    for (auto isa : isas()) {
        const auto& k = simd::kernels(isa);
        for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 16u, 33u, 409u}) {
            const auto x = rng.uniform_vec(n);
            const auto y0 = rng.uniform_vec(n);
            const double a = rng.uniform(-2, 2);

            auto y_ref = y0, y = y0;
            ref.axpy(a, x.data(), y_ref.data(), n);
            k.axpy(a, x.data(), y.data(), n);
            CHECK(y == y_ref);

            y_ref = y0;
            y = y0;
            ref.add(x.data(), y_ref.data(), n);
            k.add(x.data(), y.data(), n);
            CHECK(y == y_ref);

            y_ref = y0;
            y = y0;
            ref.add_squared_diff(x.data(), a, y_ref.data(), n);
            k.add_squared_diff(x.data(), a, y.data(), n);
            CHECK(y == y_ref);
        }
    }
}

TEST_CASE("dot agrees across ISAs to rounding") {
    Rng rng(12);
    for (auto isa : isas()) {
        for (std::size_t n : {0u, 1u, 2u, 5u, 8u, 9u, 100u, 1001u}) {
            const auto x = rng.uniform_vec(n);
            const auto y = rng.uniform_vec(n);
            long double exact = 0.0L;
            double scale = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                exact += static_cast<long double>(x[i]) * y[i];
                scale += std::abs(x[i] * y[i]);
            }
            const double got = simd::kernels(isa).dot(x.data(), y.data(), n);
            CHECK(std::abs(got - static_cast<double>(exact)) <= 1e-12 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("circular filters match the definition and agree across ISAs") {
    Rng rng(13);
    const std::vector<std::vector<double>> tap_sets{{0.5, 0.5}, {0.5, -0.5}, {0.1, -0.3, 0.7}};
    for (auto isa : isas()) {
        const auto& k = simd::kernels(isa);
        for (std::size_t n : {1u, 2u, 5u, 8u, 16u, 37u, 100u}) {
            const auto x = rng.uniform_vec(n);
            for (const auto& taps : tap_sets) {
                for (std::size_t stride : {1u, 2u, 4u, 8u, 64u}) {
                    for (bool adjoint : {false, true}) {
                        std::vector<double> out(n), out_ref(n);
                        auto fn = adjoint ? k.circular_filter_adjoint : k.circular_filter;
                        auto fn_ref = adjoint ? simd::kernels(simd::Isa::Scalar).circular_filter_adjoint
                                              : simd::kernels(simd::Isa::Scalar).circular_filter;
                        fn(x.data(), n, taps.data(), taps.size(), stride, out.data());
                        fn_ref(x.data(), n, taps.data(), taps.size(), stride, out_ref.data());
                        CHECK(out == out_ref);
                        CHECK(testing::max_abs_diff(out, filter_oracle(x, taps, stride, adjoint)) <= 1e-14);
                    }
                }
            }
        }
    }
}

TEST_CASE("span wrappers check sizes") {
    std::vector<double> a(3), b(4);
    CHECK_THROWS_AS(simd::axpy(1.0, a, b), std::invalid_argument);
    CHECK_THROWS_AS(simd::dot(a, b), std::invalid_argument);
    CHECK_THROWS_AS(simd::add(a, b), std::invalid_argument);
}

}  // TEST_SUITE
