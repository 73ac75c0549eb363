#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace testing {

inline std::string data_path(const std::string& name) {
    return std::string(WAVECAST_TEST_DATA) + "/" + name;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    double normal(double mean = 0.0, double sd = 1.0) {
        return std::normal_distribution<double>(mean, sd)(gen_);
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

    std::vector<double> uniform_vec(std::size_t n, double lo = -1.0, double hi = 1.0) {
        std::vector<double> v(n);
        for (double& x : v) x = uniform(lo, hi);
        return v;
    }
    std::vector<double> normal_vec(std::size_t n, double sd = 1.0) {
        std::vector<double> v(n);
        for (double& x : v) x = normal(0.0, sd);
        return v;
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

inline double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline std::vector<double> rotate_right(std::span<const double> x, std::size_t k) {
    const std::size_t n = x.size();
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) out[(t + k) % n] = x[t];
    return out;
}

/// y_t = sum_k phi_k y_{t-k} + e_t after a burn-in.
inline std::vector<double> simulate_ar(Rng& rng, std::span<const double> phi, std::size_t n,
                                       std::size_t burn = 500) {
    std::vector<double> y(n + burn, 0.0);
    for (std::size_t t = 0; t < y.size(); ++t) {
        double v = rng.normal();
        for (std::size_t k = 0; k < phi.size() && k < t; ++k) v += phi[k] * y[t - k - 1];
        y[t] = v;
    }
    return {y.begin() + static_cast<long>(burn), y.end()};
}

}  // namespace testing
