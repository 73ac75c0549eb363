#include "wavecast/modwt.hpp"

#include <cmath>
#include <numeric>

#include "wavecast/error.hpp"
#include "wavecast/simd.hpp"

namespace wavecast {
namespace {

std::size_t level_stride(int j) { return std::size_t{1} << (j - 1); }

// One inverse pyramid step: V_{j-1} = adj(W_j, h) + adj(V_j, g).
std::vector<double> inverse_step(std::span<const double> w, std::span<const double> v,
                                 const FilterSpec& filter, int j) {
    const std::size_t n = v.size();
    std::vector<double> out(n), tmp(n);
    simd::circular_filter_adjoint(v, filter.scaling, level_stride(j), out);
    if (!w.empty()) {
        simd::circular_filter_adjoint(w, filter.wavelet, level_stride(j), tmp);
        simd::add(tmp, out);
    }
    return out;
}

// Scaling-only inverse from level j down to level 0.
std::vector<double> smooth_down(std::vector<double> v, const FilterSpec& filter, int from_level) {
    for (int k = from_level; k >= 1; --k) v = inverse_step({}, v, filter, k);
    return v;
}

}  // namespace

FilterSpec FilterSpec::haar() { return FilterSpec{"haar", {0.5, 0.5}, {0.5, -0.5}}; }

FilterSpec FilterSpec::by_name(const std::string& name) {
    if (name == "haar") return haar();
    throw ParameterError("unsupported wavelet filter '" + name + "'");
}

void FilterSpec::validate() const {
    if (scaling.empty() || scaling.size() != wavelet.size()) {
        throw ValidationError("filter '" + name + "': tap vectors empty or of unequal length");
    }
    const double gsum = std::accumulate(scaling.begin(), scaling.end(), 0.0);
    const double hsum = std::accumulate(wavelet.begin(), wavelet.end(), 0.0);
    if (std::abs(gsum - 1.0) > 1e-12 || std::abs(hsum) > 1e-12) {
        throw ValidationError("filter '" + name + "': taps not MODWT-normalised");
    }
}

void DecomposeConfig::validate() const {
    if (level < 1 || level > kMaxLevel) {
        throw ParameterError("decomposition level must be in [1, " + std::to_string(kMaxLevel) +
                             "]");
    }
    filter.validate();
}

std::vector<std::string> component_labels(int level) {
    std::vector<std::string> labels;
    for (int j = 1; j <= level; ++j) labels.push_back("W" + std::to_string(j));
    labels.push_back("V" + std::to_string(level));
    return labels;
}

ModwtCoefficients modwt_transform(std::span<const double> x, const DecomposeConfig& cfg) {
    cfg.validate();
    const std::size_t min_len = std::size_t{1} << cfg.level;
    if (x.size() < min_len) {
        throw LengthError("MODWT level " + std::to_string(cfg.level) + " needs at least " +
                          std::to_string(min_len) + " points, got " + std::to_string(x.size()));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) {
            throw ValidationError("MODWT input has a non-finite value at index " +
                                  std::to_string(i));
        }
    }

    ModwtCoefficients out;
    std::vector<double> v(x.begin(), x.end());
    for (int j = 1; j <= cfg.level; ++j) {
        std::vector<double> w(v.size()), next(v.size());
        simd::circular_filter(v, cfg.filter.wavelet, level_stride(j), w);
        simd::circular_filter(v, cfg.filter.scaling, level_stride(j), next);
        out.wavelet.push_back(std::move(w));
        v = std::move(next);
    }
    out.scaling = std::move(v);
    return out;
}

MraComponents modwt_mra(const ModwtCoefficients& coeffs, const DecomposeConfig& cfg) {
    cfg.validate();
    if (coeffs.wavelet.size() != static_cast<std::size_t>(cfg.level)) {
        throw ValidationError("MRA: coefficients hold " + std::to_string(coeffs.wavelet.size()) +
                              " levels, config asks for " + std::to_string(cfg.level));
    }
    const std::size_t n = coeffs.scaling.size();
    for (const auto& w : coeffs.wavelet) {
        if (w.size() != n) throw ValidationError("MRA: coefficient arrays differ in length");
    }
    if (n == 0) throw ValidationError("MRA: empty coefficients");

    MraComponents mra;
    for (int j = 1; j <= cfg.level; ++j) {
        std::vector<double> tmp(n);
        simd::circular_filter_adjoint(coeffs.wavelet[static_cast<std::size_t>(j - 1)],
                                      cfg.filter.wavelet, level_stride(j), tmp);
        mra.details.push_back(smooth_down(std::move(tmp), cfg.filter, j - 1));
    }
    mra.smooth = smooth_down(coeffs.scaling, cfg.filter, cfg.level);
    return mra;
}

WaveletDecomposition modwt_decompose(std::span<const double> x, const DecomposeConfig& cfg) {
    WaveletDecomposition dec;
    dec.levels = cfg.level;
    dec.coeffs = modwt_transform(x, cfg);
    dec.mra = modwt_mra(dec.coeffs, cfg);
    dec.source_length = x.size();
    return dec;
}

std::vector<Subseries> WaveletDecomposition::subseries() const {
    const auto labels = component_labels(levels);
    std::vector<Subseries> out;
    for (int j = 0; j < levels; ++j) {
        out.push_back(Subseries{labels[static_cast<std::size_t>(j)],
                                mra.details[static_cast<std::size_t>(j)]});
    }
    out.push_back(Subseries{labels.back(), mra.smooth});
    return out;
}

std::vector<double> reconstruct(const MraComponents& mra) {
    std::vector<double> sum(mra.smooth.size(), 0.0);
    for (const auto& d : mra.details) {
        if (d.size() != sum.size()) throw ValidationError("reconstruct: component length mismatch");
        simd::add(d, sum);
    }
    simd::add(mra.smooth, sum);
    return sum;
}

std::vector<double> reconstruct(const WaveletDecomposition& dec) { return reconstruct(dec.mra); }

}  // namespace wavecast
