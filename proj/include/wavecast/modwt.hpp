#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wavecast/series.hpp"

namespace wavecast {

/// MODWT filter pair. Taps are already rescaled by 1/sqrt(2) from their DWT
/// counterparts, so the scaling taps sum to 1 and the wavelet taps to 0.
struct FilterSpec {
    std::string name;
    std::vector<double> scaling;
    std::vector<double> wavelet;

    static FilterSpec haar();
    static FilterSpec by_name(const std::string& name);
    void validate() const;
};

enum class Boundary { Circular };

struct DecomposeConfig {
    int level = 3;
    FilterSpec filter = FilterSpec::haar();
    Boundary boundary = Boundary::Circular;

    void validate() const;
};

inline constexpr int kMaxLevel = 6;

struct ModwtCoefficients {
    /// wavelet[j-1] holds W_j, each of the source length.
    std::vector<std::vector<double>> wavelet;
    /// V_J
    std::vector<double> scaling;
};

/// Additive multiresolution components; details[j-1] + ... + smooth == x.
struct MraComponents {
    std::vector<std::vector<double>> details;
    std::vector<double> smooth;
};

struct WaveletDecomposition {
    int levels = 0;
    ModwtCoefficients coeffs;
    MraComponents mra;
    std::size_t source_length = 0;

    /// MRA components labelled W1..WJ then VJ.
    std::vector<Subseries> subseries() const;
};

ModwtCoefficients modwt_transform(std::span<const double> x, const DecomposeConfig& cfg);
MraComponents modwt_mra(const ModwtCoefficients& coeffs, const DecomposeConfig& cfg);
WaveletDecomposition modwt_decompose(std::span<const double> x, const DecomposeConfig& cfg);

std::vector<double> reconstruct(const MraComponents& mra);
std::vector<double> reconstruct(const WaveletDecomposition& dec);

/// Labels in subseries() order for level J.
std::vector<std::string> component_labels(int level);

}  // namespace wavecast
