#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wavecast/date.hpp"

namespace wavecast {

/// Weekly price history. Dates are opaque ordered labels here; calendar
/// alignment is the ingester's business.
struct PriceSeries {
    std::vector<Date> dates;
    std::vector<double> close;
    std::optional<std::vector<double>> open;

    std::size_t size() const noexcept { return close.size(); }

    /// Throws ValidationError unless dates strictly increase, closes are
    /// finite and positive, and open (if any) has the same length.
    void validate() const;
};

/// One series handed to a regressor: a wavelet component (W1..WJ, VJ) or the
/// undecomposed close series (RAW).
struct Subseries {
    std::string label;
    std::vector<double> values;
};

enum class NormKind { None, ZScore, MinMax01, MinMax11 };

std::string to_string(NormKind kind);
NormKind parse_norm_kind(const std::string& text);

inline constexpr int kMaxDiffOrder = 3;

/// Everything needed to undo differencing and normalisation of one subseries.
struct PreprocessRecord {
    int diff_order = 0;
    /// diff_initials[k] is the first value of the series before pass k+1.
    std::vector<double> diff_initials;
    NormKind norm_kind = NormKind::None;
    /// (mean, std) for zscore; (min, max) for the min-max kinds.
    double norm_a = 0.0;
    double norm_b = 1.0;
};

struct Transformed {
    Subseries series;
    PreprocessRecord record;
};

struct SplitSpec {
    double train_fraction = 0.7;
};

Transformed difference(const Subseries& s, int d);
Subseries undifference(const Subseries& s, const PreprocessRecord& rec);

/// Fits the normalisation on s and applies it.
Transformed normalize(const Subseries& s, NormKind kind);
/// Fits normalisation parameters on values without applying them.
PreprocessRecord fit_normalization(std::span<const double> values, NormKind kind);
double apply_normalization(double value, const PreprocessRecord& rec);
double invert_normalization(double value, const PreprocessRecord& rec);
Subseries denormalize(const Subseries& s, const PreprocessRecord& rec);

std::pair<Subseries, Subseries> split(const Subseries& s, const SplitSpec& spec);
std::size_t train_length(std::size_t n, const SplitSpec& spec);

/// d-th order differences, dropping the first d points.
std::vector<double> differences(std::span<const double> values, int d);

/// Level value at the step after `history` given the predicted d-th
/// difference at that step: pred + sum_{k<d} last(diff^k(history)).
double integrate_one_step(std::span<const double> history, int d, double predicted_difference);

double sample_mean(std::span<const double> v);
/// n-1 denominator.
double sample_stddev(std::span<const double> v);

}  // namespace wavecast
