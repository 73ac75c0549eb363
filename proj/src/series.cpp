#include "wavecast/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wavecast/error.hpp"

namespace wavecast {

void PriceSeries::validate() const {
    if (dates.size() != close.size()) {
        throw ValidationError("price series: dates and close differ in length");
    }
    if (open && open->size() != close.size()) {
        throw ValidationError("price series: open and close differ in length");
    }
    for (std::size_t i = 0; i < close.size(); ++i) {
        if (!std::isfinite(close[i]) || close[i] <= 0.0) {
            throw ValidationError("price series: close at index " + std::to_string(i) +
                                  " is not a positive finite number");
        }
        if (open && (!std::isfinite((*open)[i]) || (*open)[i] <= 0.0)) {
            throw ValidationError("price series: open at index " + std::to_string(i) +
                                  " is not a positive finite number");
        }
        if (i > 0 && !(dates[i - 1] < dates[i])) {
            throw ValidationError("price series: dates not strictly increasing at index " +
                                  std::to_string(i));
        }
    }
}

std::string to_string(NormKind kind) {
    switch (kind) {
        case NormKind::None: return "none";
        case NormKind::ZScore: return "zscore";
        case NormKind::MinMax01: return "minmax01";
        case NormKind::MinMax11: return "minmax11";
    }
    return "none";
}

NormKind parse_norm_kind(const std::string& text) {
    if (text == "none") return NormKind::None;
    if (text == "zscore") return NormKind::ZScore;
    if (text == "minmax01") return NormKind::MinMax01;
    if (text == "minmax11") return NormKind::MinMax11;
    throw ParameterError("unknown normalisation '" + text + "'");
}

std::vector<double> differences(std::span<const double> values, int d) {
    if (d < 0 || d > kMaxDiffOrder) {
        throw ParameterError("difference order must be in [0, " + std::to_string(kMaxDiffOrder) +
                             "]");
    }
    if (values.size() <= static_cast<std::size_t>(d)) {
        throw LengthError("series of length " + std::to_string(values.size()) +
                          " too short for difference order " + std::to_string(d));
    }
    std::vector<double> out(values.begin(), values.end());
    for (int pass = 0; pass < d; ++pass) {
        for (std::size_t t = 0; t + 1 < out.size(); ++t) out[t] = out[t + 1] - out[t];
        out.pop_back();
    }
    return out;
}

Transformed difference(const Subseries& s, int d) {
    Transformed result;
    result.record.diff_order = d;
    std::vector<double> current = s.values;
    if (d < 0 || d > kMaxDiffOrder) {
        throw ParameterError("difference order must be in [0, " + std::to_string(kMaxDiffOrder) +
                             "]");
    }
    if (current.size() <= static_cast<std::size_t>(d)) {
        throw LengthError("series '" + s.label + "' of length " + std::to_string(current.size()) +
                          " too short for difference order " + std::to_string(d));
    }
    for (int pass = 0; pass < d; ++pass) {
        result.record.diff_initials.push_back(current.front());
        for (std::size_t t = 0; t + 1 < current.size(); ++t) current[t] = current[t + 1] - current[t];
        current.pop_back();
    }
    result.series = Subseries{s.label, std::move(current)};
    return result;
}

Subseries undifference(const Subseries& s, const PreprocessRecord& rec) {
    if (rec.diff_initials.size() != static_cast<std::size_t>(rec.diff_order)) {
        throw ValidationError("undifference: record holds " +
                              std::to_string(rec.diff_initials.size()) + " initials for order " +
                              std::to_string(rec.diff_order));
    }
    std::vector<double> current = s.values;
    for (int pass = rec.diff_order - 1; pass >= 0; --pass) {
        std::vector<double> level(current.size() + 1);
        level[0] = rec.diff_initials[static_cast<std::size_t>(pass)];
        for (std::size_t t = 0; t < current.size(); ++t) level[t + 1] = level[t] + current[t];
        current = std::move(level);
    }
    return Subseries{s.label, std::move(current)};
}

double sample_mean(std::span<const double> v) {
    if (v.empty()) throw LengthError("mean of empty series");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_stddev(std::span<const double> v) {
    if (v.size() < 2) throw LengthError("standard deviation needs at least two points");
    const double m = sample_mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

PreprocessRecord fit_normalization(std::span<const double> values, NormKind kind) {
    PreprocessRecord rec;
    rec.norm_kind = kind;
    switch (kind) {
        case NormKind::None:
            rec.norm_a = 0.0;
            rec.norm_b = 1.0;
            break;
        case NormKind::ZScore:
            rec.norm_a = sample_mean(values);
            rec.norm_b = sample_stddev(values);
            if (!(rec.norm_b > 0.0)) throw DegenerateScaleError("zscore: zero standard deviation");
            break;
        case NormKind::MinMax01:
        case NormKind::MinMax11: {
            if (values.empty()) throw LengthError("min-max of empty series");
            const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
            rec.norm_a = *lo;
            rec.norm_b = *hi;
            if (!(rec.norm_b > rec.norm_a)) throw DegenerateScaleError("min-max: constant series");
            break;
        }
    }
    return rec;
}

double apply_normalization(double x, const PreprocessRecord& rec) {
    switch (rec.norm_kind) {
        case NormKind::None: return x;
        case NormKind::ZScore: return (x - rec.norm_a) / rec.norm_b;
        case NormKind::MinMax01: return (x - rec.norm_a) / (rec.norm_b - rec.norm_a);
        case NormKind::MinMax11: return 2.0 * (x - rec.norm_a) / (rec.norm_b - rec.norm_a) - 1.0;
    }
    return x;
}

double invert_normalization(double z, const PreprocessRecord& rec) {
    switch (rec.norm_kind) {
        case NormKind::None: return z;
        case NormKind::ZScore: return z * rec.norm_b + rec.norm_a;
        case NormKind::MinMax01: return z * (rec.norm_b - rec.norm_a) + rec.norm_a;
        case NormKind::MinMax11: return (z + 1.0) / 2.0 * (rec.norm_b - rec.norm_a) + rec.norm_a;
    }
    return z;
}

Transformed normalize(const Subseries& s, NormKind kind) {
    Transformed result;
    try {
        result.record = fit_normalization(s.values, kind);
    } catch (const DegenerateScaleError& e) {
        throw DegenerateScaleError("series '" + s.label + "': " + e.what());
    }
    result.series.label = s.label;
    result.series.values.reserve(s.values.size());
    for (double x : s.values) result.series.values.push_back(apply_normalization(x, result.record));
    return result;
}

Subseries denormalize(const Subseries& s, const PreprocessRecord& rec) {
    Subseries out{s.label, {}};
    out.values.reserve(s.values.size());
    for (double z : s.values) out.values.push_back(invert_normalization(z, rec));
    return out;
}

std::size_t train_length(std::size_t n, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw ParameterError("train fraction must lie in (0, 1)");
    }
    // Floor with a guard against 0.7*10 = 6.999... style representation error.
    const double raw = static_cast<double>(n) * spec.train_fraction;
    auto len = static_cast<std::size_t>(std::floor(raw + 1e-9));
    return len;
}

std::pair<Subseries, Subseries> split(const Subseries& s, const SplitSpec& spec) {
    const std::size_t n = s.values.size();
    const std::size_t k = train_length(n, spec);
    if (n < 4) throw LengthError("split needs at least 4 points");
    if (k == 0 || k >= n) throw LengthError("split leaves an empty partition");
    Subseries train{s.label, {s.values.begin(), s.values.begin() + static_cast<long>(k)}};
    Subseries test{s.label, {s.values.begin() + static_cast<long>(k), s.values.end()}};
    return {std::move(train), std::move(test)};
}

double integrate_one_step(std::span<const double> history, int d, double predicted_difference) {
    if (history.size() < static_cast<std::size_t>(d)) {
        throw LengthError("integrate_one_step: history shorter than difference order");
    }
    double level = predicted_difference;
    for (int k = 0; k < d; ++k) {
        const auto tail = history.subspan(history.size() - static_cast<std::size_t>(d));
        const auto diffs = differences(tail, k);
        level += diffs.back();
    }
    return level;
}

}  // namespace wavecast
