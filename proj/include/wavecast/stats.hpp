#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavecast/series.hpp"

namespace wavecast {

// ---------------------------------------------------------------------------
// Augmented Dickey-Fuller

/// Asymptotic Dickey-Fuller critical values, constant and no trend.
struct AdfCriticalValues {
    double pct1 = -3.43;
    double pct5 = -2.86;
    double pct10 = -2.57;
};

struct AdfResult {
    double statistic = 0.0;  ///< t-ratio on the lagged level
    int lags_used = 0;
    AdfCriticalValues critical_values;
    bool stationary = false;  ///< statistic < 5% critical value
};

inline constexpr std::size_t kAdfMinLength = 20;

/// Regresses diff(y)_t on (1, y_{t-1}, diff(y)_{t-1..t-p}); p defaults to
/// floor((n-1)^(1/3)).
AdfResult adf_test(std::span<const double> y, std::optional<int> lags = std::nullopt);

// ---------------------------------------------------------------------------
// Correlogram and lag selection

struct CorrelogramResult {
    std::vector<double> acf;   ///< lags 0..L
    std::vector<double> pacf;  ///< lags 1..L, pacf[k-1] is lag k
    double band = 0.0;         ///< 1.96 / sqrt(n)
};

std::vector<double> acf(std::span<const double> s, int max_lag);
std::vector<double> pacf(std::span<const double> s, int max_lag);
CorrelogramResult correlogram(std::span<const double> s, int max_lag);

inline constexpr int kDefaultMaxLag = 10;

/// Last lag of the first run of PACF lags outside the 95% band, i.e. the lag
/// at which the PACF cuts off. 1 when no lag up to max_lag is significant.
int select_lag(std::span<const double> s, int max_lag = kDefaultMaxLag);

struct StationarityResult {
    Subseries series;  ///< differenced
    PreprocessRecord record;
    bool stationary = false;
    AdfResult last_test;
};

/// Differences until the ADF test rejects a unit root or max_d is reached.
/// Reaching max_d without rejection is reported, not thrown.
StationarityResult difference_until_stationary(const Subseries& s, int max_d = kMaxDiffOrder);

// ---------------------------------------------------------------------------
// Wilcoxon signed-rank

enum class WsrtSign { Better, Same, Worse };

inline constexpr double kZCritical99 = 2.576;
inline constexpr double kZCritical95 = 1.96;

struct WsrtResult {
    /// (W+ - n(n+1)/4) / sigma over d_i = |a_i| - |b_i|; negative when the
    /// first model's absolute errors are smaller.
    double z = 0.0;
    bool significant = false;
    WsrtSign sign = WsrtSign::Same;
    int n_used = 0;  ///< pairs left after dropping zero differences
    double w_plus = 0.0;
    double w_minus = 0.0;
};

std::string to_string(WsrtSign sign);  // "+", "=", "-"

WsrtResult wilcoxon_signed_rank(std::span<const double> errors_a, std::span<const double> errors_b,
                                double critical_z = kZCritical99);

/// Average ranks (1-based) of values; ties share the mean rank.
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace wavecast
