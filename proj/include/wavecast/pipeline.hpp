#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavecast/mlp.hpp"
#include "wavecast/modwt.hpp"
#include "wavecast/series.hpp"
#include "wavecast/stats.hpp"
#include "wavecast/svr.hpp"

namespace wavecast {

enum class ModelKind { Ann, Svr };

/// Paper: decompose and fit preprocessing on the whole series, then split.
/// Causal: only the training prefix is used for fitting, and the series is
/// re-decomposed from scratch at every forecast origin.
enum class LeakageMode { Paper, Causal };

std::string to_string(LeakageMode mode);
LeakageMode parse_leakage_mode(const std::string& text);

struct PipelineConfig {
    ModelKind model = ModelKind::Svr;
    bool decompose = true;
    DecomposeConfig wavelet;
    SplitSpec split;
    /// Absolute training length; overrides split.train_fraction when set.
    std::optional<std::size_t> train_length;
    NormKind norm = NormKind::ZScore;
    int max_diff = kMaxDiffOrder;
    int max_lag = kDefaultMaxLag;
    std::map<std::string, int> lag_overrides;
    std::uint64_t seed = 1;
    LeakageMode leakage = LeakageMode::Paper;

    /// n_input and seed are filled per subseries.
    MlpConfig mlp;
    /// C, epsilon and gamma come from the grid search.
    SvrConfig svr;
    SvrGrid grid = SvrGrid::standard();
    double validation_fraction = 0.2;

    void validate() const;
};

/// "ANN", "SVR", "MODWT-ANN" or "MODWT-SVR".
std::string model_name(const PipelineConfig& cfg);
/// Accepts ann, svr, modwt-ann, modwt-svr; sets model and decompose.
void apply_model_name(PipelineConfig& cfg, const std::string& name);

struct SubseriesSummary {
    std::string label;
    int diff_order = 0;
    bool stationary = false;
    double adf_statistic = 0.0;
    int lag = 0;
    NormKind norm_kind = NormKind::None;
    double norm_a = 0.0;
    double norm_b = 1.0;
    std::string learner;                  ///< "ann" or "svr"
    std::map<std::string, double> model;  ///< learner-specific summary numbers
};

struct ForecastReport {
    std::string model_name;
    std::string leakage_mode;
    std::size_t test_start = 0;  ///< index of the first forecast in the input series
    std::vector<std::string> test_dates;
    std::vector<double> predictions;
    std::vector<double> actuals;
    double rmse = 0.0;
    double da_percent = 0.0;
    std::vector<SubseriesSummary> per_subseries;
};

/// Trained regressor of one subseries, for persistence.
struct TrainedComponent {
    std::string label;
    ModelKind kind = ModelKind::Svr;
    MlpModel mlp;
    SvrModel svr;
};

/// Runs decomposition, per-subseries preprocessing, training and 1-step-ahead
/// forecasting over the test span. When `models` is given it receives the
/// trained regressors.
ForecastReport run_pipeline(const PriceSeries& series, const PipelineConfig& cfg,
                            std::vector<TrainedComponent>* models = nullptr);

inline constexpr std::size_t kMinPipelineLength = 60;

/// Element-wise sum of W1..WJ and VJ forecasts, summed in that order.
std::vector<double> aggregate(const std::map<std::string, std::vector<double>>& subforecasts,
                              int level = 3);

double rmse(std::span<const double> actual, std::span<const double> predicted);
/// Percentage of steps t >= 1 where sign(actual_t - actual_{t-1}) equals
/// sign(predicted_t - actual_{t-1}).
double directional_accuracy(std::span<const double> actual, std::span<const double> predicted);

struct ComparisonRow {
    std::string model_a;
    std::string model_b;
    WsrtResult result;
};

/// Wilcoxon signed-rank on absolute forecast errors; "+" means model a is better.
ComparisonRow compare_models(const ForecastReport& a, const ForecastReport& b,
                             double critical_z = kZCritical99);

}  // namespace wavecast
