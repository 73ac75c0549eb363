#include "wavecast/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "wavecast/dataset.hpp"
#include "wavecast/error.hpp"
#include "wavecast/simd.hpp"

namespace wavecast {

std::string to_string(LeakageMode mode) { return mode == LeakageMode::Paper ? "paper" : "causal"; }

LeakageMode parse_leakage_mode(const std::string& text) {
    if (text == "paper") return LeakageMode::Paper;
    if (text == "causal") return LeakageMode::Causal;
    throw ParameterError("unknown leakage mode '" + text + "'");
}

void PipelineConfig::validate() const {
    wavelet.validate();
    if (!train_length) (void)wavecast::train_length(100, split);
    if (max_diff < 0 || max_diff > kMaxDiffOrder) {
        throw ParameterError("max_diff must be in [0, " + std::to_string(kMaxDiffOrder) + "]");
    }
    if (max_lag < 1) throw ParameterError("max_lag must be at least 1");
    for (const auto& [label, p] : lag_overrides) {
        if (p < 1) throw ParameterError("lag override for " + label + " must be at least 1");
    }
    if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
        throw ParameterError("validation fraction must lie in (0, 1)");
    }
}

std::string model_name(const PipelineConfig& cfg) {
    const std::string base = cfg.model == ModelKind::Ann ? "ANN" : "SVR";
    return cfg.decompose ? "MODWT-" + base : base;
}

void apply_model_name(PipelineConfig& cfg, const std::string& name) {
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "ann") {
        cfg.model = ModelKind::Ann;
        cfg.decompose = false;
    } else if (lower == "svr") {
        cfg.model = ModelKind::Svr;
        cfg.decompose = false;
    } else if (lower == "modwt-ann") {
        cfg.model = ModelKind::Ann;
        cfg.decompose = true;
    } else if (lower == "modwt-svr") {
        cfg.model = ModelKind::Svr;
        cfg.decompose = true;
    } else {
        throw ParameterError("unknown model '" + name + "'");
    }
}

namespace {

template <class F>
auto stage(const std::string& label, const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(label, name, e.what(), std::current_exception());
    }
}

struct ComponentPlan {
    std::string label;
    int diff_order = 0;
    bool stationary = false;
    double adf_statistic = 0.0;
    int lag = 1;
    PreprocessRecord norm;
};

struct Regressor {
    ModelKind kind = ModelKind::Svr;
    MlpModel mlp;
    SvrModel svr;
    std::map<std::string, double> summary;

    double predict(std::span<const double> x) const {
        return kind == ModelKind::Ann ? mlp_forward(mlp, x) : svr_predict(svr, x);
    }
};

// The component series that feed the regressors: MRA components or the raw
// series.
std::vector<Subseries> components(std::span<const double> x, const PipelineConfig& cfg) {
    if (!cfg.decompose) return {Subseries{"RAW", {x.begin(), x.end()}}};
    return modwt_decompose(x, cfg.wavelet).subseries();
}

ComponentPlan plan_component(const Subseries& c, const PipelineConfig& cfg) {
    ComponentPlan plan;
    plan.label = c.label;
    stage(c.label, "normalize", [&] {
        const auto [lo, hi] = std::minmax_element(c.values.begin(), c.values.end());
        if (!(*hi > *lo)) {
            throw DegenerateScaleError("degenerate scale: subseries '" + c.label +
                                       "' has zero variance");
        }
    });
    const auto st = stage(c.label, "stationarity",
                          [&] { return difference_until_stationary(c, cfg.max_diff); });
    plan.diff_order = st.record.diff_order;
    plan.stationary = st.stationary;
    plan.adf_statistic = st.last_test.statistic;
    if (auto it = cfg.lag_overrides.find(c.label); it != cfg.lag_overrides.end()) {
        plan.lag = it->second;
    } else {
        plan.lag = stage(c.label, "lag", [&] { return select_lag(st.series.values, cfg.max_lag); });
    }
    plan.norm = stage(c.label, "normalize",
                      [&] { return fit_normalization(st.series.values, cfg.norm); });
    return plan;
}

std::vector<double> transform_for_model(std::span<const double> c, const ComponentPlan& plan) {
    auto z = differences(c, plan.diff_order);
    for (double& v : z) v = apply_normalization(v, plan.norm);
    return z;
}

Regressor train_component(const Subseries& fit_series, const ComponentPlan& plan,
                          const PipelineConfig& cfg, std::size_t index) {
    const auto z = stage(plan.label, "normalize",
                         [&] { return transform_for_model(fit_series.values, plan); });
    const auto data = stage(plan.label, "train", [&] { return make_lagged_dataset(z, plan.lag); });

    Regressor reg;
    reg.kind = cfg.model;
    stage(plan.label, "train", [&] {
        if (cfg.model == ModelKind::Ann) {
            MlpConfig mcfg = cfg.mlp;
            mcfg.n_input = plan.lag;
            mcfg.seed = cfg.seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
            const MlpFit fit = mlp_train_rprop(mcfg, data);
            reg.mlp = fit.model;
            reg.summary = {{"hidden", mcfg.n_hidden},
                           {"epochs", fit.epochs_run},
                           {"train_mse", fit.train_mse}};
        } else {
            const auto search = svr_grid_search(data, cfg.svr, cfg.grid, cfg.validation_fraction);
            const SvrFit fit = svr_train(search.best, data);
            reg.svr = fit.model;
            reg.summary = {{"C", search.best.C},
                           {"epsilon", search.best.epsilon},
                           {"gamma", search.best.kernel.gamma},
                           {"validation_mse", search.validation_mse},
                           {"n_support", static_cast<double>(fit.model.n_support())}};
        }
    });
    return reg;
}

// Forecast of the component's next value given its history up to (not
// including) the forecast time.
double forecast_step(std::span<const double> history, const ComponentPlan& plan,
                     const Regressor& reg) {
    const auto d = static_cast<std::size_t>(plan.diff_order);
    const auto p = static_cast<std::size_t>(plan.lag);
    if (history.size() < p + d + 1) {
        throw LengthError("history of " + std::to_string(history.size()) +
                          " points too short for lag " + std::to_string(p) + " and order " +
                          std::to_string(d));
    }
    const auto z = transform_for_model(history.subspan(history.size() - (p + d + 1)), plan);
    std::vector<double> x(p);
    for (std::size_t k = 0; k < p; ++k) x[k] = z[z.size() - 1 - k];
    const double diff_hat = invert_normalization(reg.predict(x), plan.norm);
    return integrate_one_step(history, plan.diff_order, diff_hat);
}

}  // namespace

std::vector<double> aggregate(const std::map<std::string, std::vector<double>>& subforecasts,
                              int level) {
    const auto labels = component_labels(level);
    if (subforecasts.size() != labels.size()) {
        throw ValidationError("aggregate expects exactly " + std::to_string(labels.size()) +
                              " subseries forecasts");
    }
    std::vector<double> sum;
    for (const auto& label : labels) {
        const auto it = subforecasts.find(label);
        if (it == subforecasts.end()) throw ValidationError("aggregate: missing subseries " + label);
        if (sum.empty()) sum.assign(it->second.size(), 0.0);
        if (it->second.size() != sum.size()) {
            throw ValidationError("aggregate: subseries " + label + " has a different length");
        }
        simd::add(it->second, sum);
    }
    return sum;
}

double rmse(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) throw ValidationError("rmse: length mismatch");
    if (actual.empty()) throw LengthError("rmse of empty sequences");
    double ss = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = actual[i] - predicted[i];
        ss += e * e;
    }
    return std::sqrt(ss / static_cast<double>(actual.size()));
}

double directional_accuracy(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) {
        throw ValidationError("directional accuracy: length mismatch");
    }
    if (actual.size() < 2) throw LengthError("directional accuracy needs at least two points");
    auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };
    std::size_t hits = 0;
    for (std::size_t t = 1; t < actual.size(); ++t) {
        if (sign(actual[t] - actual[t - 1]) == sign(predicted[t] - actual[t - 1])) ++hits;
    }
    return 100.0 * static_cast<double>(hits) / static_cast<double>(actual.size() - 1);
}

ForecastReport run_pipeline(const PriceSeries& series, const PipelineConfig& cfg,
                            std::vector<TrainedComponent>* models) {
    cfg.validate();
    series.validate();
    const std::size_t n = series.size();
    if (n < kMinPipelineLength) {
        throw LengthError("pipeline needs at least " + std::to_string(kMinPipelineLength) +
                          " points, got " + std::to_string(n));
    }
    const std::size_t n_train = cfg.train_length ? *cfg.train_length : train_length(n, cfg.split);
    if (n_train < 2 || n_train >= n) {
        throw LengthError("training length " + std::to_string(n_train) +
                          " leaves an empty partition of a series of length " + std::to_string(n));
    }
    const std::span<const double> x(series.close);

    // Series the preprocessing is fitted on, and the training prefixes.
    std::vector<Subseries> plan_source, fit_source;
    if (cfg.leakage == LeakageMode::Paper) {
        plan_source = stage("series", "decompose", [&] { return components(x, cfg); });
        for (const auto& c : plan_source) {
            fit_source.push_back(Subseries{
                c.label, {c.values.begin(), c.values.begin() + static_cast<long>(n_train)}});
        }
    } else {
        fit_source = stage("series", "decompose", [&] { return components(x.first(n_train), cfg); });
        plan_source = fit_source;
    }

    ForecastReport report;
    report.model_name = model_name(cfg);
    report.leakage_mode = to_string(cfg.leakage);
    report.test_start = n_train;

    std::vector<ComponentPlan> plans;
    std::vector<Regressor> regs;
    for (std::size_t k = 0; k < plan_source.size(); ++k) {
        plans.push_back(plan_component(plan_source[k], cfg));
        regs.push_back(train_component(fit_source[k], plans.back(), cfg, k));
    }

    std::map<std::string, std::vector<double>> subforecasts;
    for (const auto& plan : plans) subforecasts[plan.label].reserve(n - n_train);
    for (std::size_t t = n_train; t < n; ++t) {
        std::vector<Subseries> hist;
        if (cfg.leakage == LeakageMode::Causal) {
            hist = stage("series", "decompose", [&] { return components(x.first(t), cfg); });
        }
        for (std::size_t k = 0; k < plans.size(); ++k) {
            const std::span<const double> h = cfg.leakage == LeakageMode::Paper
                                                  ? std::span<const double>(plan_source[k].values).first(t)
                                                  : std::span<const double>(hist[k].values);
            const double f = stage(plans[k].label, "predict",
                                   [&] { return forecast_step(h, plans[k], regs[k]); });
            subforecasts[plans[k].label].push_back(f);
        }
        report.actuals.push_back(x[t]);
        report.test_dates.push_back(format_iso(series.dates[t]));
    }

    report.predictions = cfg.decompose ? aggregate(subforecasts, cfg.wavelet.level)
                                       : subforecasts.at("RAW");
    report.rmse = rmse(report.actuals, report.predictions);
    report.da_percent = directional_accuracy(report.actuals, report.predictions);

    for (std::size_t k = 0; k < plans.size(); ++k) {
        SubseriesSummary s;
        s.label = plans[k].label;
        s.diff_order = plans[k].diff_order;
        s.stationary = plans[k].stationary;
        s.adf_statistic = plans[k].adf_statistic;
        s.lag = plans[k].lag;
        s.norm_kind = plans[k].norm.norm_kind;
        s.norm_a = plans[k].norm.norm_a;
        s.norm_b = plans[k].norm.norm_b;
        s.learner = cfg.model == ModelKind::Ann ? "ann" : "svr";
        s.model = regs[k].summary;
        report.per_subseries.push_back(std::move(s));
        if (models) models->push_back(TrainedComponent{plans[k].label, regs[k].kind, regs[k].mlp, regs[k].svr});
    }
    return report;
}

ComparisonRow compare_models(const ForecastReport& a, const ForecastReport& b, double critical_z) {
    if (a.test_start != b.test_start || a.actuals != b.actuals ||
        a.predictions.size() != a.actuals.size() || b.predictions.size() != b.actuals.size()) {
        throw ValidationError("compare: reports " + a.model_name + " and " + b.model_name +
                              " do not cover the same test span");
    }
    std::vector<double> ea(a.actuals.size()), eb(b.actuals.size());
    for (std::size_t i = 0; i < ea.size(); ++i) {
        ea[i] = a.actuals[i] - a.predictions[i];
        eb[i] = b.actuals[i] - b.predictions[i];
    }
    return ComparisonRow{a.model_name, b.model_name, wilcoxon_signed_rank(ea, eb, critical_z)};
}

}  // namespace wavecast
