#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wavecast/io.hpp"
#include "wavecast/pipeline.hpp"

namespace wavecast::cli {

struct RunConfig {
    std::filesystem::path input;
    CsvColumns columns;
    std::vector<std::string> models{"ann", "svr", "modwt-ann", "modwt-svr"};
    PipelineConfig pipeline;
    std::filesystem::path output_dir = "wavecast-out";
    /// compare/plot: report files; empty means every report_*.json in output_dir.
    std::vector<std::filesystem::path> reports;
    /// backtest: a prepared quotes file instead of running a model on input.
    std::filesystem::path quotes;
    /// backtest: model whose forecasts drive the rules.
    std::string backtest_model = "modwt-svr";
    bool literal_roi = false;
    double critical_z = kZCritical99;

    void validate_models() const;
};

/// Applies one flat configuration key. Unknown keys throw ParameterError.
void apply_setting(RunConfig& run, const std::string& key, const std::string& value);

/// Reads "key = value" lines; '#' starts a comment.
void load_config_file(RunConfig& run, const std::filesystem::path& path);

/// Writes components.csv (MRA subseries) and coefficients.csv.
void cmd_decompose(const RunConfig& run);
/// Writes report_<model>.json per model, metrics.csv, forecasts.csv and
/// models/<model>/<label>.txt.
void cmd_forecast(const RunConfig& run);
/// Writes wsrt.csv.
void cmd_compare(const RunConfig& run);
/// Writes ledger.csv and roi.csv.
void cmd_backtest(const RunConfig& run);
/// Writes series.svg, components.svg and forecast_<model>.svg files.
void cmd_plot(const RunConfig& run);

/// File-name stem for a model name: "MODWT-SVR" -> "modwt-svr".
std::string model_slug(const std::string& name);

}  // namespace wavecast::cli
