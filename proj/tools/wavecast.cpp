// wavecast command-line front end.
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "wavecast/cli.hpp"
#include "wavecast/error.hpp"

namespace {

struct Flag {
    const char* name;
    const char* key;
    const char* help;
};

constexpr Flag kFlags[] = {
    {"--input", "input", "price CSV (header row; date, close, optional open)"},
    {"--date-column", "date_column", "name of the date column"},
    {"--close-column", "close_column", "name of the close column"},
    {"--open-column", "open_column", "name of the open column"},
    {"--models", "models", "comma list of ann, svr, modwt-ann, modwt-svr"},
    {"--level", "level", "decomposition level J"},
    {"--filter", "filter", "wavelet filter (haar)"},
    {"--split", "split", "training fraction"},
    {"--train-length", "train_length", "absolute training length, overrides --split"},
    {"--norm", "norm", "zscore, minmax01, minmax11 or none"},
    {"--leakage-mode", "leakage_mode", "paper or causal"},
    {"--seed", "seed", "random seed (default: $WAVECAST_SEED, else 1)"},
    {"--out", "out", "output directory"},
    {"--reports", "reports", "comma list of report files for compare/plot"},
    {"--quotes", "quotes", "backtest quotes CSV (date, close, forecast, open)"},
    {"--backtest-model", "backtest_model", "model driving the backtest"},
    {"--critical-z", "critical_z", "WSRT critical |z| (2.576 or 1.96)"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wavelet-hybrid forecasting of weekly closing prices"};
    app.require_subcommand(1);

    std::map<std::string, std::string> given;
    for (const auto& f : kFlags) app.add_option(f.name, given[f.key], f.help);
    bool literal_roi = false;
    app.add_flag("--literal-roi", literal_roi, "report the product of raw trade returns as ROI");
    std::string config_path;
    app.add_option("--config", config_path, "flat key = value file; flags take precedence");

    auto* decompose = app.add_subcommand("decompose", "write MODWT components of the input");
    auto* forecast = app.add_subcommand("forecast", "train models and forecast the test span");
    auto* compare = app.add_subcommand("compare", "Wilcoxon signed-rank table over reports");
    auto* backtest = app.add_subcommand("backtest", "apply the trading rules and report ROI");
    auto* plot = app.add_subcommand("plot", "write SVG charts");
    for (auto* sub : {decompose, forecast, compare, backtest, plot}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    wavecast::cli::RunConfig run;
    try {
        if (const char* env = std::getenv("WAVECAST_SEED"); env && *env)
            wavecast::cli::apply_setting(run, "seed", env);
        if (!config_path.empty()) wavecast::cli::load_config_file(run, config_path);
        for (const auto& f : kFlags) {
            if (app.count(f.name) > 0) wavecast::cli::apply_setting(run, f.key, given[f.key]);
        }
        if (literal_roi) run.literal_roi = true;
        run.pipeline.validate();
    } catch (const std::exception& e) {
        std::cerr << "wavecast: configuration error: " << e.what() << '\n';
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (command == "decompose") wavecast::cli::cmd_decompose(run);
        else if (command == "forecast") wavecast::cli::cmd_forecast(run);
        else if (command == "compare") wavecast::cli::cmd_compare(run);
        else if (command == "backtest") wavecast::cli::cmd_backtest(run);
        else wavecast::cli::cmd_plot(run);
    } catch (const wavecast::StageError& e) {
        std::cerr << "wavecast: " << command << ": stage '" << e.stage() << "' failed for "
                  << e.label() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "wavecast: " << command << " failed: " << e.what() << '\n';
        return 1;
    }
    std::cout << "wavecast: " << command << " wrote " << run.output_dir.string() << '\n';
    return 0;
}
