#include "wavecast/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "wavecast/error.hpp"
#include "wavecast/modwt.hpp"
#include "wavecast/svg.hpp"
#include "wavecast/trading.hpp"

namespace fs = std::filesystem;

namespace wavecast::cli {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used == value.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParameterError(key + ": not a number: '" + value + "'");
}

long long to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used == value.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParameterError(key + ": not an integer: '" + value + "'");
}

bool to_bool(const std::string& key, const std::string& value) {
    const std::string v = lower(value);
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw ParameterError(key + ": not a boolean: '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

PriceSeries load_input(const RunConfig& run) {
    if (run.input.empty()) throw ParameterError("no input file given");
    return ingest_csv(run.input, run.columns);
}

std::vector<std::string> iso_dates(const PriceSeries& s) {
    std::vector<std::string> out;
    out.reserve(s.dates.size());
    for (const auto& d : s.dates) out.push_back(format_iso(d));
    return out;
}

std::vector<fs::path> report_paths(const RunConfig& run) {
    if (!run.reports.empty()) return run.reports;
    std::vector<fs::path> out;
    if (fs::is_directory(run.output_dir)) {
        for (const auto& entry : fs::directory_iterator(run.output_dir)) {
            const std::string name = entry.path().filename().string();
            if (entry.is_regular_file() && name.starts_with("report_") && name.ends_with(".json"))
                out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ForecastReport> load_reports(const RunConfig& run) {
    std::vector<ForecastReport> reports;
    for (const auto& p : report_paths(run)) reports.push_back(read_report(p));
    return reports;
}

// Fixed display order for the known model names, others after them.
int model_rank(const std::string& name) {
    static const std::vector<std::string> order{"ANN", "SVR", "MODWT-ANN", "MODWT-SVR"};
    const auto it = std::find(order.begin(), order.end(), name);
    return it == order.end() ? static_cast<int>(order.size()) : static_cast<int>(it - order.begin());
}

void sort_reports(std::vector<ForecastReport>& reports) {
    std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
        return model_rank(a.model_name) < model_rank(b.model_name);
    });
}

std::string fmt(double v, int digits) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(digits);
    out << v;
    return out.str();
}

}  // namespace

void RunConfig::validate_models() const {
    if (models.empty()) throw ParameterError("no model selected");
    std::set<std::string> seen;
    for (const auto& m : models) {
        PipelineConfig probe;
        apply_model_name(probe, m);
        if (!seen.insert(lower(m)).second) throw ParameterError("model listed twice: " + m);
    }
}

std::string model_slug(const std::string& name) { return lower(name); }

void apply_setting(RunConfig& run, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = lower(trim(raw_key));
    const std::string value = trim(raw_value);
    PipelineConfig& p = run.pipeline;
    if (key == "input") run.input = value;
    else if (key == "date_column") run.columns.date = value;
    else if (key == "close_column") run.columns.close = value;
    else if (key == "open_column") run.columns.open = value;
    else if (key == "models") run.models = split_list(lower(value));
    else if (key == "out" || key == "output_dir") run.output_dir = value;
    else if (key == "reports") {
        run.reports.clear();
        for (const auto& r : split_list(value)) run.reports.emplace_back(r);
    } else if (key == "quotes") run.quotes = value;
    else if (key == "backtest_model") run.backtest_model = lower(value);
    else if (key == "literal_roi") run.literal_roi = to_bool(key, value);
    else if (key == "critical_z") run.critical_z = to_double(key, value);
    else if (key == "level") p.wavelet.level = static_cast<int>(to_int(key, value));
    else if (key == "filter") p.wavelet.filter = FilterSpec::by_name(lower(value));
    else if (key == "split") p.split.train_fraction = to_double(key, value);
    else if (key == "train_length") {
        const long long n = to_int(key, value);
        if (n <= 0) throw ParameterError("train_length must be positive");
        p.train_length = static_cast<std::size_t>(n);
    } else if (key == "norm") p.norm = parse_norm_kind(lower(value));
    else if (key == "leakage_mode") p.leakage = parse_leakage_mode(lower(value));
    else if (key == "seed") {
        const long long s = to_int(key, value);
        if (s < 0) throw ParameterError("seed must be non-negative");
        p.seed = static_cast<std::uint64_t>(s);
    } else if (key == "max_diff") p.max_diff = static_cast<int>(to_int(key, value));
    else if (key == "max_lag") p.max_lag = static_cast<int>(to_int(key, value));
    else if (key == "hidden") p.mlp.n_hidden = static_cast<int>(to_int(key, value));
    else if (key == "max_epochs") p.mlp.max_epochs = static_cast<int>(to_int(key, value));
    else if (key == "target_mse") p.mlp.target_mse = to_double(key, value);
    else if (key == "svr_tolerance") p.svr.tolerance = to_double(key, value);
    else if (key == "svr_max_passes") p.svr.max_passes = static_cast<int>(to_int(key, value));
    else if (key == "validation_fraction") p.validation_fraction = to_double(key, value);
    else if (key.starts_with("lag.")) {
        std::string label = trim(raw_key).substr(trim(raw_key).find('.') + 1);
        for (char& c : label) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        p.lag_overrides[label] = static_cast<int>(to_int(key, value));
    } else {
        throw ParameterError("unknown setting: " + raw_key);
    }
}

void load_config_file(RunConfig& run, const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file " + path.string(), 0);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError(path.string() + ": expected key = value", line_no);
        apply_setting(run, line.substr(0, eq), line.substr(eq + 1));
    }
}

void cmd_decompose(const RunConfig& run) {
    const PriceSeries series = load_input(run);
    const DecomposeConfig& wcfg = run.pipeline.wavelet;
    const WaveletDecomposition dec = modwt_decompose(series.close, wcfg);
    const auto labels = component_labels(wcfg.level);
    const auto parts = dec.subseries();
    const auto dates = iso_dates(series);

    std::ostringstream comp;
    comp << "date,close";
    for (const auto& l : labels) comp << ',' << l;
    comp << '\n';
    for (std::size_t t = 0; t < dates.size(); ++t) {
        comp << dates[t] << ',' << format_double(series.close[t]);
        for (const auto& s : parts) comp << ',' << format_double(s.values[t]);
        comp << '\n';
    }
    write_text_file(run.output_dir / "components.csv", comp.str());

    std::ostringstream coef;
    coef << "date";
    for (int j = 1; j <= wcfg.level; ++j) coef << ",W" << j;
    coef << ",V" << wcfg.level << '\n';
    for (std::size_t t = 0; t < dates.size(); ++t) {
        coef << dates[t];
        for (const auto& w : dec.coeffs.wavelet) coef << ',' << format_double(w[t]);
        coef << ',' << format_double(dec.coeffs.scaling[t]) << '\n';
    }
    write_text_file(run.output_dir / "coefficients.csv", coef.str());
}

void cmd_forecast(const RunConfig& run) {
    run.validate_models();
    const PriceSeries series = load_input(run);

    struct Outcome {
        ForecastReport report;
        std::vector<TrainedComponent> models;
    };
    std::vector<std::future<Outcome>> jobs;
    for (const auto& m : run.models) {
        PipelineConfig cfg = run.pipeline;
        apply_model_name(cfg, m);
        jobs.push_back(std::async(std::launch::async, [cfg, &series] {
            Outcome o;
            o.report = run_pipeline(series, cfg, &o.models);
            return o;
        }));
    }
    // Collect every job before rethrowing so no thread outlives `series`.
    std::vector<Outcome> outcomes;
    std::exception_ptr first_error;
    for (auto& job : jobs) {
        try {
            outcomes.push_back(job.get());
        } catch (...) {
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);

    std::ostringstream metrics;
    metrics << "Model,RMSE,DA(%)\n";
    for (const auto& o : outcomes) {
        const std::string slug = model_slug(o.report.model_name);
        write_report(run.output_dir / ("report_" + slug + ".json"), o.report);
        metrics << o.report.model_name << ',' << fmt(o.report.rmse, 4) << ','
                << fmt(o.report.da_percent, 2) << '\n';
        for (const auto& tc : o.models) {
            std::ostringstream text;
            if (tc.kind == ModelKind::Ann) write_model(text, tc.mlp);
            else write_model(text, tc.svr);
            write_text_file(run.output_dir / "models" / slug / (tc.label + ".txt"), text.str());
        }
    }
    write_text_file(run.output_dir / "metrics.csv", metrics.str());

    // All models share the split, so their test spans line up.
    std::ostringstream fc;
    fc << "date,actual";
    for (const auto& o : outcomes) fc << ',' << o.report.model_name;
    fc << '\n';
    const ForecastReport& first = outcomes.front().report;
    for (std::size_t i = 0; i < first.actuals.size(); ++i) {
        fc << first.test_dates[i] << ',' << format_double(first.actuals[i]);
        for (const auto& o : outcomes) fc << ',' << format_double(o.report.predictions.at(i));
        fc << '\n';
    }
    write_text_file(run.output_dir / "forecasts.csv", fc.str());
}

void cmd_compare(const RunConfig& run) {
    std::vector<ForecastReport> reports = load_reports(run);
    if (reports.size() < 2) throw ParameterError("compare needs at least two reports");
    sort_reports(reports);

    std::vector<const ForecastReport*> baselines, hybrids;
    for (const auto& r : reports) {
        if (r.model_name.starts_with("MODWT-")) hybrids.push_back(&r);
        else baselines.push_back(&r);
    }

    std::ostringstream out;
    if (!baselines.empty() && !hybrids.empty()) {
        // Rows are baselines, columns hybrids; "+" means the hybrid is better.
        out << "Model";
        for (const auto* h : hybrids) out << ',' << h->model_name << " z," << h->model_name << " WSRT";
        out << '\n';
        for (const auto* b : baselines) {
            out << b->model_name;
            for (const auto* h : hybrids) {
                const ComparisonRow row = compare_models(*h, *b, run.critical_z);
                out << ',' << fmt(row.result.z, 3) << ',' << to_string(row.result.sign);
            }
            out << '\n';
        }
    } else {
        out << "Model A,Model B,z,WSRT\n";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            for (std::size_t j = i + 1; j < reports.size(); ++j) {
                const ComparisonRow row = compare_models(reports[i], reports[j], run.critical_z);
                out << row.model_a << ',' << row.model_b << ',' << fmt(row.result.z, 3) << ','
                    << to_string(row.result.sign) << '\n';
            }
        }
    }
    write_text_file(run.output_dir / "wsrt.csv", out.str());
}

namespace {

// Week t pairs close[t] with the forecast of close[t + 1], which uses data
// up to t only; the open column gives the execution price of a decision on t.
std::vector<WeeklyQuote> quotes_from_forecast(const PriceSeries& series, const ForecastReport& rep) {
    if (!series.open)
        throw DataError("backtest from a forecast run needs an open column in the input", 0);
    std::vector<WeeklyQuote> quotes;
    const std::size_t n = series.close.size();
    for (std::size_t t = rep.test_start - 1; t + 1 < n; ++t) {
        WeeklyQuote q;
        q.week_start = series.dates[t];
        q.close_first_day = series.close[t];
        q.forecast_next_week = rep.predictions.at(t + 1 - rep.test_start);
        q.open_next_day = (*series.open)[t];
        quotes.push_back(q);
    }
    return quotes;
}

}  // namespace

void cmd_backtest(const RunConfig& run) {
    std::vector<WeeklyQuote> quotes;
    if (!run.quotes.empty()) {
        quotes = read_quotes_csv(run.quotes);
    } else {
        const PriceSeries series = load_input(run);
        PipelineConfig cfg = run.pipeline;
        apply_model_name(cfg, run.backtest_model);
        quotes = quotes_from_forecast(series, run_pipeline(series, cfg));
    }
    const TradeLog log = run_backtest(quotes);
    write_text_file(run.output_dir / "ledger.csv", format_ledger_csv(quotes, log));

    const RoiResult r = roi(log);
    std::ostringstream out;
    out << "metric,value\n";
    out << "roi," << format_double(run.literal_roi ? r.literal : r.compounded) << '\n';
    out << "roi_compounded," << format_double(r.compounded) << '\n';
    out << "roi_literal," << format_double(r.literal) << '\n';
    out << "buy_and_hold," << format_double(buy_and_hold_roi(quotes)) << '\n';
    out << "round_trips," << r.round_trips << '\n';
    out << "open_position_excluded," << (r.open_position_excluded ? "true" : "false") << '\n';
    write_text_file(run.output_dir / "roi.csv", out.str());
}

void cmd_plot(const RunConfig& run) {
    bool wrote = false;
    if (!run.input.empty()) {
        const PriceSeries series = load_input(run);
        const auto dates = iso_dates(series);
        write_text_file(run.output_dir / "series.svg",
                        line_chart_svg("Closing price", {{"close", series.close, 0}}, dates));
        const auto dec = modwt_decompose(series.close, run.pipeline.wavelet);
        std::vector<PlotSeries> panels{{"close", series.close, 0}};
        for (const auto& s : dec.subseries()) panels.push_back({s.label, s.values, 0});
        write_text_file(run.output_dir / "components.svg",
                        stacked_chart_svg("MODWT multiresolution components", panels, dates));
        wrote = true;
    }
    std::vector<ForecastReport> reports = load_reports(run);
    sort_reports(reports);
    for (const auto& r : reports) {
        const std::vector<PlotSeries> lines{{"actual", r.actuals, 0}, {r.model_name, r.predictions, 0}};
        write_text_file(run.output_dir / ("forecast_" + model_slug(r.model_name) + ".svg"),
                        line_chart_svg("1-step-ahead forecast: " + r.model_name, lines, r.test_dates));
        wrote = true;
    }
    if (!wrote) throw ParameterError("nothing to plot: give --input or forecast reports");
}

}  // namespace wavecast::cli
