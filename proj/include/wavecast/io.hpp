#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wavecast/mlp.hpp"
#include "wavecast/pipeline.hpp"
#include "wavecast/series.hpp"
#include "wavecast/svr.hpp"
#include "wavecast/trading.hpp"

namespace wavecast {

struct CsvColumns {
    std::string date = "date";
    std::string close = "close";
    /// Empty: ignore opens. Missing column is fine; a present column must be complete.
    std::string open = "open";
};

/// Comma-separated, header row required. Dates are ISO 8601 or "5-Jan-15".
PriceSeries ingest_csv(const std::filesystem::path& path, const CsvColumns& columns = {});
PriceSeries parse_price_csv(std::istream& in, const CsvColumns& columns = {});

/// Backtest input: date, close, forecast, and optional open / execution_date
/// columns; open cells may be blank on weeks where no trade is expected.
std::vector<WeeklyQuote> read_quotes_csv(const std::filesystem::path& path);
std::vector<WeeklyQuote> parse_quotes_csv(std::istream& in);

/// Splits one CSV record; handles double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

// Reports are JSON documents with ForecastReport's field names.
std::string report_to_json(const ForecastReport& report);
ForecastReport report_from_json(const std::string& text);
void write_report(const std::filesystem::path& path, const ForecastReport& report);
ForecastReport read_report(const std::filesystem::path& path);

// Models use a plain "key = value" text format, arrays as space-separated
// decimals at round-trip precision.
void write_model(std::ostream& out, const MlpModel& model);
void write_model(std::ostream& out, const SvrModel& model);
MlpModel read_mlp_model(std::istream& in);
SvrModel read_svr_model(std::istream& in);

/// %.17g
std::string format_double(double v);

/// Writes text to path, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace wavecast
