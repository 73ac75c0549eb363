#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavecast/date.hpp"

namespace wavecast {

/// One decision week. forecast_next_week is the forecast close for the first
/// trading day of the following week; open_next_day is the price a trade
/// decided this week executes at.
struct WeeklyQuote {
    Date week_start;
    double close_first_day = 0.0;
    double forecast_next_week = 0.0;
    std::optional<double> open_next_day;
    /// Defaults to the next weekday after week_start.
    std::optional<Date> execution_date;
};

enum class TradeKind { Buy, Sell };
enum class TradeRule { R1, R2, R3 };

std::string to_string(TradeKind kind);
std::string to_string(TradeRule rule);

struct Transaction {
    TradeKind kind = TradeKind::Buy;
    std::size_t week = 0;  ///< index of the decision week
    Date decision_date;
    Date execution_date;
    double price = 0.0;
    TradeRule rule = TradeRule::R1;
};

struct TradeLog {
    std::vector<Transaction> transactions;
    std::vector<int> error_index;
    double roi = 0.0;          ///< compounded: prod(1 + r_i) - 1
    double roi_literal = 0.0;  ///< product of raw per-trade returns
    bool holding_at_end = false;
    int round_trips = 0;
};

/// E_k = 1 iff the week-k forecast exceeded y_{k-1} and y_k <= y_{k-1}; E_0 = 0.
std::vector<int> error_index(std::span<const WeeklyQuote> quotes);

/// Scans the weeks applying: Rule 1 buy when flat and the forecast is above
/// the close; Rule 2 sell when holding and the forecast is below the close;
/// Rule 3 sell when holding after three consecutive error weeks. Rule 2 is
/// checked before Rule 3. An open position at the end is left open.
TradeLog run_backtest(std::span<const WeeklyQuote> quotes);

struct RoiResult {
    double compounded = 0.0;
    double literal = 0.0;
    int round_trips = 0;
    bool open_position_excluded = false;
};

RoiResult roi(const TradeLog& log);

/// Buy at the first week's execution price, value at the last close.
double buy_and_hold_roi(std::span<const WeeklyQuote> quotes);

/// Table columns: Date, Closing Value, Forecasted Closing Value, Transaction,
/// Transaction Date, E_k, Rule.
std::string format_ledger_csv(std::span<const WeeklyQuote> quotes, const TradeLog& log);

}  // namespace wavecast
