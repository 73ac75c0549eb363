#include "wavecast/trading.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "wavecast/error.hpp"

namespace wavecast {

std::string to_string(TradeKind kind) { return kind == TradeKind::Buy ? "Buy" : "Sell"; }

std::string to_string(TradeRule rule) {
    switch (rule) {
        case TradeRule::R1: return "Rule 1";
        case TradeRule::R2: return "Rule 2";
        case TradeRule::R3: return "Rule 3";
    }
    return "";
}

namespace {

void validate_quotes(std::span<const WeeklyQuote> quotes) {
    if (quotes.size() < 2) throw LengthError("backtest needs at least two weeks");
    for (std::size_t k = 0; k < quotes.size(); ++k) {
        const auto& q = quotes[k];
        const bool ok = std::isfinite(q.close_first_day) && q.close_first_day > 0.0 &&
                        std::isfinite(q.forecast_next_week) && q.forecast_next_week > 0.0 &&
                        (!q.open_next_day || (std::isfinite(*q.open_next_day) && *q.open_next_day > 0.0));
        if (!ok) throw DataError("week " + format_short(q.week_start) + ": prices must be positive");
    }
}

Transaction execute(const WeeklyQuote& q, std::size_t k, TradeKind kind, TradeRule rule) {
    if (!q.open_next_day) {
        throw DataError("week " + format_short(q.week_start) + " fires " + to_string(rule) +
                        " but has no execution price");
    }
    return Transaction{kind, k, q.week_start, q.execution_date.value_or(next_weekday(q.week_start)),
                       *q.open_next_day, rule};
}

}  // namespace

std::vector<int> error_index(std::span<const WeeklyQuote> quotes) {
    std::vector<int> e(quotes.size(), 0);
    for (std::size_t k = 1; k < quotes.size(); ++k) {
        const double prev_close = quotes[k - 1].close_first_day;
        const double forecast_k = quotes[k - 1].forecast_next_week;
        e[k] = (forecast_k > prev_close && quotes[k].close_first_day <= prev_close) ? 1 : 0;
    }
    return e;
}

TradeLog run_backtest(std::span<const WeeklyQuote> quotes) {
    validate_quotes(quotes);
    TradeLog log;
    log.error_index = error_index(quotes);
    bool holding = false;
    for (std::size_t k = 0; k < quotes.size(); ++k) {
        const auto& q = quotes[k];
        if (!holding) {
            if (q.forecast_next_week > q.close_first_day) {
                log.transactions.push_back(execute(q, k, TradeKind::Buy, TradeRule::R1));
                holding = true;
            }
        } else if (q.forecast_next_week < q.close_first_day) {
            log.transactions.push_back(execute(q, k, TradeKind::Sell, TradeRule::R2));
            holding = false;
        } else if (k >= 2 && log.error_index[k - 2] + log.error_index[k - 1] + log.error_index[k] == 3) {
            log.transactions.push_back(execute(q, k, TradeKind::Sell, TradeRule::R3));
            holding = false;
        }
    }
    log.holding_at_end = holding;
    const RoiResult r = roi(log);
    log.roi = r.compounded;
    log.roi_literal = r.literal;
    log.round_trips = r.round_trips;
    return log;
}

RoiResult roi(const TradeLog& log) {
    RoiResult r;
    double compounded = 0.0, literal = 1.0;
    const Transaction* open_buy = nullptr;
    for (const auto& t : log.transactions) {
        if (t.kind == TradeKind::Buy) {
            if (open_buy) throw ValidationError("trade log has two consecutive buys");
            open_buy = &t;
        } else {
            if (!open_buy) throw ValidationError("trade log sells without a prior buy");
            const double ret = (t.price - open_buy->price) / open_buy->price;
            // (1 + c)(1 + r) - 1, exact for the first trade.
            compounded += ret + compounded * ret;
            literal *= ret;
            ++r.round_trips;
            open_buy = nullptr;
        }
    }
    r.open_position_excluded = open_buy != nullptr;
    r.compounded = compounded;
    r.literal = r.round_trips > 0 ? literal : 0.0;
    return r;
}

double buy_and_hold_roi(std::span<const WeeklyQuote> quotes) {
    if (quotes.size() < 2) throw LengthError("buy-and-hold needs at least two weeks");
    const auto& first = quotes.front();
    if (!first.open_next_day) {
        throw DataError("week " + format_short(first.week_start) +
                        ": buy-and-hold needs an execution price in the first week");
    }
    return (quotes.back().close_first_day - *first.open_next_day) / *first.open_next_day;
}

std::string format_ledger_csv(std::span<const WeeklyQuote> quotes, const TradeLog& log) {
    std::ostringstream out;
    out << "Date,Closing Value,Forecasted Closing Value,Transaction,Transaction Date,E_k,Rule\n";
    std::size_t next = 0;
    char buf[64];
    for (std::size_t k = 0; k < quotes.size(); ++k) {
        const auto& q = quotes[k];
        out << format_short(q.week_start) << ',';
        std::snprintf(buf, sizeof buf, "%.2f,%.2f,", q.close_first_day, q.forecast_next_week);
        out << buf;
        if (next < log.transactions.size() && log.transactions[next].week == k) {
            const auto& t = log.transactions[next++];
            std::snprintf(buf, sizeof buf, "%s at %.2f", to_string(t.kind).c_str(), t.price);
            out << buf << ',' << format_short(t.execution_date) << ',' << log.error_index[k] << ','
                << to_string(t.rule) << '\n';
        } else {
            out << "-,-," << log.error_index[k] << ",\n";
        }
    }
    return out.str();
}

}  // namespace wavecast
