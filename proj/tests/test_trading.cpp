#include <doctest.h>

#include <chrono>
#include <sstream>

#include "support.hpp"
#include "wavecast/error.hpp"
#include "wavecast/io.hpp"
#include "wavecast/trading.hpp"

using namespace wavecast;
using testing::Rng;

namespace {

std::vector<WeeklyQuote> make_quotes(const std::vector<double>& close, const std::vector<double>& forecast,
                                     const std::vector<double>& open) {
    std::vector<WeeklyQuote> q(close.size());
    const std::chrono::sys_days start{std::chrono::year{2015} / 1 / 5};
    for (std::size_t k = 0; k < close.size(); ++k) {
        q[k].week_start = Date{start + std::chrono::weeks{k}};
        q[k].close_first_day = close[k];
        q[k].forecast_next_week = forecast[k];
        q[k].open_next_day = open[k];
    }
    return q;
}

Date d(int y, unsigned m, unsigned day) { return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{day}}; }

struct Expected {
    TradeKind kind;
    Date date;
    double price;
};

std::vector<WeeklyQuote> random_quotes(Rng& rng, std::size_t n) {
    std::vector<double> close(n), forecast(n), open(n);
    double level = 100.0;
    for (std::size_t k = 0; k < n; ++k) {
        level *= std::exp(rng.normal(0.0, 0.03));
        close[k] = level;
        forecast[k] = level * std::exp(rng.normal(0.0, 0.03));
        open[k] = level * std::exp(rng.normal(0.0, 0.01));
    }
    return make_quotes(close, forecast, open);
}

}  // namespace

TEST_SUITE("trading") {

TEST_CASE("reference ledger decisions reproduce") {
    const auto quotes = read_quotes_csv(testing::data_path("reference_quotes.csv"));
    REQUIRE(quotes.size() == 26);
    const auto log = run_backtest(quotes);
    const std::vector<Expected> expected{
        {TradeKind::Buy, d(2015, 1, 6), 8325.30},  {TradeKind::Sell, d(2015, 1, 20), 8575.09},
        {TradeKind::Buy, d(2015, 2, 3), 8823.15},  {TradeKind::Sell, d(2015, 3, 3), 8962.85},
        {TradeKind::Buy, d(2015, 3, 24), 8537.05}, {TradeKind::Sell, d(2015, 4, 7), 8684.45},
        {TradeKind::Buy, d(2015, 5, 5), 8338.40},  {TradeKind::Sell, d(2015, 5, 26), 8377.10},
        {TradeKind::Buy, d(2015, 6, 9), 8026.50},  {TradeKind::Sell, d(2015, 6, 30), 8316.35},
    };
    REQUIRE(log.transactions.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const auto& t = log.transactions[i];
        CHECK(t.kind == expected[i].kind);
        CHECK(t.execution_date == expected[i].date);
        CHECK(t.price == expected[i].price);
        CHECK(t.rule == (t.kind == TradeKind::Buy ? TradeRule::R1 : TradeRule::R2));
    }
    CHECK_FALSE(log.holding_at_end);
    CHECK(log.round_trips == 5);

    // Only 25-May-15 is an error week; Rule 3 never fires.
    int errors = 0;
    for (std::size_t k = 0; k < quotes.size(); ++k) {
        errors += log.error_index[k];
        if (log.error_index[k]) CHECK(quotes[k].week_start == d(2015, 5, 25));
    }
    CHECK(errors == 1);

    // Per-trade returns from the transcribed prices.
    const double pairs[5][2] = {{8325.30, 8575.09}, {8823.15, 8962.85}, {8537.05, 8684.45},
                                {8338.40, 8377.10}, {8026.50, 8316.35}};
    double growth = 1.0, literal = 1.0;
    for (const auto& p : pairs) {
        growth *= p[1] / p[0];
        literal *= (p[1] - p[0]) / p[0];
    }
    const auto r = roi(log);
    CHECK(r.compounded == doctest::Approx(growth - 1.0).epsilon(1e-12));
    CHECK(r.compounded == doctest::Approx(0.1079324387).epsilon(1e-9));
    CHECK(r.literal == doctest::Approx(literal).epsilon(1e-9));
    CHECK_FALSE(r.open_position_excluded);
    CHECK(buy_and_hold_roi(quotes) == doctest::Approx(0.0191704803).epsilon(1e-9));
    CHECK(r.compounded > buy_and_hold_roi(quotes));
}

TEST_CASE("error index examples") {
    const auto rising = make_quotes({100, 101, 102, 103}, {102, 103, 104, 105}, {100, 101, 102, 103});
    CHECK(error_index(rising) == std::vector<int>{0, 0, 0, 0});
    const auto wrong = make_quotes({100, 99}, {101, 98}, {100, 99});
    CHECK(error_index(wrong) == std::vector<int>{0, 1});
    const auto right_fall = make_quotes({100, 99}, {98, 98}, {100, 99});
    CHECK(error_index(right_fall) == std::vector<int>{0, 0});
    // An unchanged close counts as a disappointed rise.
    const auto flat = make_quotes({100, 100}, {101, 101}, {100, 100});
    CHECK(error_index(flat) == std::vector<int>{0, 1});
}

TEST_CASE("rule 3 fires after three consecutive errors") {
    const auto q = make_quotes({100, 99, 98, 97, 96}, {101, 100, 99, 98, 97}, {100.5, 99.5, 98.5, 97.5, 96.5});
    const auto log = run_backtest(q);
    CHECK(log.error_index == std::vector<int>{0, 1, 1, 1, 1});
    REQUIRE(log.transactions.size() == 3);
    CHECK(log.transactions[0].rule == TradeRule::R1);
    CHECK(log.transactions[1].kind == TradeKind::Sell);
    CHECK(log.transactions[1].rule == TradeRule::R3);
    CHECK(log.transactions[1].week == 3);
    CHECK(log.transactions[1].price == 97.5);
    // Flat again, the forecast above the close buys back.
    CHECK(log.transactions[2].rule == TradeRule::R1);
    CHECK(log.holding_at_end);
    const auto r = roi(log);
    CHECK(r.open_position_excluded);
    CHECK(r.round_trips == 1);
    CHECK(r.compounded == doctest::Approx((97.5 - 100.5) / 100.5));
}

TEST_CASE("rule 2 takes priority over rule 3") {
    const auto q = make_quotes({100, 99, 98, 97}, {101, 100, 99, 96}, {100, 99, 98, 97});
    const auto log = run_backtest(q);
    CHECK(log.error_index == std::vector<int>{0, 1, 1, 1});
    REQUIRE(log.transactions.size() == 2);
    CHECK(log.transactions[1].rule == TradeRule::R2);
}

TEST_CASE("forecasts below closes never trade") {
    const auto q = make_quotes({100, 105, 110}, {99, 104, 109}, {100, 105, 110});
    const auto log = run_backtest(q);
    CHECK(log.transactions.empty());
    CHECK(log.roi == 0.0);
    CHECK(log.roi_literal == 0.0);
    CHECK_FALSE(log.holding_at_end);
}

TEST_CASE("roi conventions") {
    TradeLog one;
    one.transactions = {{TradeKind::Buy, 0, {}, {}, 100.0, TradeRule::R1},
                        {TradeKind::Sell, 1, {}, {}, 110.0, TradeRule::R2}};
    auto r = roi(one);
    CHECK(r.compounded == doctest::Approx(0.10));
    CHECK(r.literal == r.compounded);

    TradeLog two = one;
    two.transactions.push_back({TradeKind::Buy, 2, {}, {}, 200.0, TradeRule::R1});
    two.transactions.push_back({TradeKind::Sell, 3, {}, {}, 220.0, TradeRule::R2});
    r = roi(two);
    CHECK(r.compounded == doctest::Approx(0.21));
    CHECK(r.literal == doctest::Approx(0.01));
    CHECK(r.round_trips == 2);

    TradeLog bad;
    bad.transactions = {{TradeKind::Sell, 0, {}, {}, 100.0, TradeRule::R2}};
    CHECK_THROWS_AS(roi(bad), ValidationError);
}

TEST_CASE("buy and hold examples") {
    CHECK(buy_and_hold_roi(make_quotes({100, 100, 100}, {1, 1, 1}, {100, 100, 100})) == 0.0);
    CHECK(buy_and_hold_roi(make_quotes({90, 120, 150}, {1, 1, 1}, {100, 100, 100})) == doctest::Approx(0.5));
    auto q = make_quotes({90, 120}, {1, 1}, {100, 100});
    q[0].open_next_day.reset();
    CHECK_THROWS_AS(buy_and_hold_roi(q), DataError);
}

TEST_CASE("backtest invariants on random quotes") {
    Rng rng(1);
    for (int rep = 0; rep < 200; ++rep) {
        const auto q = random_quotes(rng, static_cast<std::size_t>(rng.integer(2, 60)));
        const auto log = run_backtest(q);
        bool holding = false;
        for (const auto& t : log.transactions) {
            CHECK((t.kind == TradeKind::Buy) == !holding);
            holding = !holding;
            CHECK(t.price == *q[t.week].open_next_day);
        }
        for (std::size_t i = 1; i < log.transactions.size(); ++i)
            CHECK(log.transactions[i].week > log.transactions[i - 1].week);
        CHECK(log.holding_at_end == holding);
        const auto r = roi(log);
        if (r.round_trips <= 1) CHECK(r.literal == r.compounded);
        const auto again = run_backtest(q);
        CHECK(again.roi == log.roi);
        CHECK(format_ledger_csv(q, again) == format_ledger_csv(q, log));
    }
}

TEST_CASE("missing execution price names the week") {
    auto q = make_quotes({100, 101}, {102, 103}, {100, 101});
    q[0].open_next_day.reset();
    try {
        run_backtest(q);
        FAIL("expected a data error");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("5-Jan-15") != std::string::npos);
    }
    CHECK_THROWS_AS(run_backtest(make_quotes({100}, {101}, {100})), LengthError);
    CHECK_THROWS_AS(run_backtest(make_quotes({100, -1}, {101, 1}, {100, 1})), DataError);
}

TEST_CASE("ledger csv layout") {
    const auto quotes = read_quotes_csv(testing::data_path("reference_quotes.csv"));
    const auto text = format_ledger_csv(quotes, run_backtest(quotes));
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "Date,Closing Value,Forecasted Closing Value,Transaction,Transaction Date,E_k,Rule");
    std::getline(in, line);
    CHECK(line == "5-Jan-15,8284.50,8392.73,Buy at 8325.30,6-Jan-15,0,Rule 1");
    std::getline(in, line);
    CHECK(line == "12-Jan-15,8513.80,8852.33,-,-,0,");
    int rows = 3, buys = 1, sells = 0;
    std::string last_kind = "Buy";
    while (std::getline(in, line)) {
        ++rows;
        const auto cells = split_csv_line(line);
        REQUIRE(cells.size() == 7);
        if (cells[3] == "-") continue;
        const std::string kind = cells[3].substr(0, cells[3].find(' '));
        CHECK(kind != last_kind);
        last_kind = kind;
        (kind == "Buy" ? buys : sells) += 1;
    }
    CHECK(rows == 27);
    CHECK(buys == 5);
    CHECK(sells == 5);
    CHECK(text.find("26-May-15,1,Rule 2") != std::string::npos);
}

}
