#include "wavecast/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "wavecast/error.hpp"

namespace wavecast {
namespace {

using json = nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::optional<double> parse_number(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
    return v;
}

struct Header {
    std::map<std::string, std::size_t> index;

    std::optional<std::size_t> find(const std::string& name) const {
        const auto it = index.find(lower(name));
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

Header read_header(std::istream& in, long& line_no) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
            line.erase(0, 3);
        }
        if (trim(line).empty()) continue;
        Header h;
        const auto cells = split_csv_line(line);
        for (std::size_t i = 0; i < cells.size(); ++i) h.index[lower(trim(cells[i]))] = i;
        return h;
    }
    throw DataError("CSV has no header row", line_no);
}

std::size_t require_column(const Header& h, const std::string& name) {
    const auto idx = h.find(name);
    if (!idx) throw DataError("CSV has no '" + name + "' column", 1);
    return *idx;
}

const std::string& cell(const std::vector<std::string>& cells, std::size_t idx, long line_no) {
    if (idx >= cells.size()) throw DataError("row has too few fields", line_no);
    return cells[idx];
}

Date parse_date_cell(const std::string& text, long line_no) {
    const auto d = parse_date(text);
    if (!d) throw DataError("unparseable date '" + trim(text) + "'", line_no);
    return *d;
}

double parse_price_cell(const std::string& text, const char* what, long line_no) {
    // Quoted exports often group thousands: "8,284.50".
    std::string plain = text;
    plain.erase(std::remove(plain.begin(), plain.end(), ','), plain.end());
    const auto v = parse_number(plain);
    if (!v) throw DataError(std::string("unparseable ") + what + " '" + trim(text) + "'", line_no);
    if (!std::isfinite(*v) || *v <= 0.0) {
        throw DataError(std::string(what) + " must be a positive number, got '" + trim(text) + "'",
                        line_no);
    }
    return *v;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

PriceSeries parse_price_csv(std::istream& in, const CsvColumns& columns) {
    long line_no = 0;
    const Header h = read_header(in, line_no);
    const std::size_t date_idx = require_column(h, columns.date);
    const std::size_t close_idx = require_column(h, columns.close);
    const std::optional<std::size_t> open_idx =
        columns.open.empty() ? std::nullopt : h.find(columns.open);

    PriceSeries series;
    std::vector<double> opens;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        const Date d = parse_date_cell(cell(cells, date_idx, line_no), line_no);
        if (!series.dates.empty() && !(series.dates.back() < d)) {
            throw ValidationError("dates not strictly increasing at line " + std::to_string(line_no));
        }
        series.dates.push_back(d);
        series.close.push_back(parse_price_cell(cell(cells, close_idx, line_no), "close", line_no));
        if (open_idx) opens.push_back(parse_price_cell(cell(cells, *open_idx, line_no), "open", line_no));
    }
    if (open_idx) series.open = std::move(opens);
    series.validate();
    return series;
}

PriceSeries ingest_csv(const std::filesystem::path& path, const CsvColumns& columns) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return parse_price_csv(in, columns);
}

std::vector<WeeklyQuote> parse_quotes_csv(std::istream& in) {
    long line_no = 0;
    const Header h = read_header(in, line_no);
    const std::size_t date_idx = require_column(h, "date");
    const std::size_t close_idx = require_column(h, "close");
    const std::size_t forecast_idx = require_column(h, "forecast");
    const auto open_idx = h.find("open");
    const auto exec_idx = h.find("execution_date");

    std::vector<WeeklyQuote> quotes;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        WeeklyQuote q;
        q.week_start = parse_date_cell(cell(cells, date_idx, line_no), line_no);
        if (!quotes.empty() && !(quotes.back().week_start < q.week_start)) {
            throw ValidationError("dates not strictly increasing at line " + std::to_string(line_no));
        }
        q.close_first_day = parse_price_cell(cell(cells, close_idx, line_no), "close", line_no);
        q.forecast_next_week = parse_price_cell(cell(cells, forecast_idx, line_no), "forecast", line_no);
        if (open_idx && *open_idx < cells.size() && !trim(cells[*open_idx]).empty()) {
            q.open_next_day = parse_price_cell(cells[*open_idx], "open", line_no);
        }
        if (exec_idx && *exec_idx < cells.size() && !trim(cells[*exec_idx]).empty()) {
            q.execution_date = parse_date_cell(cells[*exec_idx], line_no);
        }
        quotes.push_back(q);
    }
    return quotes;
}

std::vector<WeeklyQuote> read_quotes_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return parse_quotes_csv(in);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string report_to_json(const ForecastReport& r) {
    json j;
    j["model_name"] = r.model_name;
    j["leakage_mode"] = r.leakage_mode;
    j["test_start"] = r.test_start;
    j["test_dates"] = r.test_dates;
    j["predictions"] = r.predictions;
    j["actuals"] = r.actuals;
    j["rmse"] = r.rmse;
    j["da_percent"] = r.da_percent;
    json subs = json::array();
    for (const auto& s : r.per_subseries) {
        subs.push_back({{"label", s.label},
                        {"diff_order", s.diff_order},
                        {"stationary", s.stationary},
                        {"adf_statistic", s.adf_statistic},
                        {"lag", s.lag},
                        {"norm_kind", to_string(s.norm_kind)},
                        {"norm_a", s.norm_a},
                        {"norm_b", s.norm_b},
                        {"learner", s.learner},
                        {"model", s.model}});
    }
    j["per_subseries"] = subs;
    return j.dump(2) + "\n";
}

ForecastReport report_from_json(const std::string& text) {
    ForecastReport r;
    try {
        const json j = json::parse(text);
        r.model_name = j.at("model_name").get<std::string>();
        r.leakage_mode = j.at("leakage_mode").get<std::string>();
        r.test_start = j.at("test_start").get<std::size_t>();
        r.test_dates = j.at("test_dates").get<std::vector<std::string>>();
        r.predictions = j.at("predictions").get<std::vector<double>>();
        r.actuals = j.at("actuals").get<std::vector<double>>();
        r.rmse = j.at("rmse").get<double>();
        r.da_percent = j.at("da_percent").get<double>();
        for (const auto& s : j.at("per_subseries")) {
            SubseriesSummary sum;
            sum.label = s.at("label").get<std::string>();
            sum.diff_order = s.at("diff_order").get<int>();
            sum.stationary = s.at("stationary").get<bool>();
            sum.adf_statistic = s.at("adf_statistic").get<double>();
            sum.lag = s.at("lag").get<int>();
            sum.norm_kind = parse_norm_kind(s.at("norm_kind").get<std::string>());
            sum.norm_a = s.at("norm_a").get<double>();
            sum.norm_b = s.at("norm_b").get<double>();
            sum.learner = s.at("learner").get<std::string>();
            sum.model = s.at("model").get<std::map<std::string, double>>();
            r.per_subseries.push_back(std::move(sum));
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed report: ") + e.what());
    }
    if (r.predictions.size() != r.actuals.size()) {
        throw DataError("malformed report: predictions and actuals differ in length");
    }
    return r;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
    if (!out) throw DataError("write failed for " + path.string());
}

void write_report(const std::filesystem::path& path, const ForecastReport& report) {
    write_text_file(path, report_to_json(report));
}

ForecastReport read_report(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return report_from_json(buf.str());
}

// ---------------------------------------------------------------------------
// Model text format

namespace {

void put_array(std::ostream& out, const char* key, const std::vector<double>& values) {
    out << key << " =";
    for (double v : values) out << ' ' << format_double(v);
    out << '\n';
}

std::map<std::string, std::string> read_kv(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw DataError("model file: expected 'key = value'", line_no);
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

const std::string& need(const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw DataError("model file: missing key '" + key + "'");
    return it->second;
}

double need_number(const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto v = parse_number(need(kv, key));
    if (!v) throw DataError("model file: '" + key + "' is not a number");
    return *v;
}

std::vector<double> need_array(const std::map<std::string, std::string>& kv, const std::string& key) {
    std::vector<double> out;
    std::istringstream ss(need(kv, key));
    std::string tok;
    while (ss >> tok) {
        const auto v = parse_number(tok);
        if (!v) throw DataError("model file: bad value '" + tok + "' in '" + key + "'");
        out.push_back(*v);
    }
    return out;
}

}  // namespace

void write_model(std::ostream& out, const MlpModel& m) {
    out << "# wavecast model v1\n";
    out << "kind = mlp\n";
    out << "n_input = " << m.n_input << '\n';
    out << "n_hidden = " << m.n_hidden << '\n';
    put_array(out, "hidden_weights", m.hidden_weights);
    put_array(out, "hidden_bias", m.hidden_bias);
    put_array(out, "output_weights", m.output_weights);
    out << "output_bias = " << format_double(m.output_bias) << '\n';
}

void write_model(std::ostream& out, const SvrModel& m) {
    out << "# wavecast model v1\n";
    out << "kind = svr\n";
    out << "kernel = " << to_string(m.kernel.kind) << '\n';
    out << "gamma = " << format_double(m.kernel.gamma) << '\n';
    out << "degree = " << m.kernel.degree << '\n';
    out << "coef0 = " << format_double(m.kernel.coef0) << '\n';
    out << "n_features = " << m.n_features << '\n';
    out << "bias = " << format_double(m.bias) << '\n';
    put_array(out, "dual_coeffs", m.dual_coeffs);
    put_array(out, "support_vectors", m.support_vectors);
}

MlpModel read_mlp_model(std::istream& in) {
    const auto kv = read_kv(in);
    if (need(kv, "kind") != "mlp") throw DataError("model file is not an mlp model");
    MlpModel m = MlpModel::zeros(static_cast<int>(need_number(kv, "n_input")),
                                 static_cast<int>(need_number(kv, "n_hidden")));
    m.hidden_weights = need_array(kv, "hidden_weights");
    m.hidden_bias = need_array(kv, "hidden_bias");
    m.output_weights = need_array(kv, "output_weights");
    m.output_bias = need_number(kv, "output_bias");
    try {
        m.validate();
    } catch (const ValidationError& e) {
        throw DataError(std::string("model file: ") + e.what());
    }
    return m;
}

SvrModel read_svr_model(std::istream& in) {
    const auto kv = read_kv(in);
    if (need(kv, "kind") != "svr") throw DataError("model file is not an svr model");
    SvrModel m;
    m.kernel.kind = parse_kernel_kind(need(kv, "kernel"));
    m.kernel.gamma = need_number(kv, "gamma");
    m.kernel.degree = static_cast<int>(need_number(kv, "degree"));
    m.kernel.coef0 = need_number(kv, "coef0");
    m.n_features = static_cast<std::size_t>(need_number(kv, "n_features"));
    m.bias = need_number(kv, "bias");
    m.dual_coeffs = need_array(kv, "dual_coeffs");
    m.support_vectors = need_array(kv, "support_vectors");
    if (m.support_vectors.size() != m.dual_coeffs.size() * m.n_features) {
        throw DataError("model file: support vector block does not match dual coefficients");
    }
    return m;
}

}  // namespace wavecast
