#include "wavecast/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace wavecast {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr int kWidth = 960;
constexpr double kLeft = 70, kRight = 20;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct Frame {
    double top, height;
    double x_max;  // number of x positions - 1
    double y_min, y_max;

    double px(double x) const {
        return kLeft + (x_max > 0 ? x / x_max : 0.0) * (kWidth - kLeft - kRight);
    }
    double py(double y) const {
        const double span = y_max - y_min;
        return top + height - (span > 0 ? (y - y_min) / span : 0.5) * height;
    }
};

void draw_axes(std::ostringstream& out, const Frame& f, const std::vector<std::string>& x_labels) {
    out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(f.top) << "\" width=\""
        << num(kWidth - kLeft - kRight) << "\" height=\"" << num(f.height)
        << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"0.8\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double y = f.y_min + (f.y_max - f.y_min) * i / 4.0;
        out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(f.py(y) + 4)
            << "\" font-size=\"10\" text-anchor=\"end\">" << tick_label(y) << "</text>\n";
    }
    if (!x_labels.empty()) {
        const std::size_t n = x_labels.size();
        const std::size_t step = std::max<std::size_t>(1, n / 6);
        for (std::size_t i = 0; i < n; i += step) {
            out << "<text x=\"" << num(f.px(static_cast<double>(i))) << "\" y=\""
                << num(f.top + f.height + 14) << "\" font-size=\"10\" text-anchor=\"middle\">"
                << escape(x_labels[i]) << "</text>\n";
        }
    }
}

void draw_series(std::ostringstream& out, const Frame& f, const PlotSeries& s, const char* color) {
    if (s.values.empty()) return;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (i) out << ' ';
        out << num(f.px(static_cast<double>(s.offset + i))) << ',' << num(f.py(s.values[i]));
    }
    out << "\"/>\n";
}

std::pair<double, double> value_range(const std::vector<PlotSeries>& series) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : series) {
        for (double v : s.values) {
            if (!std::isfinite(v)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(lo <= hi)) return {0.0, 1.0};
    if (lo == hi) return {lo - 1.0, hi + 1.0};
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

double x_extent(const std::vector<PlotSeries>& series, const std::vector<std::string>& x_labels) {
    std::size_t n = x_labels.size();
    for (const auto& s : series) n = std::max(n, s.offset + s.values.size());
    return n > 0 ? static_cast<double>(n - 1) : 0.0;
}

void open_svg(std::ostringstream& out, int height, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << height << "\" viewBox=\"0 0 " << kWidth << ' ' << height
        << "\" font-family=\"sans-serif\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">"
        << escape(title) << "</text>\n";
}

}  // namespace

std::string line_chart_svg(const std::string& title, const std::vector<PlotSeries>& series,
                           const std::vector<std::string>& x_labels) {
    constexpr int height = 420;
    std::ostringstream out;
    open_svg(out, height, title);
    const auto [lo, hi] = value_range(series);
    const Frame f{36, height - 36 - 50, x_extent(series, x_labels), lo, hi};
    draw_axes(out, f, x_labels);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = kPalette[k % std::size(kPalette)];
        draw_series(out, f, series[k], color);
        const double lx = kLeft + 10 + 150.0 * static_cast<double>(k);
        out << "<line x1=\"" << num(lx) << "\" y1=\"" << height - 12 << "\" x2=\"" << num(lx + 18)
            << "\" y2=\"" << height - 12 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(lx + 22) << "\" y=\"" << height - 8 << "\" font-size=\"11\">"
            << escape(series[k].name) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string stacked_chart_svg(const std::string& title, const std::vector<PlotSeries>& panels,
                              const std::vector<std::string>& x_labels) {
    constexpr double panel_h = 110, gap = 28;
    const int height = static_cast<int>(36 + panels.size() * (panel_h + gap) + 10);
    std::ostringstream out;
    open_svg(out, height, title);
    const double x_max = x_extent(panels, x_labels);
    for (std::size_t k = 0; k < panels.size(); ++k) {
        const auto [lo, hi] = value_range({panels[k]});
        const Frame f{36 + static_cast<double>(k) * (panel_h + gap), panel_h, x_max, lo, hi};
        draw_axes(out, f, k + 1 == panels.size() ? x_labels : std::vector<std::string>{});
        draw_series(out, f, panels[k], kPalette[k % std::size(kPalette)]);
        out << "<text x=\"" << num(kLeft + 6) << "\" y=\"" << num(f.top + 14)
            << "\" font-size=\"12\" font-weight=\"bold\">" << escape(panels[k].name) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace wavecast
