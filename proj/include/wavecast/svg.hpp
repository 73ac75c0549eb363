#pragma once

#include <string>
#include <vector>

namespace wavecast {

struct PlotSeries {
    std::string name;
    std::vector<double> values;
    /// x offset of values[0] on the shared axis
    std::size_t offset = 0;
};

/// All series on one set of axes, with a legend.
std::string line_chart_svg(const std::string& title, const std::vector<PlotSeries>& series,
                           const std::vector<std::string>& x_labels = {});

/// One panel per series, stacked vertically with independent y ranges.
std::string stacked_chart_svg(const std::string& title, const std::vector<PlotSeries>& panels,
                              const std::vector<std::string>& x_labels = {});

}  // namespace wavecast
