#pragma once
// Minimal SVG plots: a histogram with vertical guide lines and a line chart
// with a shaded horizontal band.

#include <string>
#include <utility>
#include <vector>

namespace lorentz::cli {

struct Guide {
    double value{0.0};
    std::string label;
};

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

std::string histogram_svg(const std::vector<double>& values, int bins, double lo, double hi,
                          const std::vector<Guide>& guides, const std::string& title, const std::string& xlabel);

std::string line_chart_svg(const std::vector<Series>& series, double band_lo, double band_hi, const std::string& title,
                           const std::string& xlabel, const std::string& ylabel);

}  // namespace lorentz::cli
