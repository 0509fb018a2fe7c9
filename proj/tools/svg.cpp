#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lorentz::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

struct Frame {
    double x0, x1, y0, y1;
    double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
    double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

void open_svg(std::ostringstream& os, const Frame& f, const std::string& title, const std::string& xlabel,
              const std::string& ylabel) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
       << "</text>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << num(f.py(f.y0)) << "\" x2=\"" << kWidth - kRight << "\" y2=\""
       << num(f.py(f.y0)) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << num(f.py(f.y0))
       << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double x = f.x0 + (f.x1 - f.x0) * i / 5.0;
        const double y = f.y0 + (f.y1 - f.y0) * i / 5.0;
        os << "<text x=\"" << num(f.px(x)) << "\" y=\"" << num(f.py(f.y0) + 16) << "\" text-anchor=\"middle\">"
           << num(x) << "</text>\n";
        os << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(f.py(y) + 4) << "\" text-anchor=\"end\">" << num(y)
           << "</text>\n";
    }
    os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">" << escape(xlabel)
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << kHeight / 2 << ")\">" << escape(ylabel) << "</text>\n";
}

}  // namespace

std::string histogram_svg(const std::vector<double>& values, int bins, double lo, double hi,
                          const std::vector<Guide>& guides, const std::string& title, const std::string& xlabel) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(bins, 1)), 0);
    for (double v : values) {
        const auto b = static_cast<long>(std::floor((v - lo) / (hi - lo) * bins));
        counts[static_cast<std::size_t>(std::clamp<long>(b, 0, bins - 1))] += 1;
    }
    const std::size_t top = std::max<std::size_t>(1, *std::max_element(counts.begin(), counts.end()));
    const Frame f{lo, hi, 0.0, static_cast<double>(top)};
    std::ostringstream os;
    open_svg(os, f, title, xlabel, "count");
    const double w = (hi - lo) / bins;
    for (int b = 0; b < bins; ++b) {
        const double x = lo + b * w;
        const auto c = static_cast<double>(counts[static_cast<std::size_t>(b)]);
        os << "<rect x=\"" << num(f.px(x)) << "\" y=\"" << num(f.py(c)) << "\" width=\""
           << num(f.px(x + w) - f.px(x)) << "\" height=\"" << num(f.py(0) - f.py(c))
           << "\" fill=\"#9ecae1\" stroke=\"#3182bd\" stroke-width=\"0.5\"/>\n";
    }
    for (std::size_t i = 0; i < guides.size(); ++i) {
        const double x = f.px(guides[i].value);
        os << "<line x1=\"" << num(x) << "\" y1=\"" << kTop << "\" x2=\"" << num(x) << "\" y2=\"" << num(f.py(0))
           << "\" stroke=\"" << kColors[(i + 1) % 5] << "\" stroke-dasharray=\"5,3\"/>\n";
        os << "<text x=\"" << num(x + 4) << "\" y=\"" << kTop + 14 * (i + 1) << "\" fill=\"" << kColors[(i + 1) % 5]
           << "\">" << escape(guides[i].label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string line_chart_svg(const std::vector<Series>& series, double band_lo, double band_hi, const std::string& title,
                           const std::string& xlabel, const std::string& ylabel) {
    double x0 = 1e300, x1 = -1e300, y0 = std::min(0.0, band_lo), y1 = band_hi;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (!(x0 < x1)) {
        x0 = std::isfinite(x0) ? x0 - 1.0 : 0.0;
        x1 = x0 + 2.0;
    }
    y1 *= 1.1;
    const Frame f{x0, x1, y0, y1};
    std::ostringstream os;
    open_svg(os, f, title, xlabel, ylabel);
    os << "<rect x=\"" << kLeft << "\" y=\"" << num(f.py(band_hi)) << "\" width=\"" << kWidth - kLeft - kRight
       << "\" height=\"" << num(f.py(band_lo) - f.py(band_hi)) << "\" fill=\"#fee8c8\" opacity=\"0.7\"/>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kColors[i % 5];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : series[i].points) os << num(f.px(x)) << ',' << num(f.py(y)) << ' ';
        os << "\"/>\n";
        for (const auto& [x, y] : series[i].points) {
            os << "<circle cx=\"" << num(f.px(x)) << "\" cy=\"" << num(f.py(y)) << "\" r=\"3\" fill=\"" << color
               << "\"/>\n";
        }
        os << "<text x=\"" << kWidth - kRight - 4 << "\" y=\"" << kTop + 14 * (i + 1)
           << "\" text-anchor=\"end\" fill=\"" << color << "\">" << escape(series[i].label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace lorentz::cli
