#include "kuramoto/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "kuramoto/errors.hpp"

namespace kuramoto {

namespace {

constexpr double kPanelW = 460.0;
constexpr double kPanelH = 320.0;
constexpr double kMarginL = 58.0;
constexpr double kMarginR = 14.0;
constexpr double kMarginT = 34.0;
constexpr double kMarginB = 38.0;
constexpr double kTitleH = 28.0;

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void grow(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    void pad() {
        if (!(lo < hi)) {  // flat or empty series
            lo -= 1.0;
            hi += 1.0;
        }
        const double margin = 0.04 * (hi - lo);
        lo -= margin;
        hi += margin;
    }
};

} // namespace

void write_svg_chart(const std::filesystem::path& path, const std::string& title,
                     const std::vector<SvgPanel>& panels) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write plot file '" + path.string() + "'");

    const double width = kPanelW * static_cast<double>(panels.size());
    const double height = kPanelH + kTitleH;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
        << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(width / 2) << "\" y=\"19\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\" font-weight=\"bold\">" << title
        << "</text>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const SvgPanel& panel = panels[p];
        const double ox = kPanelW * static_cast<double>(p) + kMarginL;
        const double oy = kTitleH + kMarginT;
        const double plot_w = kPanelW - kMarginL - kMarginR;
        const double plot_h = kPanelH - kMarginT - kMarginB;

        Range xr, yr;
        for (const auto& s : panel.series) {
            for (double v : s.x) xr.grow(v);
            for (double v : s.y) yr.grow(v);
        }
        xr.pad();
        yr.pad();
        const auto X = [&](double v) { return ox + (v - xr.lo) / (xr.hi - xr.lo) * plot_w; };
        const auto Y = [&](double v) { return oy + plot_h - (v - yr.lo) / (yr.hi - yr.lo) * plot_h; };

        out << "<text x=\"" << num(ox + plot_w / 2) << "\" y=\"" << num(oy - 12)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
            << panel.title << "</text>\n";
        out << "<rect x=\"" << num(ox) << "\" y=\"" << num(oy) << "\" width=\"" << num(plot_w)
            << "\" height=\"" << num(plot_h)
            << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";

        constexpr int kTicks = 5;
        for (int k = 0; k <= kTicks; ++k) {
            const double fx = xr.lo + (xr.hi - xr.lo) * k / kTicks;
            const double fy = yr.lo + (yr.hi - yr.lo) * k / kTicks;
            const double px = X(fx);
            const double py = Y(fy);
            out << "<line x1=\"" << num(px) << "\" y1=\"" << num(oy + plot_h) << "\" x2=\""
                << num(px) << "\" y2=\"" << num(oy + plot_h + 4)
                << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
            out << "<text x=\"" << num(px) << "\" y=\"" << num(oy + plot_h + 16)
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">";
            char lbl[32];
            std::snprintf(lbl, sizeof lbl, "%.4g", fx);
            out << lbl << "</text>\n";
            out << "<line x1=\"" << num(ox - 4) << "\" y1=\"" << num(py) << "\" x2=\"" << num(ox)
                << "\" y2=\"" << num(py) << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
            std::snprintf(lbl, sizeof lbl, "%.4g", fy);
            out << "<text x=\"" << num(ox - 7) << "\" y=\"" << num(py + 3)
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << lbl
                << "</text>\n";
        }
        out << "<text x=\"" << num(ox + plot_w / 2) << "\" y=\"" << num(oy + plot_h + 30)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">t [s]"
            << "</text>\n";

        for (const auto& s : panel.series) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\"";
            if (s.dashed) out << " stroke-dasharray=\"6,4\"";
            out << " points=\"";
            const std::size_t count = std::min(s.x.size(), s.y.size());
            for (std::size_t i = 0; i < count; ++i) {
                if (i) out << ' ';
                out << num(X(s.x[i])) << ',' << num(Y(s.y[i]));
            }
            out << "\"/>\n";
        }

        double legend_y = oy + 14;
        for (const auto& s : panel.series) {
            out << "<line x1=\"" << num(ox + 8) << "\" y1=\"" << num(legend_y - 4) << "\" x2=\""
                << num(ox + 30) << "\" y2=\"" << num(legend_y - 4) << "\" stroke=\"" << s.color
                << "\" stroke-width=\"1.6\"";
            if (s.dashed) out << " stroke-dasharray=\"6,4\"";
            out << "/>\n";
            out << "<text x=\"" << num(ox + 35) << "\" y=\"" << num(legend_y)
                << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
            legend_y += 14;
        }
    }
    out << "</svg>\n";
}

} // namespace kuramoto
