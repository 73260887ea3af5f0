#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace kuramoto {

struct SvgSeries {
    std::string label;
    std::string color = "#1f4fd8";
    bool dashed = false;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgPanel {
    std::string title;
    std::vector<SvgSeries> series;
};

/// Static line chart: one row of panels, shared styling, numeric axis ticks.
void write_svg_chart(const std::filesystem::path& path, const std::string& title,
                     const std::vector<SvgPanel>& panels);

} // namespace kuramoto
