#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace parastab {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;  ///< NaN entries break the polyline
};

struct SvgChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
    int width = 640;
    int height = 480;
};

/// Single-panel line chart: axes, ticks, one polyline per series, legend.
void write_svg_chart(std::ostream& os, const SvgChart& chart);

}  // namespace parastab
