#pragma once
#include <string>
#include <vector>

#include "ztk/sim/errors.hpp"

namespace ztk {

// Minimal dependency-free line plots. Series are polylines over a shared
// numeric x-axis; long series are stride-decimated to keep files small.
// Single-point series render as markers.
struct SvgSeries {
    std::string label;
    const std::vector<double>* x = nullptr;
    const std::vector<double>* y = nullptr;
    bool dashed = false;
};

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label,
                    const std::vector<SvgSeries>& series);

}  // namespace ztk
