#pragma once

// Minimal self-contained SVG line charts (time on x, fraction on y, one
// polyline per curve, inline legend). No external assets or scripts.

#include <span>
#include <string>
#include <vector>

namespace cascade {

struct SvgCurve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

std::string render_svg_chart(std::span<const SvgCurve> curves,
                             const std::string& title);

void write_svg_chart(std::span<const SvgCurve> curves, const std::string& title,
                     const std::string& path);

} // namespace cascade
