#include "cascade/svg.hpp"

#include "cascade/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace cascade {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 500;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 30;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

} // namespace

std::string render_svg_chart(std::span<const SvgCurve> curves,
                             const std::string& title) {
    if (curves.empty())
        throw ValidationError("svg chart: no curves");
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 0.0;
    bool first = true;
    for (const auto& curve : curves) {
        if (curve.x.size() != curve.y.size() || curve.x.empty())
            throw ValidationError("svg chart: curve '" + curve.label +
                                  "' has mismatched or empty data");
        for (std::size_t j = 0; j < curve.x.size(); ++j) {
            if (first) {
                x_min = x_max = curve.x[j];
                y_min = y_max = curve.y[j];
                first = false;
            }
            x_min = std::min(x_min, curve.x[j]);
            x_max = std::max(x_max, curve.x[j]);
            y_min = std::min(y_min, curve.y[j]);
            y_max = std::max(y_max, curve.y[j]);
        }
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return kMarginTop + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
           "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
           std::to_string(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + std::to_string(kWidth / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" + xml_escape(title) + "</text>\n";

    // Axes with 5 ticks per side.
    out += "<g stroke=\"#333\" stroke-width=\"1\" font-family=\"sans-serif\" "
           "font-size=\"11\">\n";
    out += "<line x1=\"" + fmt(kMarginLeft) + "\" y1=\"" + fmt(kMarginTop) +
           "\" x2=\"" + fmt(kMarginLeft) + "\" y2=\"" +
           fmt(kHeight - kMarginBottom) + "\"/>\n";
    out += "<line x1=\"" + fmt(kMarginLeft) + "\" y1=\"" +
           fmt(kHeight - kMarginBottom) + "\" x2=\"" + fmt(kWidth - kMarginRight) +
           "\" y2=\"" + fmt(kHeight - kMarginBottom) + "\"/>\n";
    for (int tick = 0; tick <= 5; ++tick) {
        const double fx = x_min + (x_max - x_min) * tick / 5.0;
        const double fy = y_min + (y_max - y_min) * tick / 5.0;
        out += "<line x1=\"" + fmt(px(fx)) + "\" y1=\"" + fmt(kHeight - kMarginBottom) +
               "\" x2=\"" + fmt(px(fx)) + "\" y2=\"" +
               fmt(kHeight - kMarginBottom + 5) + "\"/>\n";
        out += "<text x=\"" + fmt(px(fx)) + "\" y=\"" +
               fmt(kHeight - kMarginBottom + 18) +
               "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#333\">" +
               fmt(fx) + "</text>\n";
        out += "<line x1=\"" + fmt(kMarginLeft - 5) + "\" y1=\"" + fmt(py(fy)) +
               "\" x2=\"" + fmt(kMarginLeft) + "\" y2=\"" + fmt(py(fy)) + "\"/>\n";
        out += "<text x=\"" + fmt(kMarginLeft - 8) + "\" y=\"" + fmt(py(fy) + 4) +
               "\" text-anchor=\"end\" stroke=\"none\" fill=\"#333\">" + fmt(fy) +
               "</text>\n";
    }
    out += "</g>\n";

    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const auto& curve = curves[ci];
        const char* color = kPalette[ci % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out += "<polyline fill=\"none\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t j = 0; j < curve.x.size(); ++j) {
            if (j > 0) out += ' ';
            out += fmt(px(curve.x[j])) + "," + fmt(py(curve.y[j]));
        }
        out += "\"/>\n";
        // Legend entry.
        const double ly = kMarginTop + 16.0 * static_cast<double>(ci);
        out += "<line x1=\"" + fmt(kWidth - kMarginRight - 150) + "\" y1=\"" +
               fmt(ly) + "\" x2=\"" + fmt(kWidth - kMarginRight - 125) + "\" y2=\"" +
               fmt(ly) + "\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + fmt(kWidth - kMarginRight - 118) + "\" y=\"" +
               fmt(ly + 4) + "\" font-family=\"sans-serif\" font-size=\"12\">" +
               xml_escape(curve.label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

void write_svg_chart(std::span<const SvgCurve> curves, const std::string& title,
                     const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw ValidationError("svg chart: cannot open " + path);
    os << render_svg_chart(curves, title);
    if (!os)
        throw ValidationError("svg chart: write failed");
}

} // namespace cascade
