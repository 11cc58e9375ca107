#include "ztk/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ztk/sim/trajectory.hpp"  // format_g9

namespace ztk {

namespace {

constexpr int kW = 960, kH = 440;
constexpr int kML = 64, kMR = 160, kMT = 40, kMB = 48;  // margins
constexpr int kMaxPts = 2000;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
    double lo = 0.0, hi = 1.0;
};

Range span(const std::vector<const std::vector<double>*>& cols) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto* c : cols)
        for (double v : *c)
            if (std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
    if (!(lo <= hi)) return {0.0, 1.0};
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    return {lo, hi};
}

std::string fmt_tick(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label,
                    const std::vector<SvgSeries>& series) {
    for (const auto& s : series) {
        if (!s.x || !s.y) throw ConfigError("svg: series without data");
        if (s.x->size() != s.y->size())
            throw ConfigError("svg: series '" + s.label + "' has mismatched lengths");
    }

    std::vector<const std::vector<double>*> xs, ys;
    for (const auto& s : series) {
        xs.push_back(s.x);
        ys.push_back(s.y);
    }
    const Range rx = span(xs), ry = span(ys);

    const double pw = kW - kML - kMR, ph = kH - kMT - kMB;
    auto X = [&](double v) { return kML + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto Y = [&](double v) { return kMT + ph - (v - ry.lo) / (ry.hi - ry.lo) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\""
       << kH << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    os << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"15\">"
       << esc(title) << "</text>\n";

    // frame and ticks
    os << "<rect x=\"" << kML << "\" y=\"" << kMT << "\" width=\"" << pw
       << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#444\"/>\n";
    const int nt = 5;
    for (int i = 0; i <= nt; ++i) {
        const double fx = rx.lo + (rx.hi - rx.lo) * i / nt;
        const double fy = ry.lo + (ry.hi - ry.lo) * i / nt;
        os << "<line x1=\"" << X(fx) << "\" y1=\"" << kMT + ph << "\" x2=\"" << X(fx)
           << "\" y2=\"" << kMT + ph + 5 << "\" stroke=\"#444\"/>\n";
        os << "<text x=\"" << X(fx) << "\" y=\"" << kMT + ph + 20
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt_tick(fx) << "</text>\n";
        os << "<line x1=\"" << kML - 5 << "\" y1=\"" << Y(fy) << "\" x2=\"" << kML
           << "\" y2=\"" << Y(fy) << "\" stroke=\"#444\"/>\n";
        os << "<text x=\"" << kML - 8 << "\" y=\"" << Y(fy) + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt_tick(fy) << "</text>\n";
    }
    os << "<text x=\"" << kML + pw / 2 << "\" y=\"" << kH - 10
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
       << esc(x_label) << "</text>\n";

    for (size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        const size_t n = s.x->size();
        if (n == 0) continue;
        const size_t stride = std::max<size_t>(1, n / kMaxPts);
        if (n == 1) {
            os << "<circle cx=\"" << X((*s.x)[0]) << "\" cy=\"" << Y((*s.y)[0])
               << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        } else {
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.3\"";
            if (s.dashed) os << " stroke-dasharray=\"6 4\"";
            os << " points=\"";
            for (size_t k = 0; k < n; k += stride)
                os << format_g9(X((*s.x)[k])) << "," << format_g9(Y((*s.y)[k])) << " ";
            // always include the final sample
            os << format_g9(X((*s.x)[n - 1])) << "," << format_g9(Y((*s.y)[n - 1]));
            os << "\"/>\n";
        }
        const double ly = kMT + 16 + 18 * static_cast<double>(si);
        os << "<line x1=\"" << kW - kMR + 10 << "\" y1=\"" << ly << "\" x2=\""
           << kW - kMR + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"";
        if (s.dashed) os << " stroke-dasharray=\"6 4\"";
        os << "/>\n";
        os << "<text x=\"" << kW - kMR + 40 << "\" y=\"" << ly + 4
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << esc(s.label)
           << "</text>\n";
    }
    os << "</svg>\n";

    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path);
    f << os.str();
    if (!f) throw IoError("failed while writing " + path);
}

}  // namespace ztk
