#include "netstab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace netstab {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 24;
constexpr int kMarginBottom = 48;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr int kPaletteSize = 10;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Frame {
    double x_max = 1.0, y_max = 1.0;

    double px(double x) const {
        return kMarginLeft + x / x_max * (kWidth - kMarginLeft - kMarginRight);
    }
    double py(double y) const {
        return kHeight - kMarginBottom - y / y_max * (kHeight - kMarginTop - kMarginBottom);
    }
};

std::string header() {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                  "viewBox=\"0 0 %d %d\">\n<rect width=\"100%%\" height=\"100%%\" "
                  "fill=\"white\"/>\n",
                  kWidth, kHeight, kWidth, kHeight);
    return buf;
}

std::string axes(const Frame& f, const std::string& x_label, const std::string& y_label) {
    std::string s;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n"
                  "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
                  f.px(0), f.py(0), f.px(f.x_max), f.py(0), f.px(0), f.py(0), f.px(0),
                  f.py(f.y_max));
    s += buf;
    for (int i = 0; i <= 4; ++i) {  // ticks at quarters
        const double xv = f.x_max * i / 4.0;
        const double yv = f.y_max * i / 4.0;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%g\" y=\"%g\" font-size=\"11\" text-anchor=\"middle\">%s"
                      "</text>\n",
                      f.px(xv), f.py(0) + 16, fmt(xv).c_str());
        s += buf;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%g\" y=\"%g\" font-size=\"11\" text-anchor=\"end\">%s"
                      "</text>\n",
                      f.px(0) - 6, f.py(yv) + 4, fmt(yv).c_str());
        s += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%d\" font-size=\"13\" text-anchor=\"middle\">%s"
                  "</text>\n",
                  0.5 * (f.px(0) + f.px(f.x_max)), kHeight - 12, x_label.c_str());
    s += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"14\" y=\"%g\" font-size=\"13\" text-anchor=\"middle\" "
                  "transform=\"rotate(-90 14 %g)\">%s</text>\n",
                  0.5 * (f.py(0) + f.py(f.y_max)), 0.5 * (f.py(0) + f.py(f.y_max)),
                  y_label.c_str());
    s += buf;
    return s;
}

std::string legend_entry(int slot, const std::string& color, const std::string& label) {
    char buf[256];
    const int x = kWidth - kMarginRight - 170;
    const int y = kMarginTop + 8 + slot * 18;
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%d\" y=\"%d\" width=\"12\" height=\"12\" fill=\"%s\" "
                  "fill-opacity=\"0.6\"/><text x=\"%d\" y=\"%d\" font-size=\"12\">%s"
                  "</text>\n",
                  x, y - 10, color.c_str(), x + 16, y, label.c_str());
    return buf;
}

}  // namespace

std::string svg_regions(const std::vector<RegionSeries>& regions,
                        const std::string& x_label, const std::string& y_label) {
    Frame f;
    double mx = 0.0, my = 0.0;
    for (const RegionSeries& r : regions)
        for (const Point& p : r.polygon.vertices()) {
            mx = std::max(mx, p.x);
            my = std::max(my, p.y);
        }
    f.x_max = mx > 0 ? mx * 1.08 : 1.0;
    f.y_max = my > 0 ? my * 1.08 : 1.0;

    std::string s = header();
    s += axes(f, x_label, y_label);
    int idx = 0;
    for (const RegionSeries& r : regions) {
        const std::string color =
            r.color.empty() ? kPalette[idx % kPaletteSize] : r.color;
        std::string pts;
        for (const Point& p : r.polygon.vertices()) {
            pts += fmt(f.px(p.x)) + "," + fmt(f.py(p.y)) + " ";
        }
        s += "<polygon points=\"" + pts + "\" fill=\"" + color +
             "\" fill-opacity=\"0.18\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
        s += legend_entry(idx, color, r.label);
        ++idx;
    }
    s += "</svg>\n";
    return s;
}

std::string svg_mac_partition(const std::vector<PartitionCell>& cells, double chi_max) {
    Frame f;
    f.x_max = chi_max;
    f.y_max = chi_max;
    std::string s = header();
    int idx = 0;
    for (const PartitionCell& cell : cells) {
        const std::string color = kPalette[idx % kPaletteSize];
        for (const Rect& r : cell.rects) {
            const double x1 = std::isfinite(r.x1) ? std::min(r.x1, chi_max) : chi_max;
            const double y1 = std::isfinite(r.y1) ? std::min(r.y1, chi_max) : chi_max;
            if (r.x0 >= x1 || r.y0 >= y1) continue;
            char buf[200];
            std::snprintf(buf, sizeof(buf),
                          "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" "
                          "fill=\"%s\" fill-opacity=\"0.5\" stroke=\"%s\"/>\n",
                          f.px(r.x0), f.py(y1), f.px(x1) - f.px(r.x0),
                          f.py(r.y0) - f.py(y1), color.c_str(), color.c_str());
            s += buf;
        }
        char label[96];
        std::snprintf(label, sizeof(label), "cell %d (%zu rates, p=%.4f)", idx + 1,
                      cell.rate_set.size(), cell.probability);
        s += legend_entry(idx, color, label);
        ++idx;
    }
    s += axes(f, "chi1", "chi2");
    s += "</svg>\n";
    return s;
}

std::string svg_decision_map(const std::function<int(const ChannelFadePower&)>& classify,
                             const std::vector<std::string>& labels, double chi_max,
                             int resolution) {
    Frame f;
    f.x_max = chi_max;
    f.y_max = chi_max;
    std::string s = header();
    const double step = chi_max / resolution;
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
            const ChannelFadePower chi{(i + 0.5) * step, (j + 0.5) * step};
            const int c = classify(chi);
            if (c < 0) continue;
            char buf[180];
            std::snprintf(buf, sizeof(buf),
                          "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" "
                          "fill=\"%s\"/>\n",
                          f.px(i * step), f.py((j + 1) * step),
                          f.px(step) - f.px(0.0), f.py(0.0) - f.py(step),
                          kPalette[c % kPaletteSize]);
            s += buf;
        }
    }
    for (std::size_t c = 0; c < labels.size(); ++c)
        s += legend_entry(static_cast<int>(c), kPalette[c % kPaletteSize], labels[c]);
    s += axes(f, "chi1", "chi2");
    s += "</svg>\n";
    return s;
}

std::string svg_series(const std::vector<XySeries>& series, const std::string& x_label,
                       const std::string& y_label) {
    Frame f;
    double mx = 0.0, my = 0.0;
    for (const XySeries& ser : series)
        for (const Point& p : ser.points) {
            mx = std::max(mx, p.x);
            my = std::max(my, p.y);
        }
    f.x_max = mx > 0 ? mx * 1.08 : 1.0;
    f.y_max = my > 0 ? my * 1.08 : 1.0;

    std::string s = header();
    s += axes(f, x_label, y_label);
    int idx = 0;
    for (const XySeries& ser : series) {
        const std::string color = kPalette[idx % kPaletteSize];
        std::string pts;
        for (const Point& p : ser.points) pts += fmt(f.px(p.x)) + "," + fmt(f.py(p.y)) + " ";
        s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"1.5\"/>\n";
        for (const Point& p : ser.points) {
            char buf[120];
            std::snprintf(buf, sizeof(buf), "<circle cx=\"%g\" cy=\"%g\" r=\"3\" fill=\"%s\"/>\n",
                          f.px(p.x), f.py(p.y), color.c_str());
            s += buf;
        }
        s += legend_entry(idx, color, ser.label);
        ++idx;
    }
    s += "</svg>\n";
    return s;
}

}  // namespace netstab
