// Self-contained SVG plots: overlaid region polygons, the axis-aligned
// MAC-peak partition map, sampled decision maps for the priced schedulers,
// and simple x-y series charts.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "netstab/geometry.hpp"
#include "netstab/peak.hpp"

namespace netstab {

struct RegionSeries {
    std::string label;
    ConvexPolygon polygon;
    std::string color;  // css color; empty picks from a default palette
};

std::string svg_regions(const std::vector<RegionSeries>& regions,
                        const std::string& x_label, const std::string& y_label);

// Fade-space map of the analytic MAC cells (rectangles colored per cell).
std::string svg_mac_partition(const std::vector<PartitionCell>& cells, double chi_max);

// Grid-sampled classification map; `classify` returns a small label index per
// fade state, `labels` names them for the legend.
std::string svg_decision_map(const std::function<int(const ChannelFadePower&)>& classify,
                             const std::vector<std::string>& labels, double chi_max,
                             int resolution);

struct XySeries {
    std::string label;
    std::vector<Point> points;
};

std::string svg_series(const std::vector<XySeries>& series, const std::string& x_label,
                       const std::string& y_label);

}  // namespace netstab
