// Plot-ready artifact emission: region CSV/JSON, partition / sweep / duality
// reports. Output depends only on the inputs, so reruns are byte-identical.
#pragma once

#include <string>
#include <vector>

#include "netstab/avgpower.hpp"
#include "netstab/duality.hpp"
#include "netstab/geometry.hpp"
#include "netstab/peak.hpp"

namespace netstab {

// Number formatting shared by every CSV artifact: 9 significant digits.
std::string format_sig9(double v);

std::string polygon_to_csv(const ConvexPolygon& poly);
std::string polygon_to_json(const ConvexPolygon& poly);

std::string partition_report_json(NetworkKind kind, const std::vector<double>& budgets,
                                  const std::vector<PartitionCell>& cells,
                                  const ConvexPolygon& region);

std::string sweep_report_json(NetworkKind kind, const std::vector<double>& budgets,
                              const SweepResult& sweep);

// Per-alpha region CSVs are written separately; the report references them.
std::string duality_report_json(const DualityResult& result,
                                const std::vector<std::string>& mac_region_files,
                                const std::string& bc_region_file,
                                const std::string& union_hull_file);

std::string onoff_report_json(const OnOffResult& result);

struct CodebookRow {
    int n_users = 0;
    double r0_star = 0.0;
    double s_star = 0.0;
    double s_per_user = 0.0;
    double ci_half_width = 0.0;  // 1.96 sigma
};

std::string codebook_csv(const std::vector<CodebookRow>& rows);

void write_file(const std::string& path, const std::string& content);

}  // namespace netstab
