#include "netstab/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace netstab {

using nlohmann::json;

std::string format_sig9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string polygon_to_csv(const ConvexPolygon& poly) {
    std::string out = "x,y\n";
    for (const Point& p : poly.vertices()) {
        out += format_sig9(p.x);
        out += ',';
        out += format_sig9(p.y);
        out += '\n';
    }
    return out;
}

namespace {

json polygon_json(const ConvexPolygon& poly) {
    json verts = json::array();
    for (const Point& p : poly.vertices()) verts.push_back({p.x, p.y});
    return json{{"vertices", verts}};
}

json rates_json(const std::vector<RateVector>& rates) {
    json arr = json::array();
    for (const RateVector& r : rates) arr.push_back({r.r1, r.r2});
    return arr;
}

}  // namespace

std::string polygon_to_json(const ConvexPolygon& poly) {
    return polygon_json(poly).dump(2) + "\n";
}

std::string partition_report_json(NetworkKind kind, const std::vector<double>& budgets,
                                  const std::vector<PartitionCell>& cells,
                                  const ConvexPolygon& region) {
    json j;
    j["network"] = kind == NetworkKind::mac ? "mac" : "bc";
    j["budgets"] = budgets;
    json cell_arr = json::array();
    for (const PartitionCell& c : cells) {
        json jc;
        jc["rates"] = rates_json(c.rate_set);
        jc["probability"] = c.probability;
        jc["std_error"] = c.std_error;
        if (!c.rects.empty()) {
            json rects = json::array();
            for (const Rect& r : c.rects) {
                json jr = json::array();
                jr.push_back(r.x0);
                jr.push_back(std::isfinite(r.x1) ? json(r.x1) : json());
                jr.push_back(r.y0);
                jr.push_back(std::isfinite(r.y1) ? json(r.y1) : json());
                rects.push_back(jr);
            }
            jc["rects"] = rects;
        }
        cell_arr.push_back(jc);
    }
    j["cells"] = cell_arr;
    j["region"] = polygon_json(region);
    j["region_vertex_count"] = region.size();
    return j.dump(2) + "\n";
}

std::string sweep_report_json(NetworkKind kind, const std::vector<double>& budgets,
                              const SweepResult& sweep) {
    json j;
    j["network"] = kind == NetworkKind::mac ? "mac" : "bc";
    j["budgets"] = budgets;
    json pts = json::array();
    for (const SweepPoint& p : sweep.points) {
        json jp;
        jp["w"] = p.w;
        jp["kappa"] = kind == NetworkKind::mac
                          ? json::array({p.kappa.k1, p.kappa.k2})
                          : json::array({p.kappa.k1});
        jp["rate"] = {p.stats.r1, p.stats.r2};
        jp["rate_se"] = {p.stats.se_r1, p.stats.se_r2};
        if (kind == NetworkKind::mac) {
            jp["power"] = {p.stats.p1, p.stats.p2};
            jp["power_se"] = {p.stats.se_p1, p.stats.se_p2};
        } else {
            jp["power"] = {p.stats.p_total};
            jp["power_se"] = {p.stats.se_p_total};
        }
        pts.push_back(jp);
    }
    j["points"] = pts;
    j["region"] = polygon_json(sweep.region);
    j["region_vertex_count"] = sweep.region.size();
    j["refined_points"] = sweep.refined_points;
    j["max_boundary_gap"] = sweep.max_gap;
    return j.dump(2) + "\n";
}

std::string duality_report_json(const DualityResult& result,
                                const std::vector<std::string>& mac_region_files,
                                const std::string& bc_region_file,
                                const std::string& union_hull_file) {
    json j;
    j["kind"] = result.kind == ConstraintKind::peak ? "peak" : "average";
    json regions = json::array();
    for (std::size_t i = 0; i < result.mac_regions.size(); ++i) {
        regions.push_back({{"alpha", result.mac_regions[i].alpha},
                           {"file", i < mac_region_files.size() ? mac_region_files[i] : ""}});
    }
    j["mac_regions"] = regions;
    j["bc_region_file"] = bc_region_file;
    j["union_hull_file"] = union_hull_file;
    j["bc_contains_union"] = result.bc_contains_union;
    j["union_contains_bc"] = result.union_contains_bc;
    j["containment_tol"] = result.containment_tol;
    j["hausdorff"] = result.hausdorff;
    j["bc_max_sum_rate"] = result.bc_max_sum_rate;
    return j.dump(2) + "\n";
}

std::string onoff_report_json(const OnOffResult& result) {
    json j;
    j["R0"] = result.r0;
    j["budget"] = result.budget;
    j["bc_region"] = polygon_json(result.bc_region);
    j["mac_union_hull"] = polygon_json(result.mac_union_hull);
    j["strict"] = result.strict;
    j["bc_area"] = result.bc_area;
    j["mac_union_area"] = result.mac_union_area;
    return j.dump(2) + "\n";
}

std::string codebook_csv(const std::vector<CodebookRow>& rows) {
    std::string out = "N,R0_star,s_star,s_per_user,ci_half_width\n";
    for (const CodebookRow& r : rows) {
        out += std::to_string(r.n_users);
        out += ',';
        out += format_sig9(r.r0_star);
        out += ',';
        out += format_sig9(r.s_star);
        out += ',';
        out += format_sig9(r.s_per_user);
        out += ',';
        out += format_sig9(r.ci_half_width);
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace netstab
