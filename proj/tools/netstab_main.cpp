// Command-line front end: one subcommand per solver, JSON config plus flag
// overrides, plot-ready CSV/JSON artifacts and optional SVG plots. Outputs
// are a pure function of (config, seed), so reruns are byte-identical.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "netstab/avgpower.hpp"
#include "netstab/codebook.hpp"
#include "netstab/duality.hpp"
#include "netstab/peak.hpp"
#include "netstab/report.hpp"
#include "netstab/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace netstab;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct RunConfig {
    std::vector<double> rates1{0.0, 1.0};
    std::vector<double> rates2{0.0, 1.0};
    std::vector<double> budgets{1.0, 1.0};  // mac: per user; bc: first entry
    std::vector<double> channel_mean{1.0, 1.0};
    std::uint64_t samples = 1'000'000;
    bool samples_explicit = false;  // sweeps default to 1e5/point unless set
    std::uint64_t seed = 1;
    int w_points = 101;
    int alpha_points = 21;
    double tolerance = 0.01;
    std::string out = "out";
    bool svg = false;
    // duality
    std::string kind = "peak";
    double total_budget = 2.0;
    bool bc_quadrature = false;  // deterministic BC cells instead of MC
    // onoff
    double r0 = 1.0;
    // codebook
    int n_users_max = 8;
    double codebook_budget = 1.0;
    double r0_min = 0.05;
    double r0_max = 4.0;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void load_json_into(RunConfig& cfg, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    try {
        if (j.contains("rates1")) cfg.rates1 = j["rates1"].get<std::vector<double>>();
        if (j.contains("rates2")) cfg.rates2 = j["rates2"].get<std::vector<double>>();
        if (j.contains("budgets")) cfg.budgets = j["budgets"].get<std::vector<double>>();
        if (j.contains("channel_mean"))
            cfg.channel_mean = j["channel_mean"].get<std::vector<double>>();
        if (j.contains("samples")) {
            cfg.samples = j["samples"].get<std::uint64_t>();
            cfg.samples_explicit = true;
        }
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("w_points")) cfg.w_points = j["w_points"].get<int>();
        if (j.contains("alpha_points")) cfg.alpha_points = j["alpha_points"].get<int>();
        if (j.contains("tolerance")) cfg.tolerance = j["tolerance"].get<double>();
        if (j.contains("out")) cfg.out = j["out"].get<std::string>();
        if (j.contains("svg")) cfg.svg = j["svg"].get<bool>();
        if (j.contains("kind")) cfg.kind = j["kind"].get<std::string>();
        if (j.contains("total_budget")) cfg.total_budget = j["total_budget"].get<double>();
        if (j.contains("bc_quadrature")) cfg.bc_quadrature = j["bc_quadrature"].get<bool>();
        if (j.contains("R0")) cfg.r0 = j["R0"].get<double>();
        if (j.contains("n_users_max")) cfg.n_users_max = j["n_users_max"].get<int>();
        if (j.contains("codebook_budget"))
            cfg.codebook_budget = j["codebook_budget"].get<double>();
        if (j.contains("r0_min")) cfg.r0_min = j["r0_min"].get<double>();
        if (j.contains("r0_max")) cfg.r0_max = j["r0_max"].get<double>();
    } catch (const json::exception& e) {
        throw ConfigError("bad config field: " + std::string(e.what()));
    }
}

void validate_common(const RunConfig& cfg) {
    if (cfg.samples < 10'000) throw ConfigError("samples must be at least 10000");
    if (cfg.w_points < 11) throw ConfigError("w_points must be at least 11");
    if (cfg.alpha_points < 11) throw ConfigError("alpha_points must be at least 11");
    if (!(cfg.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
    if (cfg.channel_mean.size() != 2 || !(cfg.channel_mean[0] > 0.0) ||
        !(cfg.channel_mean[1] > 0.0))
        throw ConfigError("channel_mean needs two positive entries");
    for (double b : cfg.budgets)
        if (b < 0.0) throw ConfigError("budgets must be nonnegative");
}

RateSet make_rates(const std::vector<double>& v, const char* which) {
    try {
        return RateSet(v);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(which) + ": " + e.what());
    }
}

fs::path ensure_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory: " + cfg.out);
    return dir;
}

void emit(const fs::path& path, const std::string& content) {
    write_file(path.string(), content);
    std::printf("wrote %s\n", path.string().c_str());
}

std::string rate_key(const RateVector& r) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(%g,%g)", r.r1, r.r2);
    return buf;
}

// Stable label index per distinct scheduler decision, for the decision maps.
std::pair<std::function<int(const ChannelFadePower&)>, std::vector<std::string>>
label_map(const std::function<std::string(const ChannelFadePower&)>& classify,
          double chi_max, int resolution) {
    auto keys = std::make_shared<std::map<std::string, int>>();
    auto labels = std::make_shared<std::vector<std::string>>();
    const double step = chi_max / resolution;
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
            const std::string key =
                classify(ChannelFadePower{(i + 0.5) * step, (j + 0.5) * step});
            if (!keys->count(key)) {
                (*keys)[key] = static_cast<int>(labels->size());
                labels->push_back(key);
            }
        }
    }
    auto fn = [keys, classify](const ChannelFadePower& chi) {
        return keys->at(classify(chi));
    };
    return {fn, *labels};
}

int run_mac_peak(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.budgets.size() != 2) throw ConfigError("mac-peak needs two budgets");
    const RateSet r1 = make_rates(cfg.rates1, "rates1");
    const RateSet r2 = make_rates(cfg.rates2, "rates2");
    const ChannelModel model(cfg.channel_mean[0], cfg.channel_mean[1]);
    const PowerAllocation budgets{cfg.budgets[0], cfg.budgets[1]};

    const auto cells = mac_partition(r1, r2, budgets, model);
    const ConvexPolygon region = stability_region_peak(cells);

    const fs::path dir = ensure_out_dir(cfg);
    emit(dir / "partition.json",
         partition_report_json(NetworkKind::mac, cfg.budgets, cells, region));
    emit(dir / "region.csv", polygon_to_csv(region));
    emit(dir / "region.json", polygon_to_json(region));
    if (cfg.svg) {
        double chi_max = 0.0;
        for (const auto& c : cells)
            for (const Rect& rc : c.rects) {
                if (std::isfinite(rc.x1)) chi_max = std::max(chi_max, rc.x1);
                if (std::isfinite(rc.y1)) chi_max = std::max(chi_max, rc.y1);
            }
        chi_max = chi_max > 0 ? 1.5 * chi_max : 1.0;
        emit(dir / "partition.svg", svg_mac_partition(cells, chi_max));
        emit(dir / "region.svg",
             svg_regions({{"mac peak region", region, ""}}, "R1 (bits/slot)",
                         "R2 (bits/slot)"));
    }
    return 0;
}

int run_bc_peak(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.budgets.empty()) throw ConfigError("bc-peak needs one budget");
    const double budget = cfg.budgets[0];
    const RateSet r1 = make_rates(cfg.rates1, "rates1");
    const RateSet r2 = make_rates(cfg.rates2, "rates2");
    const ChannelModel model(cfg.channel_mean[0], cfg.channel_mean[1]);

    const auto cells =
        bc_partition_mc(r1, r2, budget, model, {cfg.samples, cfg.seed, true});
    const ConvexPolygon region = stability_region_peak(cells);

    const fs::path dir = ensure_out_dir(cfg);
    emit(dir / "partition.json",
         partition_report_json(NetworkKind::bc, {budget}, cells, region));
    emit(dir / "region.csv", polygon_to_csv(region));
    emit(dir / "region.json", polygon_to_json(region));
    if (cfg.svg) {
        const double chi_max =
            4.0 * required_snr(std::max(r1.max_rate(), r2.max_rate())) /
            std::max(budget, 1e-6);
        auto classify = [&](const ChannelFadePower& chi) {
            std::string key;
            for (const RateVector& rv : bc_supported_set(chi, budget, r1, r2))
                key += rate_key(rv);
            return key;
        };
        auto [fn, labels] = label_map(classify, chi_max, 160);
        emit(dir / "partition.svg", svg_decision_map(fn, labels, chi_max, 160));
        emit(dir / "region.svg",
             svg_regions({{"bc peak region", region, ""}}, "R1 (bits/slot)",
                         "R2 (bits/slot)"));
    }
    return 0;
}

int run_avg(const RunConfig& cfg, NetworkKind kind) {
    validate_common(cfg);
    const RateSet r1 = make_rates(cfg.rates1, "rates1");
    const RateSet r2 = make_rates(cfg.rates2, "rates2");
    const ChannelModel model(cfg.channel_mean[0], cfg.channel_mean[1]);

    SweepOptions opt;
    opt.w_points = cfg.w_points;
    const std::uint64_t sweep_samples =
        cfg.samples_explicit ? cfg.samples : std::min<std::uint64_t>(cfg.samples, 100'000);
    opt.mc = {sweep_samples, cfg.seed, true};
    opt.rel_tol = cfg.tolerance;

    SweepResult sweep;
    std::vector<double> budgets;
    if (kind == NetworkKind::mac) {
        if (cfg.budgets.size() != 2) throw ConfigError("mac-avg needs two budgets");
        budgets = cfg.budgets;
        sweep = mac_boundary_sweep({budgets[0], budgets[1]}, r1, r2, model, opt);
    } else {
        if (cfg.budgets.empty()) throw ConfigError("bc-avg needs one budget");
        budgets = {cfg.budgets[0]};
        if (!(budgets[0] > 0.0)) throw ConfigError("bc-avg budget must be positive");
        sweep = bc_boundary_sweep(budgets[0], r1, r2, model, opt);
    }

    const fs::path dir = ensure_out_dir(cfg);
    emit(dir / "sweep.json", sweep_report_json(kind, budgets, sweep));
    emit(dir / "region.csv", polygon_to_csv(sweep.region));
    emit(dir / "region.json", polygon_to_json(sweep.region));
    if (cfg.svg) {
        const char* name = kind == NetworkKind::mac ? "mac avg region" : "bc avg region";
        emit(dir / "region.svg",
             svg_regions({{name, sweep.region, ""}}, "R1 (bits/slot)", "R2 (bits/slot)"));
        // Decision map at the mid-sweep multipliers (cell boundaries are
        // linear in the reciprocal fade powers).
        const SweepPoint mid = sweep.points[sweep.points.size() / 2];
        const double chi_max = 4.0 * required_snr(std::max(r1.max_rate(), r2.max_rate()));
        auto classify = [&, mid](const ChannelFadePower& chi) {
            if (kind == NetworkKind::mac) {
                const MacChoice c = mac_choice(mid.w, mid.kappa, chi, r1, r2);
                std::string key = rate_key(c.rate);
                if (c.rate.r1 > 0 && c.rate.r2 > 0)
                    key += c.order == DecodeOrder::user1_first ? " 1st:u1" : " 1st:u2";
                return key;
            }
            return rate_key(bc_choice(mid.w, mid.kappa.k1, chi, r1, r2).rate);
        };
        auto [fn, labels] = label_map(classify, chi_max, 160);
        emit(dir / "decision_map.svg", svg_decision_map(fn, labels, chi_max, 160));
    }
    return 0;
}

int run_duality(const RunConfig& cfg) {
    validate_common(cfg);
    if (!(cfg.total_budget > 0.0)) throw ConfigError("total_budget must be positive");
    ConstraintKind kind;
    if (cfg.kind == "peak") {
        kind = ConstraintKind::peak;
    } else if (cfg.kind == "average") {
        kind = ConstraintKind::average;
    } else {
        throw ConfigError("kind must be 'peak' or 'average'");
    }
    const RateSet rates = make_rates(cfg.rates1, "rates1");
    const ChannelModel model(cfg.channel_mean[0], cfg.channel_mean[1]);

    DualFamilySpec spec;
    spec.total_budget = cfg.total_budget;
    spec.kind = kind;
    spec.alpha_points = cfg.alpha_points;

    DualityOptions opt;
    opt.bc_quadrature = cfg.bc_quadrature;
    opt.bc_samples = cfg.samples;
    opt.sweep_samples =
        cfg.samples_explicit ? cfg.samples : std::min<std::uint64_t>(cfg.samples, 100'000);
    opt.mac_w_points = std::min(cfg.w_points, 21);
    opt.bc_w_points = std::min(cfg.w_points, 41);
    opt.rel_tol = cfg.tolerance;
    opt.seed = cfg.seed;

    const DualityResult res = union_dual_mac_regions(spec, rates, model, opt);

    const fs::path dir = ensure_out_dir(cfg);
    std::vector<std::string> files;
    for (std::size_t i = 0; i < res.mac_regions.size(); ++i) {
        char name[48];
        std::snprintf(name, sizeof(name), "mac_alpha_%02zu.csv", i);
        files.push_back(name);
        emit(dir / name, polygon_to_csv(res.mac_regions[i].region));
    }
    emit(dir / "bc_region.csv", polygon_to_csv(res.bc_region));
    emit(dir / "union_hull.csv", polygon_to_csv(res.union_hull));
    emit(dir / "duality.json",
         duality_report_json(res, files, "bc_region.csv", "union_hull.csv"));
    if (cfg.svg) {
        std::vector<RegionSeries> series{{"bc region", res.bc_region, "#d62728"},
                                         {"union of dual MACs", res.union_hull, "#1f77b4"}};
        for (std::size_t i = 0; i < res.mac_regions.size(); i += 4) {
            char label[32];
            std::snprintf(label, sizeof(label), "mac alpha=%.2f",
                          res.mac_regions[i].alpha);
            series.push_back({label, res.mac_regions[i].region, "#7f7f7f"});
        }
        emit(dir / "duality.svg", svg_regions(series, "R1 (bits/slot)", "R2 (bits/slot)"));
    }
    return 0;
}

int run_onoff(const RunConfig& cfg) {
    validate_common(cfg);
    if (!(cfg.r0 > 0.0)) throw ConfigError("R0 must be positive");
    const OnOffResult res = onoff_case(cfg.r0, cfg.total_budget, cfg.alpha_points);
    const fs::path dir = ensure_out_dir(cfg);
    emit(dir / "onoff.json", onoff_report_json(res));
    emit(dir / "bc_region.csv", polygon_to_csv(res.bc_region));
    emit(dir / "mac_union.csv", polygon_to_csv(res.mac_union_hull));
    if (cfg.svg) {
        emit(dir / "onoff.svg",
             svg_regions({{"bc region", res.bc_region, "#d62728"},
                          {"union of dual MACs", res.mac_union_hull, "#1f77b4"}},
                         "R1 (bits/slot)", "R2 (bits/slot)"));
    }
    return 0;
}

int run_codebook(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.n_users_max < 1 || cfg.n_users_max > 64)
        throw ConfigError("n_users_max must be in 1..64");
    if (!(cfg.codebook_budget > 0.0)) throw ConfigError("codebook_budget must be positive");

    OptimizeOptions opt;
    opt.mc = {cfg.samples, cfg.seed, true};
    opt.r0_min = cfg.r0_min;
    opt.r0_max = cfg.r0_max;

    std::vector<CodebookRow> rows;
    for (int n = 1; n <= cfg.n_users_max; ++n) {
        const CodebookOptimum best =
            optimize_r0(n, cfg.codebook_budget, cfg.channel_mean[0], opt);
        rows.push_back(
            {n, best.r0_star, best.s_star, best.s_star / n, 1.96 * best.s_std_error});
    }

    const fs::path dir = ensure_out_dir(cfg);
    emit(dir / "codebook.csv", codebook_csv(rows));
    if (cfg.svg) {
        XySeries r0_curve{"R0* (bits/slot)", {}};
        XySeries s_curve{"max stable sum rate", {}};
        XySeries per_user{"per-user rate", {}};
        for (const CodebookRow& r : rows) {
            r0_curve.points.push_back({static_cast<double>(r.n_users), r.r0_star});
            s_curve.points.push_back({static_cast<double>(r.n_users), r.s_star});
            per_user.points.push_back({static_cast<double>(r.n_users), r.s_per_user});
        }
        emit(dir / "codebook.svg",
             svg_series({s_curve, r0_curve, per_user}, "users N", "bits/slot"));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stability regions of two-user multi-rate MAC/BC networks"};
    app.require_subcommand(1);

    std::string config_path;
    RunConfig flags;  // sentinel holder for overrides
    app.add_option("--config", config_path, "JSON config file");
    auto* o_out = app.add_option("--out", flags.out, "output directory");
    auto* o_samples = app.add_option("--samples", flags.samples, "Monte Carlo samples");
    auto* o_seed = app.add_option("--seed", flags.seed, "random seed");
    auto* o_w = app.add_option("--w-points", flags.w_points, "boundary sweep grid size");
    auto* o_alpha =
        app.add_option("--alpha-points", flags.alpha_points, "budget split grid size");
    auto* o_tol = app.add_option("--tolerance", flags.tolerance, "solver power tolerance");
    auto* o_kind = app.add_option("--kind", flags.kind, "duality kind: peak|average");
    auto* f_svg = app.add_flag("--svg", flags.svg, "emit SVG plots");

    auto* mac_peak = app.add_subcommand("mac-peak", "peak-power MAC partition and region");
    auto* bc_peak = app.add_subcommand("bc-peak", "peak-power BC partition and region");
    auto* mac_avg = app.add_subcommand("mac-avg", "average-power MAC region sweep");
    auto* bc_avg = app.add_subcommand("bc-avg", "average-power BC region sweep");
    auto* duality = app.add_subcommand("duality", "BC region vs union of dual MAC regions");
    auto* onoff = app.add_subcommand("onoff", "exact two-state strict-containment case");
    auto* codebook = app.add_subcommand("codebook", "optimal fixed-codebook rate vs N");
    for (CLI::App* sub : {mac_peak, bc_peak, mac_avg, bc_avg, duality, onoff, codebook})
        sub->fallthrough();  // accept the global flags after the subcommand

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) load_json_into(cfg, config_path);
        if (*o_out) cfg.out = flags.out;
        if (*o_samples) {
            cfg.samples = flags.samples;
            cfg.samples_explicit = true;
        }
        if (*o_seed) cfg.seed = flags.seed;
        if (*o_w) cfg.w_points = flags.w_points;
        if (*o_alpha) cfg.alpha_points = flags.alpha_points;
        if (*o_tol) cfg.tolerance = flags.tolerance;
        if (*o_kind) cfg.kind = flags.kind;
        if (*f_svg) cfg.svg = true;

        if (mac_peak->parsed()) return run_mac_peak(cfg);
        if (bc_peak->parsed()) return run_bc_peak(cfg);
        if (mac_avg->parsed()) return run_avg(cfg, NetworkKind::mac);
        if (bc_avg->parsed()) return run_avg(cfg, NetworkKind::bc);
        if (duality->parsed()) return run_duality(cfg);
        if (onoff->parsed()) return run_onoff(cfg);
        if (codebook->parsed()) return run_codebook(cfg);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const SolverError& e) {
        std::fprintf(stderr,
                     "solver error at w=%.4f (kappa=%.6g,%.6g residuals=%.3g,%.3g): %s\n",
                     e.w, e.kappa.k1, e.kappa.k2, e.resid1, e.resid2, e.what());
        return kExitSolver;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    }
}
