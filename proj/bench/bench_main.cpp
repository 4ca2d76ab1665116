// Serial-reference versus blocked-OpenMP timing for the three Monte Carlo
// kernels, with a result-consistency column (the blocked path is the one the
// solvers use; the serial loop is the reference kept for testing).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "netstab/avgpower.hpp"
#include "netstab/codebook.hpp"
#include "netstab/mc.hpp"
#include "netstab/peak.hpp"

using namespace netstab;

namespace {

double now_run(const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct BcCensus {
    std::map<std::uint64_t, std::uint64_t> counts;
    void merge(const BcCensus& o) {
        for (auto& [k, v] : o.counts) counts[k] += v;
    }
};

struct Sums {
    double r1 = 0, p = 0;
    void merge(const Sums& o) {
        r1 += o.r1;
        p += o.p;
    }
};

struct KCounts {
    std::uint64_t sum = 0;
    void merge(const KCounts& o) { sum += o.sum; }
};

void report(const char* name, double serial_s, double parallel_s, double max_rel_diff) {
    std::printf("%-34s %9.3fs %9.3fs %7.2fx %12.3g\n", name, serial_s, parallel_s,
                serial_s / parallel_s, max_rel_diff);
}

}  // namespace

int main() {
    const std::uint64_t n = 4'000'000;
    const ChannelModel model;
    const RateSet rates = RateSet::fixed(1.0);

    std::printf("threads: %d, samples per kernel: %llu\n", mc_max_threads(),
                static_cast<unsigned long long>(n));
    std::printf("%-34s %10s %10s %8s %12s\n", "kernel", "serial", "parallel", "speedup",
                "max rel diff");

    {
        auto body = [&](std::uint64_t, Substream& s, BcCensus& c) {
            const ChannelFadePower chi = model.sample(s);
            std::uint64_t mask = 0;
            int bit = 0;
            for (double r1 : rates.values())
                for (double r2 : rates.values()) {
                    if (bc_min_power({r1, r2}, chi) <= 2.0) mask |= 1ull << bit;
                    ++bit;
                }
            ++c.counts[mask];
        };
        BcCensus serial, parallel;
        const double ts = now_run([&] { serial = mc_run_serial<BcCensus>(n, 1, body); });
        const double tp =
            now_run([&] { parallel = mc_run_blocked<BcCensus>(n, 1, body, true); });
        report("bc supported-set census", ts, tp,
               serial.counts == parallel.counts ? 0.0 : 1.0);
    }

    {
        const Multipliers k{0.2, 0.25};
        auto body = [&](std::uint64_t, Substream& s, Sums& acc) {
            const ChannelFadePower chi = model.sample(s);
            const MacChoice c = mac_choice(0.5, k, chi, rates, rates);
            acc.r1 += c.rate.r1;
            acc.p += c.power.p1 + c.power.p2;
        };
        Sums serial, parallel;
        const double ts = now_run([&] { serial = mc_run_serial<Sums>(n, 2, body); });
        const double tp =
            now_run([&] { parallel = mc_run_blocked<Sums>(n, 2, body, true); });
        const double diff = std::max(std::abs(serial.r1 - parallel.r1) / serial.r1,
                                     std::abs(serial.p - parallel.p) / serial.p);
        report("priced MAC choice + accumulate", ts, tp, diff);
    }

    {
        auto body = [&](std::uint64_t, Substream& s, KCounts& acc) {
            double gains[8];
            for (double& g : gains) g = s.next_exponential(1.0);
            acc.sum += static_cast<std::uint64_t>(max_simultaneous({gains, 8}, 0.6, 1.0));
        };
        KCounts serial, parallel;
        const double ts = now_run([&] { serial = mc_run_serial<KCounts>(n, 3, body); });
        const double tp =
            now_run([&] { parallel = mc_run_blocked<KCounts>(n, 3, body, true); });
        report("8-user served-count census", ts, tp,
               serial.sum == parallel.sum ? 0.0 : 1.0);
    }
    return 0;
}
