// Benchmark: serial vs OpenMP batch height evaluation on a fixed random
// point cloud. Verifies that both paths produce identical breakdowns before
// timing anything.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef SUBGEN_HAVE_OPENMP
#include <omp.h>
#endif

#include "subgen/heights.hpp"

using namespace subgen;

namespace {

// xorshift64: deterministic across platforms, no <random> distribution quirks
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1)); }
};

double seconds(std::vector<HeightBreakdown> (*eval)(const WeightedConfiguration&, const PlaceSet&,
                                                    const std::vector<ProjectivePoint>&, const HeightOptions&),
               const WeightedConfiguration& cfg, const PlaceSet& S, const std::vector<ProjectivePoint>& pts,
               const HeightOptions& opts, std::vector<HeightBreakdown>& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = eval(cfg, S, pts, opts);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

bool same(const std::vector<HeightBreakdown>& a, const std::vector<HeightBreakdown>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!(a[i].point == b[i].point) || a[i].h != b[i].h) return false;
        if (a[i].divisors.size() != b[i].divisors.size()) return false;
        for (size_t j = 0; j < a[i].divisors.size(); ++j) {
            if (a[i].divisors[j].m_s != b[i].divisors[j].m_s) return false;
            if (a[i].divisors[j].n_s != b[i].divisors[j].n_s) return false;
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    size_t npoints = argc > 1 ? static_cast<size_t>(std::atol(argv[1])) : 200;
    long coord_bound = argc > 2 ? std::atol(argv[2]) : 1000000;

    ParsedConfig pc = parse_config(R"({
        "ambient_dim": 2,
        "divisors": [
            {"label": "L0", "components": [{"poly": "x0"}], "weight": 1},
            {"label": "L1", "components": [{"poly": "x1"}], "weight": 1},
            {"label": "L2", "components": [{"poly": "x0 + x1 - x2"}], "weight": 1},
            {"label": "Q",  "components": [{"poly": "x0^2 + x1^2 - 2x2^2"}], "weight": "1/2"}
        ],
        "places": {"archimedean": true, "primes": [2, 3]}
    })");

    Rng rng(20240915);
    std::vector<ProjectivePoint> pts;
    while (pts.size() < npoints) {
        std::vector<Integer> c = {Integer(rng.range(1, coord_bound)), Integer(rng.range(1, coord_bound)),
                                  Integer(rng.range(1, coord_bound))};
        ProjectivePoint P(std::move(c));
        bool on = false;
        for (const auto& e : pc.cfg.entries)
            for (const auto& comp : e.components)
                if (comp.form.evaluate(std::span<const Integer>(P.coords())).is_zero()) on = true;
        if (!on) pts.push_back(std::move(P));
    }

    HeightOptions opts;
    std::vector<HeightBreakdown> serial_out, parallel_out;
    double ts = seconds(&evaluate_points_serial, pc.cfg, pc.places, pts, opts, serial_out);
    double tp = seconds(&evaluate_points_parallel, pc.cfg, pc.places, pts, opts, parallel_out);

    if (!same(serial_out, parallel_out)) {
        std::fprintf(stderr, "FAIL: parallel and serial outputs differ\n");
        return 2;
    }

    int threads = 1;
#ifdef SUBGEN_HAVE_OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("points          %zu\n", pts.size());
    std::printf("threads         %d\n", threads);
    std::printf("serial          %.4f s  (%.1f pts/s)\n", ts, ts > 0 ? pts.size() / ts : 0.0);
    std::printf("parallel        %.4f s  (%.1f pts/s)\n", tp, tp > 0 ? pts.size() / tp : 0.0);
    std::printf("speedup         %.2fx\n", tp > 0 ? ts / tp : 0.0);
    std::printf("outputs         identical\n");
    return 0;
}
