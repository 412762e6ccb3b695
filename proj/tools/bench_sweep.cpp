// Benchmark comparing the serial reference sweep engine against the
// OpenMP-parallel one, verifying identical records along the way.
#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "omdyn/sweep.hpp"

using namespace omdyn;

namespace {

double run_timed(const GridSpec& g, int workers, std::vector<SweepRecord>& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = workers == 1 ? run_grid_serial(g) : run_grid(g, workers);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool records_equal(const std::vector<SweepRecord>& a, const std::vector<SweepRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].closed_form_count != b[i].closed_form_count) return false;
        if (a[i].newton_count != b[i].newton_count) return false;
        if (a[i].stable1 != b[i].stable1 || a[i].stable2 != b[i].stable2) return false;
        if (a[i].cls != b[i].cls) return false;
        if (a[i].lambda_max != b[i].lambda_max) return false;  // bitwise
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    int threads = 0;  // all
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    if (argc > 1) threads = std::stoi(argv[1]);

    GridSpec count_grid;
    count_grid.x = {SweepParam::Delta, -3.0, 3.0, 61};
    count_grid.y = {SweepParam::Jm, 0.0, 0.1, 41};
    count_grid.task = SweepTask::Count;
    count_grid.base.alpha_in = 1e3;

    GridSpec attractor_grid;
    attractor_grid.x = {SweepParam::Delta, -2.0, 0.0, 8};
    attractor_grid.y = {SweepParam::Jm, 0.01, 0.05, 4};
    attractor_grid.task = SweepTask::Attractor;
    attractor_grid.base.alpha_in = 1e4;
    attractor_grid.integ.t_total = 200.0;
    attractor_grid.integ.t_transient = 100.0;

    struct Case { const char* name; const GridSpec* grid; };
    const Case cases[] = {{"count 61x41", &count_grid},
                          {"attractor 8x4", &attractor_grid}};

    std::printf("%-16s %10s %10s %8s %8s\n", "kernel", "serial[s]", "omp[s]",
                "speedup", "match");
    for (const Case& c : cases) {
        std::vector<SweepRecord> serial, parallel;
        const double ts = run_timed(*c.grid, 1, serial);
        const double tp = run_timed(*c.grid, threads, parallel);
        std::printf("%-16s %10.3f %10.3f %8.2f %8s\n", c.name, ts, tp, ts / tp,
                    records_equal(serial, parallel) ? "yes" : "NO");
    }
    return 0;
}
