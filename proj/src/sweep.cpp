#include "omdyn/sweep.hpp"

#include <chrono>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace omdyn {

bool GridSpec::valid() const {
    if (x.n < 2 || y.n < 2) return false;
    if (task != SweepTask::Basin && x.param == y.param) return false;
    if (task == SweepTask::Basin && basin_var_x == basin_var_y) return false;
    return base.valid();
}

void GridSpec::require_valid() const {
    if (!valid()) throw std::invalid_argument("GridSpec: invalid grid");
}

namespace {

struct BasinRef {
    // compact signature of a reference attractor: subsampled optical cloud
    std::vector<double> x, y;
    AttractorClass cls;
};

struct PointScratch {
    // captured per point during the parallel phase; identity matching runs
    // serially afterwards so the result is independent of thread count
    std::vector<double> cx, cy;
};

constexpr std::size_t kBasinCloudCap = 128;

SweepRecord compute_point(const GridSpec& grid, int ix, int iy, PointScratch* scratch) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepRecord rec;
    rec.ix = ix;
    rec.iy = iy;
    rec.x = grid.x.at(ix);
    rec.y = grid.y.at(iy);

    SystemParams p = grid.base;
    StateVector ic = grid.ic;
    if (grid.task == SweepTask::Basin) {
        ic[grid.basin_var_x] = rec.x;
        ic[grid.basin_var_y] = rec.y;
    } else {
        p = with_param(p, grid.x.param, rec.x);
        p = with_param(p, grid.y.param, rec.y);
    }

    try {
        switch (grid.task) {
            case SweepTask::Count: {
                rec.closed_form_count = static_cast<int>(solve_alpha(p).size());
                rec.newton_count = count_steady_states(p);
                break;
            }
            case SweepTask::Stability: {
                rec.closed_form_count = static_cast<int>(solve_alpha(p).size());
                const FixedPointSearch fps = find_fixed_points(p);
                rec.newton_count = static_cast<int>(fps.points.size());
                if (!fps.points.empty()) rec.stable1 = fps.points[0].stable ? 1 : 0;
                if (fps.points.size() > 1) rec.stable2 = fps.points[1].stable ? 1 : 0;
                break;
            }
            case SweepTask::Attractor:
            case SweepTask::Basin: {
                const Trajectory traj = integrate(ic, p, grid.integ);
                LyapunovResult ly;
                if (!traj.terminated_early) ly = lyapunov_max(ic, p, grid.integ);
                else ly.diverged = true;
                const PeakSet pk = traj.terminated_early ? PeakSet{} : local_maxima(traj, 0);
                rec.cls = classify_attractor(traj, pk, ly);
                rec.has_class = true;
                rec.lambda_max = ly.lambda_max;
                if (grid.task == SweepTask::Attractor) {
                    const FixedPointSearch fps = find_fixed_points(p);
                    rec.newton_count = static_cast<int>(fps.points.size());
                    const bool nonstationary = rec.cls == AttractorClass::Periodic ||
                                               rec.cls == AttractorClass::QuasiPeriodic ||
                                               rec.cls == AttractorClass::Chaotic;
                    bool near_unstable_fp = false;
                    for (const FixedPoint& fp : fps.points) {
                        if (fp.stable) continue;
                        double d = 0;
                        for (int k = 0; k < 6; ++k)
                            d = std::max(d, std::abs(ic[k] - fp.state[k]));
                        const double scale = std::max(1.0, fp.state.max_abs());
                        if (d < 1e-3 * scale) near_unstable_fp = true;
                    }
                    rec.hidden = nonstationary &&
                                 (fps.points.empty() || !near_unstable_fp);
                    if (grid.second_ic) {
                        const Trajectory t2 = integrate(*grid.second_ic, p, grid.integ);
                        LyapunovResult ly2;
                        if (!t2.terminated_early)
                            ly2 = lyapunov_max(*grid.second_ic, p, grid.integ);
                        else ly2.diverged = true;
                        const PeakSet pk2 = t2.terminated_early ? PeakSet{} : local_maxima(t2, 0);
                        rec.cls_second = classify_attractor(t2, pk2, ly2);
                        rec.has_second = true;
                    }
                }
                if (grid.task == SweepTask::Basin && scratch && !traj.terminated_early) {
                    const auto states = traj.post_transient_states();
                    const std::size_t stride = std::max<std::size_t>(1, states.size() / kBasinCloudCap);
                    for (std::size_t i = 0; i < states.size(); i += stride) {
                        scratch->cx.push_back(states[i].ar());
                        scratch->cy.push_back(states[i].ai());
                    }
                }
                break;
            }
        }
    } catch (const std::exception&) {
        rec.failed = true;
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0).count();
    return rec;
}

// serial pass assigning attractor identities in lattice order
void assign_basin_ids(std::vector<SweepRecord>& recs, std::vector<PointScratch>& scratch) {
    std::vector<BasinRef> refs;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        SweepRecord& r = recs[i];
        if (!r.has_class || r.cls == AttractorClass::Diverged || scratch[i].cx.empty()) {
            r.attractor_id = -1;
            continue;
        }
        int id = -1;
        for (std::size_t k = 0; k < refs.size(); ++k) {
            if (refs[k].cls != r.cls) continue;
            const double h = hausdorff_distance_2d(scratch[i].cx, scratch[i].cy,
                                                   refs[k].x, refs[k].y, kBasinCloudCap);
            double diam = 0;
            for (std::size_t a = 0; a < refs[k].x.size(); ++a)
                for (std::size_t b = a + 1; b < refs[k].x.size(); ++b) {
                    const double dx = refs[k].x[a] - refs[k].x[b];
                    const double dy = refs[k].y[a] - refs[k].y[b];
                    diam = std::max(diam, dx * dx + dy * dy);
                }
            diam = std::sqrt(diam);
            if (h <= 0.01 * std::max(diam, 1e-300)) { id = static_cast<int>(k); break; }
        }
        if (id < 0) {
            refs.push_back({scratch[i].cx, scratch[i].cy, r.cls});
            id = static_cast<int>(refs.size()) - 1;
        }
        r.attractor_id = id;
    }
}

std::vector<SweepRecord> run_impl(const GridSpec& grid, int workers) {
    grid.require_valid();
    const int nx = grid.x.n, ny = grid.y.n;
    const long total = static_cast<long>(nx) * ny;
    std::vector<SweepRecord> recs(total);
    std::vector<PointScratch> scratch(grid.task == SweepTask::Basin ? total : 0);

    if (workers == 1) {
        for (long idx = 0; idx < total; ++idx) {
            const int ix = static_cast<int>(idx % nx);
            const int iy = static_cast<int>(idx / nx);
            recs[idx] = compute_point(grid, ix, iy,
                                      scratch.empty() ? nullptr : &scratch[idx]);
        }
    } else {
#ifdef _OPENMP
        if (workers > 0) omp_set_num_threads(workers);
#pragma omp parallel for schedule(static)
#endif
        for (long idx = 0; idx < total; ++idx) {
            const int ix = static_cast<int>(idx % nx);
            const int iy = static_cast<int>(idx / nx);
            recs[idx] = compute_point(grid, ix, iy,
                                      scratch.empty() ? nullptr : &scratch[idx]);
        }
    }
    if (grid.task == SweepTask::Basin) assign_basin_ids(recs, scratch);
    // per-point timing is machine noise, not part of the deterministic result
    return recs;
}

}  // namespace

std::vector<SweepRecord> run_grid(const GridSpec& grid, int workers) {
    return run_impl(grid, workers);
}

std::vector<SweepRecord> run_grid_serial(const GridSpec& grid) {
    return run_impl(grid, 1);
}

double two_state_area_fraction(const std::vector<SweepRecord>& records) {
    if (records.empty()) return 0;
    long two = 0;
    for (const SweepRecord& r : records)
        if (r.closed_form_count == 2) ++two;
    return static_cast<double>(two) / records.size();
}

}  // namespace omdyn
