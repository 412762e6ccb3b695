// Parameter-grid engines for the steady-state, stability, attractor and basin
// maps. Every kernel has an OpenMP-parallel path and a serial reference path
// producing identical output; grid points are independent and results are
// assembled in lattice order.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "omdyn/analysis.hpp"
#include "omdyn/steady_state.hpp"
#include "omdyn/stability.hpp"

namespace omdyn {

enum class SweepTask { Count, Stability, Attractor, Basin };

struct GridAxis {
    SweepParam param = SweepParam::Delta;
    double min = 0, max = 1;
    int n = 2;

    double at(int i) const {
        return n == 1 ? min : min + (max - min) * static_cast<double>(i) / (n - 1);
    }
};

struct GridSpec {
    GridAxis x{SweepParam::Delta, -3.0, 3.0, 101};
    GridAxis y{SweepParam::Jm, 0.0, 0.1, 101};
    SweepTask task = SweepTask::Count;
    SystemParams base{};
    IntegrationConfig integ{};       // dynamic tasks only
    StateVector ic{};                // attractor task initial condition
    std::optional<StateVector> second_ic;  // coexistence annotation
    // basin task: IC components swept instead of parameters
    int basin_var_x = 0;
    int basin_var_y = 2;

    bool valid() const;
    void require_valid() const;
};

// -1 encodes "not produced / not applicable" for the integer fields.
struct SweepRecord {
    int ix = 0, iy = 0;
    double x = 0, y = 0;
    int closed_form_count = -1;   // 0/1/2 closed-form optical candidates
    int newton_count = -1;        // deduplicated Newton root count
    int stable1 = -1, stable2 = -1;  // branch verdicts (1 stable, 0 unstable)
    AttractorClass cls = AttractorClass::Unclassifiable;
    AttractorClass cls_second = AttractorClass::Unclassifiable;
    bool has_class = false;
    bool has_second = false;
    double lambda_max = 0;
    bool hidden = false;          // nonstationary attractor not anchored to an unstable fixed point
    int attractor_id = -1;        // basin task identity
    bool failed = false;
    double wall_ms = 0;
};

// workers: 1 = serial reference, 0 = all hardware threads, N = that many.
std::vector<SweepRecord> run_grid(const GridSpec& grid, int workers);

// Serial reference engine (identical records, plain loop); kept for tests and
// the benchmark.
std::vector<SweepRecord> run_grid_serial(const GridSpec& grid);

double two_state_area_fraction(const std::vector<SweepRecord>& records);

}  // namespace omdyn
