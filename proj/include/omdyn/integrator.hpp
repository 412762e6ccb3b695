// Fixed-step RK4 time integration with transient bookkeeping, divergence
// detection and a step-halving convergence check.
#pragma once

#include <span>
#include <vector>

#include "omdyn/model.hpp"

namespace omdyn {

struct IntegrationConfig {
    double dt = 1e-3;            // omega_m^-1
    double t_total = 1e3;
    double t_transient = 0.5e3;  // discarded by analysis, still recorded
    int record_stride = 10;      // keep every N-th step
    double blow_up_bound = 1e12;

    bool valid() const;
    void require_valid() const;
    long total_steps() const { return static_cast<long>(t_total / dt + 0.5); }
};

enum class TerminationCause { Completed, Divergence };

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    bool terminated_early = false;
    TerminationCause cause = TerminationCause::Completed;
    IntegrationConfig config;

    // first recorded index at or after t_transient
    std::size_t post_transient_begin() const;
    std::span<const StateVector> post_transient_states() const;
    std::span<const double> post_transient_times() const;
};

StateVector rk4_step(const StateVector& state, double dt, const SystemParams& params);

// raw-array step for hot loops; returns false when the result blew up
bool rk4_step_raw(const ModelCoeffs& c, double dt, double s[6], double bound);

Trajectory integrate(const StateVector& state0, const SystemParams& params,
                     const IntegrationConfig& config);

struct ConvergenceReport {
    double max_rel_deviation = 0;  // worst of the three observables
    double mean_nphot_dev = 0;     // time-averaged |alpha|^2
    double peaks_ar_dev = 0;       // Wasserstein-1 of peak sets, scaled
    double peaks_b1r_dev = 0;
    bool diverged_full = false;    // dt run blew up
    bool diverged_half = false;    // dt/2 run blew up
    // set when the dt/2 run had to be restarted from the dt run's settled
    // state because the two runs captured different coexisting attractors
    bool same_attractor_fallback = false;
};

// Integrates at dt and dt/2 and compares post-transient observables (peak
// value sets of ar and b1r, time-averaged |alpha|^2).
ConvergenceReport convergence_check(const StateVector& state0,
                                    const SystemParams& params,
                                    const IntegrationConfig& config);

}  // namespace omdyn
