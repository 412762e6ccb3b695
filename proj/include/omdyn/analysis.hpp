// Trajectory analysis: local maxima for bifurcation diagrams, tangent-map
// Lyapunov exponents, attractor classification, bistability probes and
// hysteresis sweeps.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omdyn/integrator.hpp"

namespace omdyn {

enum class PeakRefine { Quadratic, PlateauMidpoint };

struct PeakSet {
    int variable = 0;  // state component index
    std::vector<double> times;
    std::vector<double> values;
    PeakRefine method = PeakRefine::Quadratic;

    bool empty() const { return values.empty(); }
    double spread() const;  // max - min, 0 when empty
};

// Strict 3-point local maxima of one component over the post-transient span,
// quadratically refined; plateaus resolve to their midpoint.
PeakSet local_maxima(const Trajectory& traj, int variable);

enum class LyapunovMethod { TangentMap, TwoTrajectory };

struct LyapunovResult {
    double lambda_max = 0;      // omega_m^-1
    double stderr_ = 0;         // over renormalization windows
    double renorm_interval = 1.0;
    bool converged = false;
    bool diverged = false;      // base trajectory blew up
    std::size_t windows = 0;
};

LyapunovResult lyapunov_max(const StateVector& state0, const SystemParams& params,
                            const IntegrationConfig& config,
                            double renorm_interval = 1.0,
                            LyapunovMethod method = LyapunovMethod::TangentMap);

enum class AttractorClass {
    FixedPointAttractor,
    Periodic,
    QuasiPeriodic,
    Chaotic,
    Diverged,
    NoOscillation,
    Unclassifiable,
};

std::string to_string(AttractorClass c);

struct ClassifyOptions {
    double chaos_lambda = 0.02;         // lambda_max above this is chaos
    double fp_drift_tol = 1e-6;         // relative terminal drift
    double fp_lambda = -1e-6;           // converged lambda below this is a point attractor
    double no_osc_tol = 1e-6;           // peak spread below this (of scale) means no oscillation
    int max_periodic_clusters = 16;     // covers period-8 / period-10
    double cluster_rel_gap = 1e-3;      // 1-D gap clustering of peak values
};

AttractorClass classify_attractor(const Trajectory& traj, const PeakSet& peaks,
                                  const LyapunovResult& lyap,
                                  const ClassifyOptions& opts = {});

// number of peak-value clusters under the gap rule (0 for empty peak sets)
int peak_cluster_count(const PeakSet& peaks, double rel_gap = 1e-3);

struct BistabilityReport {
    AttractorClass class_a = AttractorClass::Unclassifiable;
    AttractorClass class_b = AttractorClass::Unclassifiable;
    bool diverged_a = false;
    bool diverged_b = false;
    double hausdorff_optical = 0;  // (ar, ai) projection
    double hausdorff_mech = 0;     // (b1r, b1i) projection
    double diameter_optical = 0;   // larger cloud diameter per projection
    double diameter_mech = 0;
    bool same_attractor = true;    // both projections within 1% of diameter
};

BistabilityReport bistability_probe(const SystemParams& params,
                                    const StateVector& ic_a,
                                    const StateVector& ic_b,
                                    const IntegrationConfig& config);

enum class SweepParam { Jm, Delta, AlphaIn, Theta, Kappa };

std::string to_string(SweepParam p);
SystemParams with_param(SystemParams base, SweepParam which, double value);

enum class SweepDirection { Up, Down };

struct HysteresisPoint {
    double value = 0;          // swept parameter value
    PeakSet peaks;             // of ar by default
    PeakSet peaks_b1r;
    AttractorClass cls = AttractorClass::Unclassifiable;
    double lambda_max = 0;
    bool diverged = false;
    bool restarted = false;    // chain restarted from the zero state
};

// Adiabatic continuation: each converged final state seeds the next point.
std::vector<HysteresisPoint> hysteresis_sweep(const SystemParams& base,
                                              SweepParam which,
                                              double lo, double hi, int n_points,
                                              SweepDirection direction,
                                              const IntegrationConfig& config,
                                              const StateVector& first_ic);

// Symmetric Hausdorff distance between two planar point clouds (deterministic
// subsampling to at most `cap` points per cloud).
double hausdorff_distance_2d(std::span<const double> ax, std::span<const double> ay,
                             std::span<const double> bx, std::span<const double> by,
                             std::size_t cap = 1024);

}  // namespace omdyn
