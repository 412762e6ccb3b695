// Equilibria of the driven system: the closed-form optical quadratic and
// mechanical response, plus a damped-Newton multistart root finder that is
// authoritative for what counts as a fixed point.
#pragma once

#include <complex>
#include <vector>

#include "omdyn/model.hpp"

namespace omdyn {

struct QuadraticCoeffs {
    double a0 = 0, a1 = 0, a2 = 0;  // a0*x^2 + a1*x + a2 = 0 in alpha_i
};

// Two coefficient sets are provided. `PaperAppendix` is the verbatim printed
// set (kept for provenance and flagged by tests as internally inconsistent);
// `Consistent` is rederived from the printed alpha_i steady-state condition
// combined with the mechanical closed form and alpha_r = 2*alpha_in/sqrt(kappa),
// and is what solve_alpha uses.
enum class QuadSource { PaperAppendix, Consistent };

QuadraticCoeffs alpha_quadratic_coeffs(const SystemParams& p,
                                       QuadSource src = QuadSource::PaperAppendix);

struct AlphaCandidate {
    double ar = 0, ai = 0;
};

// 0, 1 or 2 closed-form optical candidates; numerically robust quadratic
// (sign-aware, no cancellation), a0==0 degenerates to the linear equation.
std::vector<AlphaCandidate> solve_alpha(const SystemParams& p,
                                        QuadSource src = QuadSource::Consistent);

// Mechanical steady amplitudes for a given |alpha|^2; throws std::domain_error
// when the shared denominator is singular (|den| < 1e-14).
std::pair<Complex, Complex> beta_steady(double alpha_sq, const SystemParams& p);

enum class FixedPointSource { ClosedForm, NewtonRefined, Multistart };

struct FixedPoint {
    StateVector state;
    double residual_norm = 0;  // max-norm of the vector field at state
    std::array<Complex, 6> eigenvalues{};
    double max_real_part = 0;
    bool stable = false;  // all eigenvalue real parts strictly negative
    FixedPointSource source = FixedPointSource::NewtonRefined;
};

struct FixedPointSearch {
    std::vector<FixedPoint> points;   // deduplicated, sorted by |alpha|^2
    bool all_seeds_diverged = false;  // no seed converged at all
};

struct NewtonOptions {
    int max_iterations = 200;
    int max_halvings = 40;
    double residual_tol = 1e-9;       // convergence target (max-norm)
    double accept_tol = 1e-8;         // roots above this are dropped
    double dedup_rel_tol = 1e-6;      // component-wise, floored at scale 1
    double blow_up_bound = 1e12;
    int lattice_seeds = 64;
};

FixedPointSearch find_fixed_points(const SystemParams& p,
                                   const NewtonOptions& opts = {});

int count_steady_states(const SystemParams& p, const NewtonOptions& opts = {});

}  // namespace omdyn
