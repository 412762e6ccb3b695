// Test-only oracles, independent of the library's solution paths:
// central finite differences for the Jacobian, and a 1-D scalar reduction of
// the steady-state problem (the mechanical subsystem is linear in the state,
// so eliminating it leaves one equation in n = |alpha|^2).
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "omdyn/model.hpp"

namespace oracles {

using omdyn::Convention;
using omdyn::StateVector;
using omdyn::SystemParams;

inline omdyn::Mat6 finite_difference_jacobian(const StateVector& s,
                                              const SystemParams& p) {
    omdyn::Mat6 J;
    for (int j = 0; j < 6; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(s[j]));
        StateVector sp = s, sm = s;
        sp[j] += h;
        sm[j] -= h;
        const auto fp = omdyn::rhs(sp, p);
        const auto fm = omdyn::rhs(sm, p);
        for (int i = 0; i < 6; ++i) J(i, j) = (fp[i] - fm[i]) / (2.0 * h);
    }
    return J;
}

// mechanical response per unit n: solves the 4x4 linear steady problem
inline Eigen::Vector4d mech_response(const SystemParams& p) {
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    Eigen::Matrix4d M;
    M << -0.5 * p.gamma1, p.omega1, p.jm * st, p.jm * ct,
        -p.omega1, -0.5 * p.gamma1, -p.jm * ct, p.jm * st,
        -p.jm * st, p.jm * ct, -0.5 * p.gamma2, p.omega2,
        -p.jm * ct, -p.jm * st, -p.omega2, -0.5 * p.gamma2;
    Eigen::Vector4d F = Eigen::Vector4d::Zero();
    if (p.convention == Convention::Paper) {
        F(0) = p.g1;
        F(2) = p.g2;
    } else {
        F(1) = p.g1;
        F(3) = p.g2;
    }
    return M.partialPivLu().solve(F);  // beta = response * n
}

// scalar steady-state condition f(n); roots of f are the fixed points
struct ScalarReduction {
    SystemParams p;
    double gcoef;  // u = delta + gcoef * n

    explicit ScalarReduction(const SystemParams& params) : p(params) {
        const Eigen::Vector4d b = mech_response(p);
        gcoef = 2.0 * p.g1 * b(0) + 2.0 * p.g2 * b(2);
    }

    double f(double n) const {
        const double u = p.delta + gcoef * n;
        const double k = p.kappa;
        const double A = p.alpha_in;
        if (p.convention == Convention::Paper) {
            const double d = 4.0 * u * u - k * k;
            return n * d * d - 4.0 * k * A * A * (k * k + 4.0 * u * u);
        }
        return n * (4.0 * u * u + k * k) - 4.0 * k * A * A;
    }

    StateVector state_at(double n) const {
        const double u = p.delta + gcoef * n;
        const double k = p.kappa;
        double ar;
        if (p.convention == Convention::Paper)
            ar = -2.0 * std::pow(k, 1.5) * p.alpha_in / (4.0 * u * u - k * k);
        else
            ar = 2.0 * std::pow(k, 1.5) * p.alpha_in / (4.0 * u * u + k * k);
        const double ai = 2.0 * u * ar / k;
        const Eigen::Vector4d b = mech_response(p) * n;
        return StateVector{{ar, ai, b(0), b(1), b(2), b(3)}};
    }

    // all roots on (0, nmax] via log-spaced bracketing + bisection
    std::vector<double> roots(double nmax = 1e14, int samples = 200000) const {
        std::vector<double> out;
        if (p.alpha_in == 0.0) {
            out.push_back(0.0);
            return out;
        }
        double prev_n = 1e-8, prev_f = f(prev_n);
        const double lo = std::log(1e-8), hi = std::log(nmax);
        for (int i = 1; i <= samples; ++i) {
            const double n = std::exp(lo + (hi - lo) * i / samples);
            const double fn = f(n);
            if ((prev_f < 0 && fn > 0) || (prev_f > 0 && fn < 0)) {
                double a = prev_n, b = n;
                for (int it = 0; it < 200; ++it) {
                    const double m = 0.5 * (a + b);
                    if ((f(a) < 0) == (f(m) < 0)) a = m;
                    else b = m;
                }
                out.push_back(0.5 * (a + b));
            }
            prev_n = n;
            prev_f = fn;
        }
        return out;
    }
};

inline StateVector random_state(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> dist(0.0, scale);
    StateVector s;
    for (int i = 0; i < 6; ++i) s[i] = dist(rng);
    return s;
}

inline SystemParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    SystemParams p;
    p.delta = -3.0 + 6.0 * uni(rng);
    p.jm = 0.7 * uni(rng);
    p.theta = -6.0 + 12.0 * uni(rng);
    p.alpha_in = 2e3 * uni(rng);
    p.convention = uni(rng) < 0.5 ? Convention::Paper : Convention::Rederived;
    return p;
}

}  // namespace oracles
