#include "omdyn/steady_state.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "omdyn/stability.hpp"

namespace omdyn {

namespace {

// |denominator|^2 of the mechanical closed form and the coupling bracket B
// shared by the consistent quadratic coefficients.
void denom_and_bracket(const SystemParams& p, double& dsq, double& bracket) {
    const double w1 = p.omega1, w2 = p.omega2, G1 = p.gamma1, G2 = p.gamma2;
    const double J = p.jm, g1 = p.g1, g2 = p.g2;
    const double ct = std::cos(std::remainder(p.theta, 6.283185307179586476925286766559));
    const double dr = 4.0 * J * J - 4.0 * w1 * w2 + G1 * G2;
    const double di = 2.0 * (G1 * w2 + G2 * w1);
    dsq = dr * dr + di * di;
    bracket = ct * g1 * g2 * J * (8.0 * J * J + 2.0 * G1 * G2 - 8.0 * w1 * w2) -
              4.0 * J * J * g1 * g1 * w2 - 4.0 * J * J * g2 * g2 * w1 +
              g1 * g1 * G2 * G2 * w1 + 4.0 * g1 * g1 * w1 * w2 * w2 +
              g2 * g2 * G1 * G1 * w2 + 4.0 * g2 * g2 * w1 * w1 * w2;
}

}  // namespace

QuadraticCoeffs alpha_quadratic_coeffs(const SystemParams& p, QuadSource src) {
    p.require_valid();
    const double w1 = p.omega1, w2 = p.omega2, k = p.kappa, D = p.delta;
    const double g1 = p.g1, g2 = p.g2, G1 = p.gamma1, G2 = p.gamma2;
    const double J = p.jm, A = p.alpha_in;
    QuadraticCoeffs q;
    if (src == QuadSource::Consistent) {
        double dsq, B;
        denom_and_bracket(p, dsq, B);
        q.a0 = 32.0 * k * A * A * B;
        q.a1 = A * std::pow(k, 2.5) * dsq;
        q.a2 = -4.0 * D * k * A * A * dsq + 128.0 * A * A * A * A * B;
        return q;
    }
    // printed appendix form, transcribed exactly (duplicated and cancelling
    // terms included)
    const double ct = std::cos(std::remainder(p.theta, 6.283185307179586476925286766559));
    q.a0 = 32.0 * A * A * k *
           (ct * g1 * g2 * J * (8.0 * J * J + 2.0 * G1 * G2 - 8.0 * w1 * w2) -
            4.0 * J * J * g1 * g1 * w2 - 4.0 * J * J * g2 * g2 * w1 +
            g1 * g1 * G2 * G2 * w1 + 4.0 * g1 * g1 * w1 * w2 * w2 +
            g2 * g2 * G1 * G1 * w2 + 4.0 * g2 * g2 * w1 * w1 * w2);
    q.a1 = -std::pow(k, 2.5) *
           (16.0 * J * J + 8.0 * J * J * G1 * G2 - 32.0 * J * J * w1 * w2 +
            G1 * G1 * G2 * G2 + 4.0 * G1 * G1 * w2 * w2 + 4.0 * G2 * G2 * w1 * w1 +
            16.0 * w1 * w1 * w2 * w2);
    q.a2 = 4.0 * A * A *
           (256.0 * J * J * J * ct * g1 * g2 * G1 + 64.0 * J * ct * g1 * g2 * G1 * G2 * k +
            8.0 * D * J * J * G1 * G2 * k - 32.0 * D * J * J * w1 * w2 * k +
            D * G1 * G1 * G2 * G2 * k - 256.0 * J * ct * g1 * g2 * w1 * w2 * k -
            128.0 * J * J * g1 * g1 * w2 * k + 128.0 * g2 * g2 * w2 * w1 * w1 * A * A -
            128.0 * J * J * g2 * g2 * w1 * k + 16.0 * D * J * J * J * J * k -
            8.0 * D * J * J * G1 * G2 * k + 32.0 * D * g1 * g1 * w1 * w2 * w2 * A * A +
            32.0 * g2 * g2 * G1 * G1 * w2 * A * A - 32.0 * D * J * J * w1 * w2 * k +
            D * G1 * G1 * G2 * G2 * k + 4.0 * D * G1 * G1 * w2 * w2 * k +
            4.0 * D * w1 * w1 * G2 * G2 * k + 16.0 * D * w1 * w1 * w2 * w2 * k);
    return q;
}

std::vector<AlphaCandidate> solve_alpha(const SystemParams& p, QuadSource src) {
    const QuadraticCoeffs q = alpha_quadratic_coeffs(p, src);
    const double ar = 2.0 * p.alpha_in / std::sqrt(p.kappa);
    std::vector<double> roots;
    if (q.a0 == 0.0) {
        if (q.a1 != 0.0) roots.push_back(-q.a2 / q.a1);
        // a0 == a1 == 0 with a2 != 0: no solutions; all zero: only alpha_i = 0
        else if (q.a2 == 0.0) roots.push_back(0.0);
    } else {
        const double disc = q.a1 * q.a1 - 4.0 * q.a0 * q.a2;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double w = -0.5 * (q.a1 + std::copysign(sq, q.a1));
            if (w != 0.0) {
                roots.push_back(w / q.a0);
                roots.push_back(q.a2 / w);
            } else {
                roots.push_back(0.0);
                roots.push_back(0.0);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    std::vector<AlphaCandidate> out;
    for (double ai : roots) out.push_back({ar, ai});
    return out;
}

std::pair<Complex, Complex> beta_steady(double alpha_sq, const SystemParams& p) {
    p.require_valid();
    if (!(alpha_sq >= 0.0))
        throw std::invalid_argument("beta_steady: |alpha|^2 must be non-negative");
    const Complex i(0.0, 1.0);
    const double th = std::remainder(p.theta, 6.283185307179586476925286766559);
    const Complex den = 4.0 * p.jm * p.jm - 4.0 * p.omega1 * p.omega2 +
                        2.0 * i * (p.gamma1 * p.omega2 + p.gamma2 * p.omega1) +
                        p.gamma1 * p.gamma2;
    if (std::abs(den) < 1e-14)
        throw std::domain_error("beta_steady: singular mechanical denominator");
    const Complex b1 =
        -2.0 * (2.0 * p.g2 * p.jm * std::polar(1.0, th) + i * p.g1 * p.gamma2 -
                2.0 * p.g1 * p.omega2) * alpha_sq / den;
    const Complex b2 =
        -2.0 * (2.0 * p.g1 * p.jm * std::polar(1.0, -th) + i * p.g2 * p.gamma1 -
                2.0 * p.g2 * p.omega1) * alpha_sq / den;
    return {b1, b2};
}

namespace {

double residual_max_norm(const ModelCoeffs& c, const double s[6]) {
    double f[6];
    rhs_raw(c, s, f);
    double m = 0;
    for (double x : f) m = std::max(m, std::abs(x));
    return m;
}

// Damped Newton from one seed; returns true on convergence.
bool newton_refine(const ModelCoeffs& c, const NewtonOptions& opts, double s[6],
                   double& residual) {
    Eigen::Matrix<double, 6, 1> f, step;
    Eigen::Matrix<double, 6, 6> J;
    double raw[6];
    double jac[6][6];
    double r = residual_max_norm(c, s);
    for (int it = 0; it < opts.max_iterations; ++it) {
        if (r <= opts.residual_tol) {
            residual = r;
            return true;
        }
        rhs_raw(c, s, raw);
        for (int i = 0; i < 6; ++i) f(i) = raw[i];
        jacobian_raw(c, s, jac);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) J(i, j) = jac[i][j];
        step = J.partialPivLu().solve(-f);
        if (!step.allFinite()) return false;
        double lambda = 1.0;
        bool accepted = false;
        for (int h = 0; h <= opts.max_halvings; ++h) {
            double trial[6];
            for (int i = 0; i < 6; ++i) trial[i] = s[i] + lambda * step(i);
            bool ok = true;
            for (double x : trial)
                if (!std::isfinite(x) || std::abs(x) > opts.blow_up_bound) ok = false;
            if (ok) {
                const double rt = residual_max_norm(c, trial);
                if (rt < r || rt <= opts.residual_tol) {
                    for (int i = 0; i < 6; ++i) s[i] = trial[i];
                    r = rt;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!accepted) return false;
    }
    residual = r;
    return r <= opts.accept_tol;
}

bool same_root(const StateVector& a, const StateVector& b, double rel_tol) {
    const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
    for (int i = 0; i < 6; ++i)
        if (std::abs(a[i] - b[i]) > rel_tol * scale) return false;
    return true;
}

}  // namespace

FixedPointSearch find_fixed_points(const SystemParams& p, const NewtonOptions& opts) {
    p.require_valid();
    const ModelCoeffs c = ModelCoeffs::from(p);

    std::vector<StateVector> seeds;
    seeds.push_back(StateVector{});  // origin
    for (QuadSource src : {QuadSource::Consistent, QuadSource::PaperAppendix}) {
        for (const AlphaCandidate& cand : solve_alpha(p, src)) {
            const double nph = cand.ar * cand.ar + cand.ai * cand.ai;
            try {
                auto [b1, b2] = beta_steady(nph, p);
                seeds.push_back(StateVector::from_complex({cand.ar, cand.ai}, b1, b2));
            } catch (const std::domain_error&) {
                seeds.push_back(StateVector{{cand.ar, cand.ai, 0, 0, 0, 0}});
            }
        }
    }
    // deterministic lattice: 8 amplitude decades x 8 direction patterns
    static const double patterns[8][6] = {
        {1, 0, 0, 0, 0, 0},   {-1, 0, 0, 0, 0, 0}, {0, 1, -1, 0, 0, 0},
        {0, -1, 1, 0, 0, 0},  {1, 1, -1, 0, -1, 0}, {-1, -1, 1, 0, 1, 0},
        {1, -1, -1, 1, -1, 1}, {-1, 1, 1, -1, 1, -1}};
    const int decades = std::max(1, opts.lattice_seeds / 8);
    for (int d = 0; d < decades; ++d) {
        const double amp = std::pow(10.0, d);  // 1e0 .. 1e7 by default
        for (const auto& pat : patterns) {
            StateVector s;
            for (int i = 0; i < 6; ++i) s[i] = amp * pat[i];
            seeds.push_back(s);
        }
    }

    FixedPointSearch out;
    bool any_converged = false;
    for (std::size_t si = 0; si < seeds.size(); ++si) {
        double s[6];
        for (int i = 0; i < 6; ++i) s[i] = seeds[si][i];
        double residual = 0;
        if (!newton_refine(c, opts, s, residual)) continue;
        any_converged = true;
        if (residual > opts.accept_tol) continue;
        StateVector root;
        for (int i = 0; i < 6; ++i) root[i] = s[i];
        bool dup = false;
        for (const FixedPoint& fp : out.points)
            if (same_root(fp.state, root, opts.dedup_rel_tol)) { dup = true; break; }
        if (dup) continue;
        FixedPoint fp;
        fp.state = root;
        fp.residual_norm = residual;
        fp.source = si == 0 ? FixedPointSource::Multistart
                  : si <= 4 ? FixedPointSource::ClosedForm
                            : FixedPointSource::Multistart;
        const EigenStability es = eigen_stability(jacobian(root, p));
        fp.eigenvalues = es.eigenvalues;
        fp.max_real_part = es.max_real_part;
        fp.stable = es.stable;
        out.points.push_back(fp);
    }
    out.all_seeds_diverged = !any_converged;
    std::sort(out.points.begin(), out.points.end(),
              [](const FixedPoint& a, const FixedPoint& b) {
                  const double na = a.state.ar() * a.state.ar() + a.state.ai() * a.state.ai();
                  const double nb = b.state.ar() * b.state.ar() + b.state.ai() * b.state.ai();
                  return na < nb;
              });
    return out;
}

int count_steady_states(const SystemParams& p, const NewtonOptions& opts) {
    return static_cast<int>(find_fixed_points(p, opts).points.size());
}

}  // namespace omdyn
