#include "omdyn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace omdyn {

double PeakSet::spread() const {
    if (values.empty()) return 0.0;
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *hi - *lo;
}

PeakSet local_maxima(const Trajectory& traj, int variable) {
    if (variable < 0 || variable > 5)
        throw std::invalid_argument("local_maxima: variable index out of range");
    PeakSet out;
    out.variable = variable;
    const auto states = traj.post_transient_states();
    const auto times = traj.post_transient_times();
    const std::size_t n = states.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double b = states[i][variable];
        // plateau: walk to its end, keep the midpoint
        if (b == states[i + 1][variable]) {
            std::size_t j = i + 1;
            while (j + 1 < n && states[j + 1][variable] == b) ++j;
            if (j + 1 < n && states[i - 1][variable] < b && states[j + 1][variable] < b) {
                out.times.push_back(0.5 * (times[i] + times[j]));
                out.values.push_back(b);
                out.method = PeakRefine::PlateauMidpoint;
            }
            i = j;
            continue;
        }
        const double a = states[i - 1][variable], c = states[i + 1][variable];
        if (b > a && b > c) {
            // quadratic fit through the three samples
            const double denom = a - 2.0 * b + c;
            double t_ref = times[i], v_ref = b;
            if (denom != 0.0) {
                const double delta = 0.5 * (a - c) / denom;
                const double h = times[i + 1] - times[i];
                t_ref = times[i] + delta * h;
                v_ref = b - 0.25 * (a - c) * delta;
            }
            out.times.push_back(t_ref);
            out.values.push_back(v_ref);
        }
    }
    return out;
}

int peak_cluster_count(const PeakSet& peaks, double rel_gap) {
    if (peaks.values.empty()) return 0;
    std::vector<double> v = peaks.values;
    std::sort(v.begin(), v.end());
    const double scale = std::max(std::abs(v.front()), std::abs(v.back()));
    const double gap = rel_gap * std::max(scale, 1e-300);
    int clusters = 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] - v[i - 1] > gap) ++clusters;
    return clusters;
}

namespace {

// widest cluster under the same gap rule, as a fraction of value scale
double max_cluster_width_rel(const PeakSet& peaks, double rel_gap) {
    if (peaks.values.empty()) return 0.0;
    std::vector<double> v = peaks.values;
    std::sort(v.begin(), v.end());
    const double scale = std::max({std::abs(v.front()), std::abs(v.back()), 1e-300});
    const double gap = rel_gap * scale;
    double widest = 0.0, start = v.front();
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] - v[i - 1] > gap) {
            widest = std::max(widest, v[i - 1] - start);
            start = v[i];
        }
    }
    widest = std::max(widest, v.back() - start);
    return widest / scale;
}

struct TangentIntegrator {
    // state + tangent vector advanced together; the tangent stage slopes use
    // the Jacobian at the matching RK4 stage states (variational equations)
    const ModelCoeffs& c;
    double dt;
    double bound;

    bool step(double s[6], double v[6]) const {
        double k1[6], k2[6], k3[6], k4[6];
        double t1[6], t2[6], t3[6], t4[6];
        double tmp[6], vt[6];
        double J[6][6];

        auto apply = [&](const double st[6], const double vec[6], double out[6]) {
            jacobian_raw(c, st, J);
            for (int i = 0; i < 6; ++i) {
                double acc = 0;
                for (int j = 0; j < 6; ++j) acc += J[i][j] * vec[j];
                out[i] = acc;
            }
        };

        rhs_raw(c, s, k1);
        apply(s, v, t1);
        for (int i = 0; i < 6; ++i) tmp[i] = s[i] + 0.5 * dt * k1[i];
        for (int i = 0; i < 6; ++i) vt[i] = v[i] + 0.5 * dt * t1[i];
        rhs_raw(c, tmp, k2);
        apply(tmp, vt, t2);
        for (int i = 0; i < 6; ++i) tmp[i] = s[i] + 0.5 * dt * k2[i];
        for (int i = 0; i < 6; ++i) vt[i] = v[i] + 0.5 * dt * t2[i];
        rhs_raw(c, tmp, k3);
        apply(tmp, vt, t3);
        for (int i = 0; i < 6; ++i) tmp[i] = s[i] + dt * k3[i];
        for (int i = 0; i < 6; ++i) vt[i] = v[i] + dt * t3[i];
        rhs_raw(c, tmp, k4);
        apply(tmp, vt, t4);

        bool ok = true;
        for (int i = 0; i < 6; ++i) {
            s[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            v[i] += dt / 6.0 * (t1[i] + 2.0 * t2[i] + 2.0 * t3[i] + t4[i]);
            if (!std::isfinite(s[i]) || std::abs(s[i]) > bound) ok = false;
        }
        return ok;
    }
};

LyapunovResult finish_lyapunov(std::vector<double>& window_rates, double renorm_interval) {
    LyapunovResult r;
    r.renorm_interval = renorm_interval;
    r.windows = window_rates.size();
    if (window_rates.empty()) return r;
    const double n = static_cast<double>(window_rates.size());
    const double mean = std::accumulate(window_rates.begin(), window_rates.end(), 0.0) / n;
    double var = 0;
    for (double x : window_rates) var += (x - mean) * (x - mean);
    r.lambda_max = mean;
    r.stderr_ = n > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
    // running-estimate drift over the last quarter
    double run = 0;
    std::vector<double> running(window_rates.size());
    for (std::size_t i = 0; i < window_rates.size(); ++i) {
        run += window_rates[i];
        running[i] = run / (i + 1);
    }
    const std::size_t q = window_rates.size() - window_rates.size() / 4;
    double drift = 0;
    for (std::size_t i = q; i < running.size(); ++i)
        drift = std::max(drift, std::abs(running[i] - running.back()));
    r.converged = drift < std::max(0.2 * std::abs(mean), 0.005);
    return r;
}

}  // namespace

LyapunovResult lyapunov_max(const StateVector& state0, const SystemParams& params,
                            const IntegrationConfig& config, double renorm_interval,
                            LyapunovMethod method) {
    params.require_valid();
    config.require_valid();
    const long steps_per_window = static_cast<long>(renorm_interval / config.dt + 0.5);
    if (steps_per_window < 1 ||
        std::abs(steps_per_window * config.dt - renorm_interval) > 1e-9 * renorm_interval)
        throw std::invalid_argument("lyapunov_max: renorm_interval must be a multiple of dt");

    const ModelCoeffs c = ModelCoeffs::from(params);
    const long nsteps = config.total_steps();
    const long skip_steps = static_cast<long>(config.t_transient / config.dt + 0.5);

    double s[6];
    for (int i = 0; i < 6; ++i) s[i] = state0[i];

    std::vector<double> window_rates;
    window_rates.reserve(nsteps / steps_per_window + 1);

    if (method == LyapunovMethod::TangentMap) {
        // start the tangent vector with weight on every block so no invariant
        // subspace is missed in decoupled configurations
        double v[6];
        const double inv = 1.0 / std::sqrt(6.0);
        for (int i = 0; i < 6; ++i) v[i] = inv;
        TangentIntegrator ti{c, config.dt, config.blow_up_bound};
        long in_window = 0;
        for (long step = 1; step <= nsteps; ++step) {
            if (!ti.step(s, v)) {
                LyapunovResult r = finish_lyapunov(window_rates, renorm_interval);
                r.diverged = true;
                r.converged = false;
                return r;
            }
            if (++in_window == steps_per_window) {
                double norm = 0;
                for (double x : v) norm += x * x;
                norm = std::sqrt(norm);
                if (step > skip_steps)
                    window_rates.push_back(std::log(norm) / renorm_interval);
                for (int i = 0; i < 6; ++i) v[i] /= norm;
                in_window = 0;
            }
        }
        return finish_lyapunov(window_rates, renorm_interval);
    }

    // two-trajectory variant with finite separation, renormalized each window
    const double sep0 = 1e-8;
    double s2[6];
    const double inv = sep0 / std::sqrt(6.0);
    for (int i = 0; i < 6; ++i) s2[i] = s[i] + inv;
    long in_window = 0;
    for (long step = 1; step <= nsteps; ++step) {
        const bool ok1 = rk4_step_raw(c, config.dt, s, config.blow_up_bound);
        const bool ok2 = rk4_step_raw(c, config.dt, s2, config.blow_up_bound);
        if (!ok1 || !ok2) {
            LyapunovResult r = finish_lyapunov(window_rates, renorm_interval);
            r.diverged = true;
            r.converged = false;
            return r;
        }
        if (++in_window == steps_per_window) {
            double norm = 0;
            for (int i = 0; i < 6; ++i) norm += (s2[i] - s[i]) * (s2[i] - s[i]);
            norm = std::sqrt(norm);
            if (norm == 0.0) norm = 1e-300;
            if (step > skip_steps)
                window_rates.push_back(std::log(norm / sep0) / renorm_interval);
            for (int i = 0; i < 6; ++i) s2[i] = s[i] + (s2[i] - s[i]) * (sep0 / norm);
            in_window = 0;
        }
    }
    return finish_lyapunov(window_rates, renorm_interval);
}

std::string to_string(AttractorClass c) {
    switch (c) {
        case AttractorClass::FixedPointAttractor: return "fixed_point";
        case AttractorClass::Periodic: return "periodic";
        case AttractorClass::QuasiPeriodic: return "quasi_periodic";
        case AttractorClass::Chaotic: return "chaotic";
        case AttractorClass::Diverged: return "diverged";
        case AttractorClass::NoOscillation: return "no_oscillation";
        case AttractorClass::Unclassifiable: return "unclassifiable";
    }
    return "unclassifiable";
}

AttractorClass classify_attractor(const Trajectory& traj, const PeakSet& peaks,
                                  const LyapunovResult& lyap, const ClassifyOptions& opts) {
    if (traj.terminated_early || lyap.diverged) return AttractorClass::Diverged;
    const auto states = traj.post_transient_states();
    if (states.empty()) return AttractorClass::Unclassifiable;

    double scale = 0;
    for (const StateVector& s : states) scale = std::max(scale, s.max_abs());
    scale = std::max(scale, 1e-300);

    // terminal drift over the last tenth of the record
    const std::size_t tail = std::max<std::size_t>(2, traj.states.size() / 10);
    const StateVector& last = traj.states.back();
    double drift = 0;
    for (std::size_t i = traj.states.size() - tail; i < traj.states.size(); ++i)
        for (int k = 0; k < 6; ++k)
            drift = std::max(drift, std::abs(traj.states[i][k] - last[k]));
    if (drift < opts.fp_drift_tol * scale) return AttractorClass::FixedPointAttractor;
    // a strictly contracting trajectory is a point attractor even while the
    // slow mechanical transient is still ringing (decay times ~2/gamma far
    // exceed practical horizons)
    if (lyap.converged && lyap.lambda_max < opts.fp_lambda)
        return AttractorClass::FixedPointAttractor;

    if (peaks.empty() || peaks.spread() < opts.no_osc_tol * scale)
        return AttractorClass::NoOscillation;

    if (!lyap.converged) return AttractorClass::Unclassifiable;
    if (lyap.lambda_max > opts.chaos_lambda) return AttractorClass::Chaotic;

    const int clusters = peak_cluster_count(peaks, opts.cluster_rel_gap);
    if (clusters <= opts.max_periodic_clusters &&
        max_cluster_width_rel(peaks, opts.cluster_rel_gap) <= opts.cluster_rel_gap)
        return AttractorClass::Periodic;
    return AttractorClass::QuasiPeriodic;
}

double hausdorff_distance_2d(std::span<const double> ax, std::span<const double> ay,
                             std::span<const double> bx, std::span<const double> by,
                             std::size_t cap) {
    if (ax.empty() || bx.empty()) return std::numeric_limits<double>::infinity();
    const std::size_t sa = std::max<std::size_t>(1, ax.size() / cap);
    const std::size_t sb = std::max<std::size_t>(1, bx.size() / cap);
    auto directed = [&](std::span<const double> px, std::span<const double> py, std::size_t sp,
                        std::span<const double> qx, std::span<const double> qy, std::size_t sq) {
        double worst = 0;
        for (std::size_t i = 0; i < px.size(); i += sp) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < qx.size(); j += sq) {
                const double dx = px[i] - qx[j], dy = py[i] - qy[j];
                best = std::min(best, dx * dx + dy * dy);
            }
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(directed(ax, ay, sa, bx, by, sb), directed(bx, by, sb, ax, ay, sa));
}

namespace {

struct Cloud {
    std::vector<double> x, y;
    double diameter(std::size_t cap = 1024) const {
        if (x.empty()) return 0;
        const std::size_t s = std::max<std::size_t>(1, x.size() / cap);
        double best = 0;
        for (std::size_t i = 0; i < x.size(); i += s)
            for (std::size_t j = i + s; j < x.size(); j += s) {
                const double dx = x[i] - x[j], dy = y[i] - y[j];
                best = std::max(best, dx * dx + dy * dy);
            }
        return std::sqrt(best);
    }
};

Cloud projection(std::span<const StateVector> states, int vx, int vy) {
    Cloud c;
    c.x.reserve(states.size());
    c.y.reserve(states.size());
    for (const StateVector& s : states) {
        c.x.push_back(s[vx]);
        c.y.push_back(s[vy]);
    }
    return c;
}

AttractorClass classify_run(const Trajectory& traj, const SystemParams& params,
                            const IntegrationConfig& config, const StateVector& ic,
                            double* lambda_out) {
    LyapunovResult ly;
    if (!traj.terminated_early)
        ly = lyapunov_max(ic, params, config);
    else
        ly.diverged = true;
    if (lambda_out) *lambda_out = ly.lambda_max;
    const PeakSet pk = traj.terminated_early ? PeakSet{} : local_maxima(traj, 0);
    return classify_attractor(traj, pk, ly);
}

}  // namespace

BistabilityReport bistability_probe(const SystemParams& params, const StateVector& ic_a,
                                    const StateVector& ic_b, const IntegrationConfig& config) {
    if (!ic_a.finite() || !ic_b.finite())
        throw std::invalid_argument("bistability_probe: non-finite initial condition");
    BistabilityReport rep;
    const Trajectory ta = integrate(ic_a, params, config);
    const Trajectory tb = integrate(ic_b, params, config);
    rep.diverged_a = ta.terminated_early;
    rep.diverged_b = tb.terminated_early;
    rep.class_a = classify_run(ta, params, config, ic_a, nullptr);
    rep.class_b = classify_run(tb, params, config, ic_b, nullptr);
    if (rep.diverged_a || rep.diverged_b) {
        rep.same_attractor = false;
        return rep;
    }
    const auto sa = ta.post_transient_states();
    const auto sb = tb.post_transient_states();
    const Cloud oa = projection(sa, 0, 1), ob = projection(sb, 0, 1);
    const Cloud ma = projection(sa, 2, 3), mb = projection(sb, 2, 3);
    rep.hausdorff_optical = hausdorff_distance_2d(oa.x, oa.y, ob.x, ob.y);
    rep.hausdorff_mech = hausdorff_distance_2d(ma.x, ma.y, mb.x, mb.y);
    rep.diameter_optical = std::max(oa.diameter(), ob.diameter());
    rep.diameter_mech = std::max(ma.diameter(), mb.diameter());
    const bool opt_same = rep.hausdorff_optical <= 0.01 * std::max(rep.diameter_optical, 1e-300);
    const bool mech_same = rep.hausdorff_mech <= 0.01 * std::max(rep.diameter_mech, 1e-300);
    rep.same_attractor = opt_same && mech_same;
    return rep;
}

std::string to_string(SweepParam p) {
    switch (p) {
        case SweepParam::Jm: return "jm";
        case SweepParam::Delta: return "delta";
        case SweepParam::AlphaIn: return "alpha_in";
        case SweepParam::Theta: return "theta";
        case SweepParam::Kappa: return "kappa";
    }
    return "jm";
}

SystemParams with_param(SystemParams base, SweepParam which, double value) {
    switch (which) {
        case SweepParam::Jm: base.jm = value; break;
        case SweepParam::Delta: base.delta = value; break;
        case SweepParam::AlphaIn: base.alpha_in = value; break;
        case SweepParam::Theta: base.theta = value; break;
        case SweepParam::Kappa: base.kappa = value; break;
    }
    return base;
}

std::vector<HysteresisPoint> hysteresis_sweep(const SystemParams& base, SweepParam which,
                                              double lo, double hi, int n_points,
                                              SweepDirection direction,
                                              const IntegrationConfig& config,
                                              const StateVector& first_ic) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || n_points < 2)
        throw std::invalid_argument("hysteresis_sweep: bad range");
    std::vector<double> values(n_points);
    for (int i = 0; i < n_points; ++i)
        values[i] = lo + (hi - lo) * static_cast<double>(i) / (n_points - 1);
    if (direction == SweepDirection::Down) std::reverse(values.begin(), values.end());

    std::vector<HysteresisPoint> out;
    out.reserve(n_points);
    StateVector ic = first_ic;
    for (double v : values) {
        const SystemParams p = with_param(base, which, v);
        HysteresisPoint hp;
        hp.value = v;
        Trajectory traj = integrate(ic, p, config);
        if (traj.terminated_early) {
            // restart the chain from rest and note it
            hp.restarted = true;
            ic = StateVector{};
            traj = integrate(ic, p, config);
        }
        hp.diverged = traj.terminated_early;
        if (!hp.diverged) {
            hp.peaks = local_maxima(traj, 0);
            hp.peaks_b1r = local_maxima(traj, 2);
            LyapunovResult ly = lyapunov_max(ic, p, config);
            hp.lambda_max = ly.lambda_max;
            hp.cls = classify_attractor(traj, hp.peaks, ly);
            ic = traj.states.back();
        } else {
            hp.cls = AttractorClass::Diverged;
            ic = StateVector{};
        }
        out.push_back(std::move(hp));
    }
    return out;
}

}  // namespace omdyn
