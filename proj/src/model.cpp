#include "omdyn/model.hpp"

#include <cmath>

namespace omdyn {

bool SystemParams::valid() const {
    const double all[] = {omega1, omega2, kappa,  delta, g1,       g2,
                          gamma1, gamma2, jm,     theta, alpha_in};
    for (double x : all)
        if (!std::isfinite(x)) return false;
    return kappa > 0 && gamma1 > 0 && gamma2 > 0 && jm >= 0;
}

void SystemParams::require_valid() const {
    if (!valid()) throw std::invalid_argument("SystemParams: invalid or non-finite parameters");
}

bool StateVector::finite() const {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

bool StateVector::blown_up(double bound) const {
    for (double x : v)
        if (!std::isfinite(x) || std::abs(x) > bound) return true;
    return false;
}

double StateVector::max_abs() const {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

ModelCoeffs ModelCoeffs::from(const SystemParams& p) {
    ModelCoeffs c;
    c.omega1 = p.omega1;
    c.omega2 = p.omega2;
    c.half_kappa = 0.5 * p.kappa;
    c.delta = p.delta;
    c.g1 = p.g1;
    c.g2 = p.g2;
    c.half_gamma1 = 0.5 * p.gamma1;
    c.half_gamma2 = 0.5 * p.gamma2;
    c.jm = p.jm;
    // reduce so the hopping phase is 2*pi-periodic bit-for-bit whenever the
    // shift by 2*pi is exactly representable
    const double two_pi = 6.283185307179586476925286766559;
    double th = std::remainder(p.theta, two_pi);
    c.sin_th = std::sin(th);
    c.cos_th = std::cos(th);
    c.drive = std::sqrt(p.kappa) * p.alpha_in;
    c.paper_form = (p.convention == Convention::Paper);
    return c;
}

void rhs_raw(const ModelCoeffs& c, const double s[6], double out[6]) {
    const double ar = s[0], ai = s[1], b1r = s[2], b1i = s[3], b2r = s[4], b2i = s[5];
    const double u = c.delta + 2.0 * c.g1 * b1r + 2.0 * c.g2 * b2r;
    const double nph = ar * ar + ai * ai;
    if (c.paper_form) {
        out[0] = -c.half_kappa * ar + u * ai + c.drive;
        out[1] = u * ar - c.half_kappa * ai;
        out[2] = c.omega1 * b1i - c.half_gamma1 * b1r +
                 c.jm * (b2r * c.sin_th + b2i * c.cos_th) - c.g1 * nph;
        out[3] = -c.omega1 * b1r - c.half_gamma1 * b1i -
                 c.jm * (b2r * c.cos_th - b2i * c.sin_th);
        out[4] = c.omega2 * b2i - c.half_gamma2 * b2r -
                 c.jm * (b1r * c.sin_th - b1i * c.cos_th) - c.g2 * nph;
        out[5] = -c.omega2 * b2r - c.half_gamma2 * b2i -
                 c.jm * (b1r * c.cos_th + b1i * c.sin_th);
    } else {
        out[0] = -c.half_kappa * ar - u * ai + c.drive;
        out[1] = u * ar - c.half_kappa * ai;
        out[2] = c.omega1 * b1i - c.half_gamma1 * b1r +
                 c.jm * (b2r * c.sin_th + b2i * c.cos_th);
        out[3] = -c.omega1 * b1r - c.half_gamma1 * b1i -
                 c.jm * (b2r * c.cos_th - b2i * c.sin_th) - c.g1 * nph;
        out[4] = c.omega2 * b2i - c.half_gamma2 * b2r -
                 c.jm * (b1r * c.sin_th - b1i * c.cos_th);
        out[5] = -c.omega2 * b2r - c.half_gamma2 * b2i -
                 c.jm * (b1r * c.cos_th + b1i * c.sin_th) - c.g2 * nph;
    }
}

void jacobian_raw(const ModelCoeffs& c, const double s[6], double out[6][6]) {
    const double ar = s[0], ai = s[1], b1r = s[2], b2r = s[4];
    const double u = c.delta + 2.0 * c.g1 * b1r + 2.0 * c.g2 * b2r;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) out[i][j] = 0.0;
    if (c.paper_form) {
        out[0][0] = -c.half_kappa; out[0][1] = u;
        out[0][2] = 2.0 * c.g1 * ai; out[0][4] = 2.0 * c.g2 * ai;
        out[1][0] = u; out[1][1] = -c.half_kappa;
        out[1][2] = 2.0 * c.g1 * ar; out[1][4] = 2.0 * c.g2 * ar;
        out[2][0] = -2.0 * c.g1 * ar; out[2][1] = -2.0 * c.g1 * ai;
        out[2][2] = -c.half_gamma1; out[2][3] = c.omega1;
        out[2][4] = c.jm * c.sin_th; out[2][5] = c.jm * c.cos_th;
        out[3][2] = -c.omega1; out[3][3] = -c.half_gamma1;
        out[3][4] = -c.jm * c.cos_th; out[3][5] = c.jm * c.sin_th;
        out[4][0] = -2.0 * c.g2 * ar; out[4][1] = -2.0 * c.g2 * ai;
        out[4][2] = -c.jm * c.sin_th; out[4][3] = c.jm * c.cos_th;
        out[4][4] = -c.half_gamma2; out[4][5] = c.omega2;
        out[5][2] = -c.jm * c.cos_th; out[5][3] = -c.jm * c.sin_th;
        out[5][4] = -c.omega2; out[5][5] = -c.half_gamma2;
    } else {
        out[0][0] = -c.half_kappa; out[0][1] = -u;
        out[0][2] = -2.0 * c.g1 * ai; out[0][4] = -2.0 * c.g2 * ai;
        out[1][0] = u; out[1][1] = -c.half_kappa;
        out[1][2] = 2.0 * c.g1 * ar; out[1][4] = 2.0 * c.g2 * ar;
        out[2][2] = -c.half_gamma1; out[2][3] = c.omega1;
        out[2][4] = c.jm * c.sin_th; out[2][5] = c.jm * c.cos_th;
        out[3][0] = -2.0 * c.g1 * ar; out[3][1] = -2.0 * c.g1 * ai;
        out[3][2] = -c.omega1; out[3][3] = -c.half_gamma1;
        out[3][4] = -c.jm * c.cos_th; out[3][5] = c.jm * c.sin_th;
        out[4][2] = -c.jm * c.sin_th; out[4][3] = c.jm * c.cos_th;
        out[4][4] = -c.half_gamma2; out[4][5] = c.omega2;
        out[5][0] = -2.0 * c.g2 * ar; out[5][1] = -2.0 * c.g2 * ai;
        out[5][2] = -c.jm * c.cos_th; out[5][3] = -c.jm * c.sin_th;
        out[5][4] = -c.omega2; out[5][5] = -c.half_gamma2;
    }
}

DerivativeVector rhs(const StateVector& state, const SystemParams& params) {
    params.require_valid();
    if (!state.finite()) throw std::invalid_argument("rhs: non-finite state");
    const ModelCoeffs c = ModelCoeffs::from(params);
    DerivativeVector out;
    rhs_raw(c, state.v.data(), out.v.data());
    return out;
}

std::array<Complex, 3> rhs_complex(Complex alpha, Complex beta1, Complex beta2,
                                   const SystemParams& params) {
    params.require_valid();
    for (Complex z : {alpha, beta1, beta2})
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("rhs_complex: non-finite amplitude");
    const Complex i(0.0, 1.0);
    const double two_pi = 6.283185307179586476925286766559;
    const double th = std::remainder(params.theta, two_pi);
    const Complex hop = std::polar(params.jm, th);
    const double nph = std::norm(alpha);
    const Complex da = (i * params.delta - 0.5 * params.kappa) * alpha +
                       i * (params.g1 * 2.0 * beta1.real() + params.g2 * 2.0 * beta2.real()) * alpha +
                       std::sqrt(params.kappa) * params.alpha_in;
    const Complex db1 = -(i * params.omega1 + 0.5 * params.gamma1) * beta1 -
                        i * hop * beta2 - i * params.g1 * nph;
    const Complex db2 = -(i * params.omega2 + 0.5 * params.gamma2) * beta2 -
                        i * std::conj(hop) * beta1 - i * params.g2 * nph;
    return {da, db1, db2};
}

Mat6 jacobian(const StateVector& state, const SystemParams& params) {
    params.require_valid();
    if (!state.finite()) throw std::invalid_argument("jacobian: non-finite state");
    const ModelCoeffs c = ModelCoeffs::from(params);
    double raw[6][6];
    jacobian_raw(c, state.v.data(), raw);
    Mat6 J;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) J(i, j) = raw[i][j];
    return J;
}

}  // namespace omdyn
