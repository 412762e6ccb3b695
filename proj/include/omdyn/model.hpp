// Semiclassical model of one optical cavity coupled to two mechanical
// resonators with phase-dependent phonon hopping: parameter set, equations
// of motion and their Jacobian.
#pragma once

#include <array>
#include <complex>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace omdyn {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Complex = std::complex<double>;

// The real-valued form of the equations of motion circulates in two variants
// that differ in the sign of the (Delta+G)*alpha_i term of the alpha_r
// equation and in which mechanical quadrature carries the radiation-pressure
// force. `Paper` is the published printed form; `Rederived` is the direct
// real/imaginary expansion of the complex equations (the bounded one).
enum class Convention { Paper, Rederived };

struct SystemParams {
    double omega1 = 1.0;        // mechanical frequency, units of omega_m
    double omega2 = 1.0005;     // second resonator frequency
    double kappa = 7.3e-2;      // cavity decay rate
    double delta = 1.0;         // laser-cavity detuning
    double g1 = 1.077e-4;       // single-photon optomechanical coupling 1
    double g2 = 1.077e-4;       // coupling 2
    double gamma1 = 1.077e-5;   // mechanical damping 1
    double gamma2 = 1.077e-5;   // mechanical damping 2
    double jm = 2e-4;           // phonon hopping rate
    double theta = 1.5707963267948966;  // hopping phase, radians
    double alpha_in = 0.0;      // coherent drive amplitude
    Convention convention = Convention::Rederived;

    bool valid() const;
    void require_valid() const;  // throws std::invalid_argument
};

struct StateVector {
    std::array<double, 6> v{};  // ar, ai, b1r, b1i, b2r, b2i

    double& ar() { return v[0]; }
    double& ai() { return v[1]; }
    double& b1r() { return v[2]; }
    double& b1i() { return v[3]; }
    double& b2r() { return v[4]; }
    double& b2i() { return v[5]; }
    double ar() const { return v[0]; }
    double ai() const { return v[1]; }
    double b1r() const { return v[2]; }
    double b1i() const { return v[3]; }
    double b2r() const { return v[4]; }
    double b2i() const { return v[5]; }
    double& operator[](int i) { return v[i]; }
    double operator[](int i) const { return v[i]; }

    Complex alpha() const { return {v[0], v[1]}; }
    Complex beta1() const { return {v[2], v[3]}; }
    Complex beta2() const { return {v[4], v[5]}; }
    static StateVector from_complex(Complex a, Complex b1, Complex b2) {
        return StateVector{{a.real(), a.imag(), b1.real(), b1.imag(),
                            b2.real(), b2.imag()}};
    }

    bool finite() const;
    // any component beyond the bound (or non-finite) counts as blown up
    bool blown_up(double bound) const;
    double max_abs() const;
};

using DerivativeVector = StateVector;

// Parameter-derived constants of the vector field, precomputed once so the
// integrator's inner loop does no trig and no branching on raw params.
struct ModelCoeffs {
    double omega1, omega2, half_kappa, delta, g1, g2;
    double half_gamma1, half_gamma2, jm, sin_th, cos_th, drive;  // drive = sqrt(kappa)*alpha_in
    bool paper_form;

    static ModelCoeffs from(const SystemParams& p);
};

// Vector field on raw arrays; hot path shared by the integrator and sweeps.
void rhs_raw(const ModelCoeffs& c, const double s[6], double out[6]);
void jacobian_raw(const ModelCoeffs& c, const double s[6], double out[6][6]);

DerivativeVector rhs(const StateVector& state, const SystemParams& params);

// Complex-amplitude equations of motion; the cross-check route for the
// Rederived convention.
std::array<Complex, 3> rhs_complex(Complex alpha, Complex beta1, Complex beta2,
                                   const SystemParams& params);

Mat6 jacobian(const StateVector& state, const SystemParams& params);

}  // namespace omdyn
