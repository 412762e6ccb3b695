#include "omdyn/stability.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace omdyn {

CharPoly6 char_poly_from_jacobian(const Mat6& J) {
    // Faddeev-LeVerrier: M1 = J, c_k = -tr(J M_k)/k with M_{k+1} = J M_k + c_k I.
    // Exact in rational arithmetic; here plain doubles.
    CharPoly6 p;
    Mat6 M = Mat6::Identity();
    for (int k = 1; k <= 6; ++k) {
        M = J * M;
        const double ck = -M.trace() / k;
        p.c[k - 1] = ck;
        M += ck * Mat6::Identity();
    }
    return p;
}

RouthVerdict routh_hurwitz(const CharPoly6& p) {
    for (double c : p.c)
        if (!std::isfinite(c)) return RouthVerdict::Marginal;
    // rows of the Routh array for a monic degree-6 polynomial, 4 columns
    double rows[7][4] = {};
    rows[0][0] = 1.0;    rows[0][1] = p.c[1]; rows[0][2] = p.c[3]; rows[0][3] = p.c[5];
    rows[1][0] = p.c[0]; rows[1][1] = p.c[2]; rows[1][2] = p.c[4]; rows[1][3] = 0.0;
    double scale = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int j = 0; j < 4; ++j) scale = std::max(scale, std::abs(rows[r][j]));
    bool used_eps = false;
    for (int r = 2; r < 7; ++r) {
        double pivot = rows[r - 1][0];
        // a pivot below 1e-12 of the running column scale is numerically zero
        if (std::abs(pivot) <= 1e-12 * std::max(scale, 1e-300)) {
            pivot = 1e-12 * std::max(scale, 1e-300);
            used_eps = true;
        }
        for (int j = 0; j < 3; ++j) {
            rows[r][j] = (pivot * rows[r - 2][j + 1] - rows[r - 2][0] * rows[r - 1][j + 1]) / pivot;
            scale = std::max(scale, std::abs(rows[r][j]));
        }
        rows[r][3] = 0.0;
    }
    // a clear sign change is conclusive even when a zero pivot was patched
    for (int r = 0; r < 7; ++r)
        if (rows[r][0] < -1e-9 * scale) return RouthVerdict::Unstable;
    if (used_eps) return RouthVerdict::Marginal;
    for (int r = 0; r < 7; ++r) {
        if (rows[r][0] <= 0.0) return RouthVerdict::Marginal;
    }
    return RouthVerdict::Stable;
}

EigenStability eigen_stability(const Mat6& J) {
    if (!J.allFinite()) throw std::invalid_argument("eigen_stability: non-finite matrix");
    Eigen::EigenSolver<Mat6> solver(J, /*computeEigenvectors=*/false);
    EigenStability out;
    double max_re = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 6; ++i) {
        out.eigenvalues[i] = solver.eigenvalues()(i);
        max_re = std::max(max_re, out.eigenvalues[i].real());
    }
    out.max_real_part = max_re;
    out.stable = max_re < 0.0;
    return out;
}

StabilityVerdict classify_fixed_point(const StateVector& fp_state,
                                      const SystemParams& params) {
    params.require_valid();
    const DerivativeVector f = rhs(fp_state, params);
    double resid = 0;
    for (double x : f.v) resid = std::max(resid, std::abs(x));
    if (resid > 1e-6)
        throw std::invalid_argument("classify_fixed_point: state is not a fixed point (residual " +
                                    std::to_string(resid) + ")");
    const Mat6 J = jacobian(fp_state, params);
    const EigenStability es = eigen_stability(J);
    const RouthVerdict rv = routh_hurwitz(char_poly_from_jacobian(J));

    StabilityVerdict v;
    v.stable = es.stable;
    v.method = StabilityMethod::Both;
    v.max_real_part = es.max_real_part;
    v.routh = rv;
    v.eigenvalues = es.eigenvalues;
    v.marginal = std::abs(es.max_real_part) < 1e-9;
    v.agreement = (rv == RouthVerdict::Stable && es.stable) ||
                  (rv == RouthVerdict::Unstable && !es.stable);
    return v;
}

}  // namespace omdyn
