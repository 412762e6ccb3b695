// Linear stability of equilibria: characteristic polynomial via the
// Faddeev-LeVerrier trace recursion, a full Routh-Hurwitz array, and the
// eigenvalue route kept as the authoritative cross-check.
#pragma once

#include <array>

#include "omdyn/model.hpp"

namespace omdyn {

struct CharPoly6 {
    // monic: x^6 + c[0] x^5 + c[1] x^4 + c[2] x^3 + c[3] x^2 + c[4] x + c[5]
    std::array<double, 6> c{};
};

CharPoly6 char_poly_from_jacobian(const Mat6& J);

enum class RouthVerdict { Stable, Unstable, Marginal };

// Full Routh array on the monic degree-6 polynomial. Zero pivots are replaced
// by eps = 1e-12 of the running column scale and downgrade the verdict to
// Marginal.
RouthVerdict routh_hurwitz(const CharPoly6& p);

struct EigenStability {
    std::array<Complex, 6> eigenvalues{};
    double max_real_part = 0;
    bool stable = false;
};

EigenStability eigen_stability(const Mat6& J);

enum class StabilityMethod { RouthHurwitz, Eigenvalues, Both };

struct StabilityVerdict {
    bool stable = false;        // eigenvalue verdict, authoritative
    StabilityMethod method = StabilityMethod::Both;
    double max_real_part = 0;
    bool agreement = true;      // Routh-Hurwitz concurs (Marginal counts as disagreement)
    bool marginal = false;      // |max_real_part| < 1e-9
    RouthVerdict routh = RouthVerdict::Stable;
    std::array<Complex, 6> eigenvalues{};
};

// Requires fp_state to actually be an equilibrium (max-norm of the vector
// field <= 1e-6); throws std::invalid_argument otherwise.
StabilityVerdict classify_fixed_point(const StateVector& fp_state,
                                      const SystemParams& params);

}  // namespace omdyn
