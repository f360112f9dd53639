#pragma once

#include <array>

#include "wmdisc/algebra.hpp"
#include "wmdisc/weak_measurement.hpp"

namespace wmdisc {

// ---------------------------------------------------------------------------
// Three-outcome measurement {pi1, pi2, piQ}: identify state 1, identify
// state 2, inconclusive. pi1 + pi2 + piQ = I holds exactly by construction.
//
// Positivity is diagnosed, not enforced: the deviation models below rotate a
// POVM Bloch vector without re-normalizing it, so elements can pick up a
// small negative eigenvalue (O(eps*delta) for pi1 when the deviation has a
// component against the nominal tilt, O(eps^4) for piQ from the truncated
// prefactor). validate() accepts eigenvalues down to -10*eps^4 - 1e-12 and
// flags anything below -1e-9.
// ---------------------------------------------------------------------------
struct PovmSet {
    Complex2x2 pi1;
    Complex2x2 pi2;
    Complex2x2 piQ;

    double completeness_error() const;
    // Smallest eigenvalue over all three elements.
    double min_eigenvalue() const;
};

struct PovmDiagnostics {
    double completeness_error;
    double min_eig_pi1;
    double min_eig_pi2;
    double min_eig_piQ;
    bool acceptable; // all eigenvalues >= -10*eps^4 - 1e-12
    bool flagged;    // some eigenvalue < -1e-9
};

PovmDiagnostics validate_povm(const PovmSet& povm, double eps);

struct DiscriminationReport {
    double p_success;      // (Tr(rho1 pi1) + Tr(rho2 pi2)) / 2
    double p_error;        // (Tr(rho1 pi2) + Tr(rho2 pi1)) / 2
    double p_inconclusive; // (Tr(rho1 piQ) + Tr(rho2 piQ)) / 2
    // conditional[i][j] = Tr(rho_{i+1} pi_j), j in {0: pi1, 1: pi2, 2: piQ}
    std::array<std::array<double, 3>, 2> conditional;
};

// Maximal success probability of unambiguous discrimination for two
// equiprobable pure states with overlap |<psi1|psi2>|: 1 - overlap.
double idp_limit(double overlap);

// The same bound expressed through eta: 1 - 1/sqrt(1 + 2|eta|^2).
double idp_limit_eta(complexd eta);

// Overall protocol success probability: mean postselection probability times
// the unambiguous-discrimination bound for the pointer pair,
//   p = (lambda1 + lambda2)/2 * (1 - |<phi1|phi2>|).
// Returns 0 for the fully degenerate point eta = 0, sin g = 0.
double overall_success_exact(complexd eta, double g);

// Weak-coupling approximation p = |eta|^2 cos^2 g, valid only in the
// eta-much-less-than-g regime (|eta| <= g/10, g <= 0.3); throws regime_error
// outside it.
double overall_success_approx(complexd eta, double g);

// Optimal equal-prior unambiguous POVM for two distinct pure states:
// pi_i proportional to the projector onto the other state's orthogonal
// complement, scaled by 1/(1 + overlap). Zero cross probabilities, success
// probability 1 - overlap.
PovmSet optimal_unambiguous_povm(const QubitState& rho1, const QubitState& rho2);

// Deviation-model POVM for direct discrimination of the source pair
//   k1 = -Z,  k2 = -sqrt(1-eps^2) Z + eps Y,
// with a deviation delta_f of pi1's Bloch vector in the X-Y plane:
//   pi1 = [I + (sqrt(1 - (eps + df.Y)^2 - (df.X)^2) Z - eps Y + df).sigma] / (4 - eps^2/4)
//   pi2 = [I + Z.sigma] / (4 - eps^2/4)
// Preconditions: 0 <= eps <= 0.1, delta_f.Z = 0, sqrt argument nonnegative.
PovmSet povm_conventional(double eps, BlochVector delta_f);

// Deviation-model POVM for discriminating the first-order pointer pair
//   k1 = -Z,  k2 = -sqrt(1-(2eps/g)^2) Z + (2eps/g) X:
//   pi1 = [I + (sqrt(1 - (2eps/g + df.X)^2 - (df.Y)^2) Z - (2eps/g) X + df).sigma] / (4 - eps^2/g^2)
//   pi2 = [I + Z.sigma] / (4 - eps^2/g^2)
// Preconditions: 0 <= eps <= 0.1, 2eps/g <= 1, delta_f.Z = 0, sqrt argument
// nonnegative.
PovmSet povm_weak(double eps, double g, BlochVector delta_f);

// Equal-prior outcome probabilities of measuring `povm` on rho1/rho2.
DiscriminationReport discriminate(const QubitState& rho1, const QubitState& rho2,
                                  const PovmSet& povm);

} // namespace wmdisc
