#pragma once

#include <utility>

#include "wmdisc/algebra.hpp"

namespace wmdisc {

// ---------------------------------------------------------------------------
// State pair parametrized by the similarity parameter eta. In the x basis:
//   psi1 = (|0>_x - |1>_x)/sqrt2
//   psi2 = [(eta + 1/sqrt2)|0>_x + (eta - 1/sqrt2)|1>_x] / sqrt(1 + 2|eta|^2)
// so |<psi1|psi2>| = 1/sqrt(1 + 2|eta|^2).
// ---------------------------------------------------------------------------
struct StatePair {
    PureQubit psi1;
    PureQubit psi2;
    complexd eta;
};

StatePair make_state_pair(complexd eta);

// Impulse coupling of strength g about a unit axis n, g in [0, pi].
struct CouplingSpec {
    CouplingSpec(double g_, BlochVector axis_);
    double g;
    BlochVector axis;
};

// U = cos(g) I - i sin(g) (n.sigma) x (n.sigma); exact because the squared
// generator is the identity.
TwoQubitOperator coupling_unitary(const CouplingSpec& spec);

// Projector direction for the postselection on qubit A: Pi_f = (I + f.sigma)/2.
struct PostselectionSpec {
    explicit PostselectionSpec(BlochVector f_);
    BlochVector f;
};

struct PostselectedOutcome {
    QubitState pointer_state;
    double success_prob;
};

// Exact pipeline: joint state rho_A x rho_B, unitary coupling, postselection
// of qubit A along f, partial trace. Throws degenerate_postselection_error
// when the success probability falls below kDegenerateProbTol.
PostselectedOutcome evolve_postselect(const QubitState& rho_a,
                                      const QubitState& rho_b,
                                      const TwoQubitOperator& u,
                                      const PostselectionSpec& f);

// Bloch-level convenience wrapper around the exact pipeline.
struct BlochOutcome {
    BlochVector pointer;
    double success_prob;
};

BlochOutcome evolve_postselect_bloch(BlochVector k_a, BlochVector k_b,
                                     BlochVector axis, double g, BlochVector f);

// Closed-form pointer states after a successful postselection, for the
// canonical protocol (coupling axis x, pointer starts in |0>_z, postselection
// on |0>_z):
//   phi1 = |1>_z
//   phi2 = (sqrt2 eta cos g |0>_z - i sin g |1>_z) / sqrt(2|eta|^2 cos^2 g + sin^2 g)
//
// phi1_zero_probability flags sin g = 0, where the phi1 branch occurs with
// probability zero but its formula is still well defined. eta = 0 together
// with sin g = 0 leaves both branches degenerate and throws.
struct PointerPair {
    PureQubit phi1;
    PureQubit phi2;
    bool phi1_zero_probability;
};

PointerPair pointer_states_analytic(complexd eta, double g);

// Closed-form postselection probabilities.
//   lambda1 = (2|eta|^2 cos^2 g + sin^2 g) / (1 + 2|eta|^2)
//   lambda2 = sin^2 g
// Note the crossed indexing: under the exact pipeline, lambda1 is the success
// probability when the source is psi2 (the eta-tilted state) and lambda2 when
// the source is psi1. The conventional subscripts are kept; only the sum and
// |lambda1 - lambda2| enter downstream results.
struct PostselectionProbs {
    double lambda1;
    double lambda2;
};

PostselectionProbs postselection_probs(complexd eta, double g);

// Classification of (eta, g) into the equal-prior regimes:
//   near_quarter_pi:        |g - pi/4| <= 0.01
//   eta_much_less_than_g:   |eta| <= g/10 and g <= 0.3
// near_quarter_pi takes precedence when both hold.
enum class Regime { near_quarter_pi, eta_much_less_than_g, neither };

Regime regime_check(complexd eta, double g);

const char* regime_name(Regime r);

// ---------------------------------------------------------------------------
// Bloch-vector update coefficients for the postselected pointer state,
//
//   k_B' = c1 k_B + c2 n + c3 (n x k_B)
//
// with, writing s = sin g, c = cos g:
//   alpha1 = c^2 (1 + f.k_A)
//   alpha2 = 2 s c  f.(n x k_A)
//   alpha3 = s^2 [1 + (n.k_A)(f.n) - f.(k_A - n (n.k_A))]
//   alpha4 = 2 s c (n.k_A + f.n)
//   D      = alpha1 + alpha2 (n.k_B) + alpha3
//   c1 = (alpha1 - alpha3)/D
//   c2 = (alpha2 + 2 alpha3 (n.k_B))/D
//   c3 = alpha4/D
//
// The factor 2 in the c2 numerator is required: it is validated against the
// exact 4x4 pipeline (for example, at g = pi/2 the pointer Bloch vector is
// the reflection 2(n.k_B)n - k_B, which only the factor-2 form reproduces).
// The projector term in alpha3 reads f.(n x (k_A x n)) = f.(k_A - n(n.k_A));
// both cross-product associations coincide for unit n.
//
// The postselection success probability equals D/2.
// ---------------------------------------------------------------------------
struct UpdateCoeffs {
    double c1, c2, c3;
    double alpha1, alpha2, alpha3, alpha4;

    double denominator() const { return alpha1 + alpha2 * n_dot_kb + alpha3; }
    double n_dot_kb; // cached n.k_B for the denominator
};

UpdateCoeffs bloch_update_coeffs(BlochVector k_a, BlochVector k_b,
                                 BlochVector f, BlochVector n, double g);

BlochVector reconstruct_pointer(const UpdateCoeffs& u, BlochVector k_b,
                                BlochVector n);

} // namespace wmdisc
