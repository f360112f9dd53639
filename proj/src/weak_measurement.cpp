#include "wmdisc/weak_measurement.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wmdisc/errors.hpp"

namespace wmdisc {

namespace {

Complex2x2 pauli_dot(BlochVector v) {
    return Complex2x2::pauli_combination(0.0, v);
}

} // namespace

StatePair make_state_pair(complexd eta) {
    if (!std::isfinite(eta.real()) || !std::isfinite(eta.imag()))
        throw std::invalid_argument("make_state_pair: eta must be finite");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double norm = std::sqrt(1.0 + 2.0 * std::norm(eta));
    PureQubit psi1 = PureQubit::from_x_basis(inv_sqrt2, -inv_sqrt2);
    PureQubit psi2 = PureQubit::from_x_basis((eta + inv_sqrt2) / norm,
                                             (eta - inv_sqrt2) / norm);
    return {psi1, psi2, eta};
}

CouplingSpec::CouplingSpec(double g_, BlochVector axis_) : g(g_), axis(axis_) {
    if (!(g >= 0.0 && g <= std::numbers::pi))
        throw std::invalid_argument("CouplingSpec: g outside [0, pi]");
    if (std::abs(axis.norm() - 1.0) > kAlgebraTol)
        throw std::invalid_argument("CouplingSpec: axis is not a unit vector");
}

TwoQubitOperator coupling_unitary(const CouplingSpec& spec) {
    const Complex2x2 ns = pauli_dot(spec.axis);
    const TwoQubitOperator generator = tensor(ns, ns);
    return complexd{std::cos(spec.g), 0.0} * TwoQubitOperator::identity() +
           complexd{0.0, -std::sin(spec.g)} * generator;
}

PostselectionSpec::PostselectionSpec(BlochVector f_) : f(f_) {
    if (std::abs(f.norm() - 1.0) > kAlgebraTol)
        throw std::invalid_argument("PostselectionSpec: f is not a unit vector");
}

PostselectedOutcome evolve_postselect(const QubitState& rho_a,
                                      const QubitState& rho_b,
                                      const TwoQubitOperator& u,
                                      const PostselectionSpec& f) {
    const TwoQubitOperator joint = tensor(rho_a.matrix(), rho_b.matrix());
    const TwoQubitOperator evolved = u * joint * u.adjoint();
    const Complex2x2 projector =
        complexd{0.5, 0.0} * Complex2x2::pauli_combination(1.0, f.f);
    const TwoQubitOperator selected =
        tensor(projector, Complex2x2::identity()) * evolved;
    Complex2x2 pointer = partial_trace_A(selected).hermitized();
    const double p = pointer.trace().real();
    if (p < kDegenerateProbTol)
        throw degenerate_postselection_error(
            "evolve_postselect: success probability " + std::to_string(p) +
            " below degeneracy threshold");
    pointer = complexd{1.0 / p, 0.0} * pointer;
    // Rounding in the 4x4 products is absolute (~1e-16) and is divided by p,
    // so the positivity check is relaxed accordingly.
    const double psd_tol = std::max(kAlgebraTol, 1e-14 / p);
    return {QubitState::from_matrix(pointer, kAlgebraTol, psd_tol), p};
}

BlochOutcome evolve_postselect_bloch(BlochVector k_a, BlochVector k_b,
                                     BlochVector axis, double g, BlochVector f) {
    const auto outcome =
        evolve_postselect(bloch_to_density(k_a), bloch_to_density(k_b),
                          coupling_unitary(CouplingSpec(g, axis)),
                          PostselectionSpec(f));
    return {outcome.pointer_state.bloch(), outcome.success_prob};
}

PointerPair pointer_states_analytic(complexd eta, double g) {
    const double s = std::sin(g);
    const double c = std::cos(g);
    const double denom_sq = 2.0 * std::norm(eta) * c * c + s * s;
    if (denom_sq < kDegenerateProbTol)
        throw degenerate_postselection_error(
            "pointer_states_analytic: both branches degenerate (eta = 0 and sin g = 0)");
    const double denom = std::sqrt(denom_sq);
    PureQubit phi1 = PureQubit::from_z_basis(0.0, 1.0);
    PureQubit phi2 = PureQubit::from_z_basis(std::sqrt(2.0) * eta * c / denom,
                                             complexd{0.0, -s / denom});
    return {phi1, phi2, s * s < kDegenerateProbTol};
}

PostselectionProbs postselection_probs(complexd eta, double g) {
    const double s2 = std::sin(g) * std::sin(g);
    const double c2 = std::cos(g) * std::cos(g);
    const double eta2 = std::norm(eta);
    return {(2.0 * eta2 * c2 + s2) / (1.0 + 2.0 * eta2), s2};
}

Regime regime_check(complexd eta, double g) {
    if (std::abs(g - std::numbers::pi / 4.0) <= 0.01)
        return Regime::near_quarter_pi;
    if (std::abs(eta) <= g / 10.0 && g <= 0.3)
        return Regime::eta_much_less_than_g;
    return Regime::neither;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::near_quarter_pi: return "near-quarter-pi";
        case Regime::eta_much_less_than_g: return "eta-much-less-than-g";
        default: return "neither";
    }
}

UpdateCoeffs bloch_update_coeffs(BlochVector k_a, BlochVector k_b,
                                 BlochVector f, BlochVector n, double g) {
    if (k_a.norm() > 1.0 + kAlgebraTol || k_b.norm() > 1.0 + kAlgebraTol)
        throw std::invalid_argument("bloch_update_coeffs: state vector norm exceeds 1");
    if (std::abs(f.norm() - 1.0) > kAlgebraTol || std::abs(n.norm() - 1.0) > kAlgebraTol)
        throw std::invalid_argument("bloch_update_coeffs: f and n must be unit vectors");

    const double s = std::sin(g);
    const double c = std::cos(g);
    const double n_dot_ka = dot(n, k_a);
    const double f_dot_n = dot(f, n);
    const BlochVector ka_perp = k_a - n_dot_ka * n; // n x (k_A x n)

    UpdateCoeffs u{};
    u.alpha1 = c * c * (1.0 + dot(f, k_a));
    u.alpha2 = 2.0 * s * c * dot(f, cross(n, k_a));
    u.alpha3 = s * s * (1.0 + n_dot_ka * f_dot_n - dot(f, ka_perp));
    u.alpha4 = 2.0 * s * c * (n_dot_ka + f_dot_n);
    u.n_dot_kb = dot(n, k_b);

    const double d = u.denominator();
    if (d < kDegenerateProbTol)
        throw degenerate_postselection_error(
            "bloch_update_coeffs: denominator " + std::to_string(d) +
            " below degeneracy threshold");
    u.c1 = (u.alpha1 - u.alpha3) / d;
    u.c2 = (u.alpha2 + 2.0 * u.alpha3 * u.n_dot_kb) / d;
    u.c3 = u.alpha4 / d;
    return u;
}

BlochVector reconstruct_pointer(const UpdateCoeffs& u, BlochVector k_b,
                                BlochVector n) {
    return u.c1 * k_b + u.c2 * n + u.c3 * cross(n, k_b);
}

} // namespace wmdisc
