#include "wmdisc/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wmdisc/errors.hpp"

namespace wmdisc {

namespace {

double real_trace_product(const QubitState& rho, const Complex2x2& op) {
    return (rho.matrix() * op).trace().real();
}

// [I + m.sigma] / prefactor_denom
Complex2x2 povm_element(BlochVector m, double prefactor_denom) {
    return complexd{1.0 / prefactor_denom, 0.0} *
           Complex2x2::pauli_combination(1.0, m);
}

void require_in_plane(BlochVector delta_f, const char* who) {
    if (std::abs(delta_f.z) > kAlgebraTol)
        throw std::invalid_argument(std::string(who) +
                                    ": delta_f must lie in the X-Y plane");
}

} // namespace

double PovmSet::completeness_error() const {
    return (pi1 + pi2 + piQ - Complex2x2::identity()).max_abs();
}

double PovmSet::min_eigenvalue() const {
    double m = pi1.hermitized().hermitian_eigenvalues().first;
    m = std::min(m, pi2.hermitized().hermitian_eigenvalues().first);
    m = std::min(m, piQ.hermitized().hermitian_eigenvalues().first);
    return m;
}

PovmDiagnostics validate_povm(const PovmSet& povm, double eps) {
    PovmDiagnostics d{};
    d.completeness_error = povm.completeness_error();
    d.min_eig_pi1 = povm.pi1.hermitized().hermitian_eigenvalues().first;
    d.min_eig_pi2 = povm.pi2.hermitized().hermitian_eigenvalues().first;
    d.min_eig_piQ = povm.piQ.hermitized().hermitian_eigenvalues().first;
    const double lowest = std::min({d.min_eig_pi1, d.min_eig_pi2, d.min_eig_piQ});
    d.acceptable = lowest >= -10.0 * eps * eps * eps * eps - 1e-12;
    d.flagged = lowest < -1e-9;
    return d;
}

double idp_limit(double overlap) {
    if (!(overlap >= 0.0 && overlap <= 1.0))
        throw std::invalid_argument("idp_limit: overlap outside [0, 1]");
    return 1.0 - overlap;
}

double idp_limit_eta(complexd eta) {
    return 1.0 - 1.0 / std::sqrt(1.0 + 2.0 * std::norm(eta));
}

double overall_success_exact(complexd eta, double g) {
    const auto [lambda1, lambda2] = postselection_probs(eta, g);
    const double denom_sq =
        2.0 * std::norm(eta) * std::cos(g) * std::cos(g) + std::sin(g) * std::sin(g);
    if (denom_sq < kDegenerateProbTol) return 0.0; // eta = 0 and sin g = 0
    const double pointer_overlap = std::abs(std::sin(g)) / std::sqrt(denom_sq);
    return 0.5 * (lambda1 + lambda2) * (1.0 - pointer_overlap);
}

double overall_success_approx(complexd eta, double g) {
    if (regime_check(eta, g) != Regime::eta_much_less_than_g)
        throw regime_error("overall_success_approx: requires |eta| <= g/10 and g <= 0.3");
    return std::norm(eta) * std::cos(g) * std::cos(g);
}

PovmSet optimal_unambiguous_povm(const QubitState& rho1, const QubitState& rho2) {
    const BlochVector k1 = rho1.bloch();
    const BlochVector k2 = rho2.bloch();
    if (std::abs(k1.norm() - 1.0) > 1e-9 || std::abs(k2.norm() - 1.0) > 1e-9)
        throw no_discrimination_error("optimal_unambiguous_povm: states must be pure");
    const double overlap_sq = 0.5 * (1.0 + dot(k1, k2));
    const double overlap = std::sqrt(std::max(0.0, overlap_sq));
    if (1.0 - overlap < 1e-12)
        throw no_discrimination_error("optimal_unambiguous_povm: states are identical");

    // (I - k.sigma)/2 projects onto the complement of the state with Bloch
    // vector k; scaling by 1/(1 + overlap) makes the inconclusive element
    // exactly positive semidefinite.
    const double scale = 1.0 / (1.0 + overlap);
    PovmSet povm;
    povm.pi1 = complexd{0.5 * scale, 0.0} *
               Complex2x2::pauli_combination(1.0, -1.0 * k2);
    povm.pi2 = complexd{0.5 * scale, 0.0} *
               Complex2x2::pauli_combination(1.0, -1.0 * k1);
    povm.piQ = Complex2x2::identity() - povm.pi1 - povm.pi2;
    return povm;
}

PovmSet povm_conventional(double eps, BlochVector delta_f) {
    if (!(eps >= 0.0 && eps <= 0.1))
        throw std::invalid_argument("povm_conventional: eps outside [0, 0.1]");
    require_in_plane(delta_f, "povm_conventional");
    const double tilt_sq = (eps + delta_f.y) * (eps + delta_f.y) + delta_f.x * delta_f.x;
    if (tilt_sq > 1.0)
        throw std::invalid_argument("povm_conventional: deviation exceeds the unit sphere");

    const double denom = 4.0 - eps * eps / 4.0;
    const BlochVector m1{delta_f.x, -eps + delta_f.y, std::sqrt(1.0 - tilt_sq)};
    PovmSet povm;
    povm.pi1 = povm_element(m1, denom);
    povm.pi2 = povm_element(kZAxis, denom);
    povm.piQ = Complex2x2::identity() - povm.pi1 - povm.pi2;
    return povm;
}

PovmSet povm_weak(double eps, double g, BlochVector delta_f) {
    if (!(eps >= 0.0 && eps <= 0.1))
        throw std::invalid_argument("povm_weak: eps outside [0, 0.1]");
    if (!(g > 0.0) || 2.0 * eps / g > 1.0)
        throw regime_error("povm_weak: requires 2*eps/g <= 1");
    require_in_plane(delta_f, "povm_weak");
    const double q = 2.0 * eps / g;
    const double tilt_sq = (q + delta_f.x) * (q + delta_f.x) + delta_f.y * delta_f.y;
    if (tilt_sq > 1.0)
        throw std::invalid_argument("povm_weak: deviation exceeds the unit sphere");

    const double denom = 4.0 - eps * eps / (g * g);
    const BlochVector m1{-q + delta_f.x, delta_f.y, std::sqrt(1.0 - tilt_sq)};
    PovmSet povm;
    povm.pi1 = povm_element(m1, denom);
    povm.pi2 = povm_element(kZAxis, denom);
    povm.piQ = Complex2x2::identity() - povm.pi1 - povm.pi2;
    return povm;
}

DiscriminationReport discriminate(const QubitState& rho1, const QubitState& rho2,
                                  const PovmSet& povm) {
    DiscriminationReport r{};
    const std::array<const Complex2x2*, 3> ops{&povm.pi1, &povm.pi2, &povm.piQ};
    const std::array<const QubitState*, 2> states{&rho1, &rho2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            r.conditional[i][j] = real_trace_product(*states[i], *ops[j]);
    r.p_success = 0.5 * (r.conditional[0][0] + r.conditional[1][1]);
    r.p_error = 0.5 * (r.conditional[0][1] + r.conditional[1][0]);
    r.p_inconclusive = 0.5 * (r.conditional[0][2] + r.conditional[1][2]);
    return r;
}

} // namespace wmdisc
