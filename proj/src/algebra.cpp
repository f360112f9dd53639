#include "wmdisc/algebra.hpp"

#include <stdexcept>
#include <string>

#include "wmdisc/errors.hpp"

namespace wmdisc {

QubitState QubitState::from_matrix(const Complex2x2& m, double tol, double psd_tol) {
    if (m.hermiticity_error() > tol)
        throw std::invalid_argument("QubitState: matrix is not Hermitian");
    if (std::abs(m.trace() - complexd{1.0, 0.0}) > tol)
        throw std::invalid_argument("QubitState: trace differs from 1");
    const auto [lo, hi] = m.hermitized().hermitian_eigenvalues();
    if (lo < -psd_tol)
        throw std::invalid_argument("QubitState: negative eigenvalue " + std::to_string(lo));
    (void)hi;
    return QubitState(m);
}

BlochVector QubitState::bloch() const {
    return density_to_bloch(*this);
}

PureQubit PureQubit::from_z_basis(complexd amp0, complexd amp1) {
    const double n2 = std::norm(amp0) + std::norm(amp1);
    if (std::abs(n2 - 1.0) > kAlgebraTol)
        throw std::invalid_argument("PureQubit: amplitudes not normalized");
    return {amp0, amp1};
}

PureQubit PureQubit::from_x_basis(complexd amp0x, complexd amp1x) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return from_z_basis(inv_sqrt2 * (amp0x + amp1x), inv_sqrt2 * (amp0x - amp1x));
}

QubitState PureQubit::density() const {
    Complex2x2 m{std::norm(a0_), a0_ * std::conj(a1_),
                 a1_ * std::conj(a0_), std::norm(a1_)};
    return QubitState::from_matrix(m.hermitized());
}

BlochVector PureQubit::bloch() const {
    const complexd c = std::conj(a0_) * a1_;
    return {2.0 * c.real(), 2.0 * c.imag(), std::norm(a0_) - std::norm(a1_)};
}

QubitState bloch_to_density(BlochVector v) {
    if (v.norm() > 1.0 + kAlgebraTol)
        throw std::invalid_argument("bloch_to_density: vector norm " +
                                    std::to_string(v.norm()) + " exceeds 1");
    return QubitState::from_matrix(complexd{0.5, 0.0} *
                                   Complex2x2::pauli_combination(1.0, v));
}

BlochVector density_to_bloch(const QubitState& rho) {
    const Complex2x2& m = rho.matrix();
    return {(m(0, 1) + m(1, 0)).real(),
            (complexd{0.0, 1.0} * (m(0, 1) - m(1, 0))).real(),
            (m(0, 0) - m(1, 1)).real()};
}

TwoQubitOperator tensor(const Complex2x2& a, const Complex2x2& b) {
    TwoQubitOperator r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

Complex2x2 partial_trace_A(const TwoQubitOperator& m) {
    Complex2x2 out;
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
            out(k, l) = m(k, l) + m(2 + k, 2 + l);
    return out;
}

double fidelity_overlap(const PureQubit& psi, const PureQubit& phi) {
    const complexd ip = std::conj(psi.amp0()) * phi.amp0() +
                        std::conj(psi.amp1()) * phi.amp1();
    return std::abs(ip);
}

} // namespace wmdisc
