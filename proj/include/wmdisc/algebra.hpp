#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <utility>

namespace wmdisc {

using complexd = std::complex<double>;

// Tolerance for identities of exact (non-approximating) linear algebra.
inline constexpr double kAlgebraTol = 1e-12;

// Success probabilities below this threshold are treated as degenerate
// postselection: the conditional state is reported as an error.
inline constexpr double kDegenerateProbTol = 1e-14;

// ---------------------------------------------------------------------------
// BlochVector: real 3-vector v with rho = (I + v.sigma)/2, ||v|| <= 1.
// ---------------------------------------------------------------------------
struct BlochVector {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double norm_sq() const { return x * x + y * y + z * z; }

    friend BlochVector operator+(BlochVector a, BlochVector b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend BlochVector operator-(BlochVector a, BlochVector b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend BlochVector operator*(double s, BlochVector v) {
        return {s * v.x, s * v.y, s * v.z};
    }
};

inline double dot(BlochVector a, BlochVector b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline BlochVector cross(BlochVector a, BlochVector b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline BlochVector normalized(BlochVector v) {
    const double n = v.norm();
    return {v.x / n, v.y / n, v.z / n};
}

inline constexpr BlochVector kXAxis{1.0, 0.0, 0.0};
inline constexpr BlochVector kYAxis{0.0, 1.0, 0.0};
inline constexpr BlochVector kZAxis{0.0, 0.0, 1.0};

// ---------------------------------------------------------------------------
// Complex2x2: dense 2x2 complex matrix, row-major.
// ---------------------------------------------------------------------------
class Complex2x2 {
  public:
    Complex2x2() = default;
    Complex2x2(complexd a, complexd b, complexd c, complexd d) : e_{a, b, c, d} {}

    static Complex2x2 zero() { return {}; }
    static Complex2x2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Complex2x2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
    static Complex2x2 pauli_y() {
        return {0.0, complexd{0.0, -1.0}, complexd{0.0, 1.0}, 0.0};
    }
    static Complex2x2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

    // a0*I + v.sigma
    static Complex2x2 pauli_combination(complexd a0, BlochVector v) {
        return {a0 + v.z, complexd{v.x, -v.y}, complexd{v.x, v.y}, a0 - v.z};
    }

    complexd operator()(int i, int j) const { return e_[2 * i + j]; }
    complexd& operator()(int i, int j) { return e_[2 * i + j]; }

    friend Complex2x2 operator+(const Complex2x2& a, const Complex2x2& b) {
        Complex2x2 r;
        for (int i = 0; i < 4; ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    friend Complex2x2 operator-(const Complex2x2& a, const Complex2x2& b) {
        Complex2x2 r;
        for (int i = 0; i < 4; ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }
    friend Complex2x2 operator*(complexd s, const Complex2x2& a) {
        Complex2x2 r;
        for (int i = 0; i < 4; ++i) r.e_[i] = s * a.e_[i];
        return r;
    }
    friend Complex2x2 operator*(const Complex2x2& a, const Complex2x2& b) {
        Complex2x2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
        return r;
    }

    Complex2x2 adjoint() const {
        return {std::conj(e_[0]), std::conj(e_[2]), std::conj(e_[1]), std::conj(e_[3])};
    }

    complexd trace() const { return e_[0] + e_[3]; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : e_) m = std::max(m, std::abs(v));
        return m;
    }

    double hermiticity_error() const {
        Complex2x2 d = *this - adjoint();
        return d.max_abs();
    }

    // (M + M^dag)/2; exactly Hermitian in floating point.
    Complex2x2 hermitized() const {
        Complex2x2 a = adjoint();
        Complex2x2 r;
        for (int i = 0; i < 4; ++i) r.e_[i] = 0.5 * (e_[i] + a.e_[i]);
        return r;
    }

    // Eigenvalues of a Hermitian matrix, ascending. Caller guarantees
    // hermiticity; only the real parts of the diagonal are used.
    std::pair<double, double> hermitian_eigenvalues() const {
        const double a = e_[0].real();
        const double d = e_[3].real();
        const double mean = 0.5 * (a + d);
        const double off = std::abs(e_[1]);
        const double r = std::hypot(0.5 * (a - d), off);
        return {mean - r, mean + r};
    }

  private:
    std::array<complexd, 4> e_{};
};

// ---------------------------------------------------------------------------
// QubitState: Hermitian, unit-trace, positive semidefinite 2x2 matrix.
// ---------------------------------------------------------------------------
class QubitState {
  public:
    // Validates hermiticity, unit trace and positivity against `tol`.
    // `psd_tol` loosens only the eigenvalue check; states normalized out of a
    // small-probability postselection carry rounding noise scaled by 1/p.
    static QubitState from_matrix(const Complex2x2& m, double tol = kAlgebraTol,
                                  double psd_tol = kAlgebraTol);

    const Complex2x2& matrix() const { return m_; }
    BlochVector bloch() const;
    double purity() const { return (m_ * m_).trace().real(); }

  private:
    explicit QubitState(const Complex2x2& m) : m_(m) {}
    Complex2x2 m_;
};

// ---------------------------------------------------------------------------
// PureQubit: normalized amplitude pair. Stored in the z basis.
//
// Basis conventions, fixed project-wide:
//   |0>_z = (1, 0),  |1>_z = (0, 1)
//   |0>_x = (|0>_z + |1>_z)/sqrt2,  |1>_x = (|0>_z - |1>_z)/sqrt2
// ---------------------------------------------------------------------------
class PureQubit {
  public:
    // Amplitudes in the z basis; must be normalized to 1e-12.
    static PureQubit from_z_basis(complexd amp0, complexd amp1);
    // Amplitudes in the x basis (converted to z internally).
    static PureQubit from_x_basis(complexd amp0x, complexd amp1x);

    complexd amp0() const { return a0_; }
    complexd amp1() const { return a1_; }

    QubitState density() const;
    BlochVector bloch() const;

  private:
    PureQubit(complexd a0, complexd a1) : a0_(a0), a1_(a1) {}
    complexd a0_, a1_;
};

// ---------------------------------------------------------------------------
// TwoQubitOperator: dense 4x4 complex matrix, row-major, qubit-A-major tensor
// index ordering: joint index = 2*a + b.
// ---------------------------------------------------------------------------
class TwoQubitOperator {
  public:
    TwoQubitOperator() = default;

    static TwoQubitOperator identity() {
        TwoQubitOperator r;
        for (int i = 0; i < 4; ++i) r(i, i) = 1.0;
        return r;
    }

    complexd operator()(int i, int j) const { return e_[4 * i + j]; }
    complexd& operator()(int i, int j) { return e_[4 * i + j]; }

    friend TwoQubitOperator operator+(const TwoQubitOperator& a, const TwoQubitOperator& b) {
        TwoQubitOperator r;
        for (int i = 0; i < 16; ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    friend TwoQubitOperator operator-(const TwoQubitOperator& a, const TwoQubitOperator& b) {
        TwoQubitOperator r;
        for (int i = 0; i < 16; ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }
    friend TwoQubitOperator operator*(complexd s, const TwoQubitOperator& a) {
        TwoQubitOperator r;
        for (int i = 0; i < 16; ++i) r.e_[i] = s * a.e_[i];
        return r;
    }
    friend TwoQubitOperator operator*(const TwoQubitOperator& a, const TwoQubitOperator& b) {
        TwoQubitOperator r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                complexd s = 0.0;
                for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
                r(i, j) = s;
            }
        return r;
    }

    TwoQubitOperator adjoint() const {
        TwoQubitOperator r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    complexd trace() const { return e_[0] + e_[5] + e_[10] + e_[15]; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : e_) m = std::max(m, std::abs(v));
        return m;
    }

    // max-abs entry of U^dag U - I
    double unitarity_error() const {
        TwoQubitOperator d = adjoint() * (*this) - identity();
        return d.max_abs();
    }

  private:
    std::array<complexd, 16> e_{};
};

// rho = (I + v.sigma)/2; rejects ||v|| > 1 + 1e-12.
QubitState bloch_to_density(BlochVector v);

// v_i = Tr(rho sigma_i)
BlochVector density_to_bloch(const QubitState& rho);

// (a tensor b)[2i+k, 2j+l] = a[i,j] * b[k,l]
TwoQubitOperator tensor(const Complex2x2& a, const Complex2x2& b);

// out[k,l] = sum_a M[2a+k, 2a+l]
Complex2x2 partial_trace_A(const TwoQubitOperator& m);

// |<psi|phi>|
double fidelity_overlap(const PureQubit& psi, const PureQubit& phi);

} // namespace wmdisc
