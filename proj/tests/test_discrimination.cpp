#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "wmdisc/discrimination.hpp"
#include "wmdisc/error_analysis.hpp"
#include "wmdisc/errors.hpp"
#include "wmdisc/sampling.hpp"

using namespace wmdisc;

namespace {

// trace(rho * op) by explicit loops, independent of the matrix classes' own
// product path
double trace_oracle(const Complex2x2& rho, const Complex2x2& op) {
    complexd t = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) t += rho(i, k) * op(k, i);
    return t.real();
}

} // namespace

TEST_CASE("idp_limit") {
    CHECK(idp_limit(0.0) == 1.0);
    CHECK(idp_limit(1.0) == 0.0);
    CHECK(idp_limit(1.0 / std::sqrt(3.0)) ==
          doctest::Approx(0.42264973081037416).epsilon(1e-14));
    CHECK_THROWS_AS(idp_limit(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(idp_limit(1.1), std::invalid_argument);
}

TEST_CASE("idp_limit_eta") {
    CHECK(idp_limit_eta(0.0) == 0.0);
    SUBCASE("small-eta value against a series oracle") {
        // 1 - (1+x)^{-1/2} = x/2 - 3x^2/8 + 15x^3/48 - ..., x = 2 eta^2
        const double x = 2e-4;
        const double series = x / 2.0 - 3.0 * x * x / 8.0 + 15.0 * x * x * x / 48.0;
        CHECK(idp_limit_eta(0.01) == doctest::Approx(series).epsilon(1e-12));
        // close to |eta|^2 within 0.1 percent for extremely similar states
        CHECK(std::abs(idp_limit_eta(0.01) - 1e-4) / 1e-4 <= 1e-3);
    }
    CHECK(idp_limit_eta(1.0) == doctest::Approx(1.0 - 1.0 / std::sqrt(3.0)).epsilon(1e-14));
    SUBCASE("consistent with idp_limit of the constructed overlap") {
        SplitMix64 rng(301);
        for (int i = 0; i < 100; ++i) {
            const complexd eta = random_complex(rng, 2.0);
            const StatePair pair = make_state_pair(eta);
            CHECK(idp_limit_eta(eta) ==
                  doctest::Approx(idp_limit(fidelity_overlap(pair.psi1, pair.psi2)))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("overall_success_exact") {
    SUBCASE("half the limit at g = pi/4") {
        for (double eta : {1e-3, 1e-2, 1e-1, 1.0})
            CHECK(overall_success_exact(eta, std::numbers::pi / 4.0) ==
                  doctest::Approx(0.5 * idp_limit_eta(eta)).epsilon(1e-12));
    }
    SUBCASE("vanishes at g = pi/2") {
        CHECK(overall_success_exact(0.3, std::numbers::pi / 2.0) ==
              doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("value at eta = 1e-3, g = 0.1") {
        CHECK(overall_success_exact(1e-3, 0.1) ==
              doctest::Approx(9.899831366228715e-07).epsilon(1e-12));
    }
    SUBCASE("fully degenerate point returns zero") {
        CHECK(overall_success_exact(0.0, 0.0) == 0.0);
    }
    SUBCASE("equals the pipeline-chained discrimination bound") {
        const QubitState rho_b = PureQubit::from_z_basis(1.0, 0.0).density();
        const PostselectionSpec f(kZAxis);
        for (double eta : {1e-3, 1e-2, 0.2, 1.0})
            for (double g : {0.02, 0.3, 0.9, 1.4}) {
                const StatePair pair = make_state_pair(eta);
                const TwoQubitOperator u = coupling_unitary(CouplingSpec(g, kXAxis));
                const auto o1 = evolve_postselect(pair.psi1.density(), rho_b, u, f);
                const auto o2 = evolve_postselect(pair.psi2.density(), rho_b, u, f);
                const double overlap = std::sqrt(std::max(
                    0.0,
                    0.5 * (1.0 + dot(o1.pointer_state.bloch(), o2.pointer_state.bloch()))));
                const double chained = 0.5 * (o1.success_prob + o2.success_prob) *
                                       idp_limit(overlap);
                CHECK(overall_success_exact(eta, g) ==
                      doctest::Approx(chained).epsilon(1e-12));
            }
    }
    SUBCASE("never exceeds the discrimination limit") {
        for (double eta : {1e-4, 1e-3, 1e-2, 0.1, 0.5})
            for (int i = 1; i < 40; ++i) {
                const double g = std::numbers::pi * i / 40.0;
                CHECK(overall_success_exact(eta, g) <= idp_limit_eta(eta) + 1e-12);
            }
    }
}

TEST_CASE("overall_success_approx") {
    CHECK(overall_success_approx(1e-3, 0.1) ==
          doctest::Approx(9.90033288920621e-07).epsilon(1e-14));
    SUBCASE("approaches the limit as g shrinks") {
        const double p = overall_success_approx(1e-3, 0.01);
        CHECK(std::abs(p - 1e-6) / 1e-6 <= 1.0001e-4);
        CHECK(overall_success_exact(1e-3, 0.01) / idp_limit_eta(1e-3) >= 0.99);
    }
    SUBCASE("close to the exact value in regime") {
        for (double g : {0.05, 0.1, 0.2, 0.3})
            for (double eta : {g / 100.0, g / 20.0, g / 10.0}) {
                const double exact = overall_success_exact(eta, g);
                const double approx = overall_success_approx(eta, g);
                CHECK(std::abs(approx - exact) / exact <= 0.02);
            }
    }
    SUBCASE("out-of-regime input rejected") {
        CHECK_THROWS_AS(overall_success_approx(0.1, 0.2), regime_error);
        CHECK_THROWS_AS(overall_success_approx(0.01, 0.5), regime_error);
    }
}

TEST_CASE("optimal_unambiguous_povm") {
    SUBCASE("orthogonal pair yields projectors and no inconclusive outcome") {
        const QubitState up = bloch_to_density({0, 0, 1});
        const QubitState down = bloch_to_density({0, 0, -1});
        const PovmSet povm = optimal_unambiguous_povm(up, down);
        CHECK((povm.pi1 - up.matrix()).max_abs() <= 1e-14);
        CHECK((povm.pi2 - down.matrix()).max_abs() <= 1e-14);
        CHECK(povm.piQ.max_abs() <= 1e-14);
    }
    SUBCASE("success probability equals the discrimination limit") {
        const StatePair pair = make_state_pair(1.0); // overlap 1/sqrt3
        const PovmSet povm =
            optimal_unambiguous_povm(pair.psi1.density(), pair.psi2.density());
        const auto report = discriminate(pair.psi1.density(), pair.psi2.density(), povm);
        CHECK(report.p_success ==
              doctest::Approx(1.0 - 1.0 / std::sqrt(3.0)).epsilon(1e-10));
        CHECK(std::abs(report.conditional[0][1]) <= 1e-12);
        CHECK(std::abs(report.conditional[1][0]) <= 1e-12);
    }
    SUBCASE("pointer pair from eta = 0.01, g = 0.1") {
        const PointerPair pointers = pointer_states_analytic(0.01, 0.1);
        const PovmSet povm =
            optimal_unambiguous_povm(pointers.phi1.density(), pointers.phi2.density());
        const auto report =
            discriminate(pointers.phi1.density(), pointers.phi2.density(), povm);
        CHECK(report.p_success ==
              doctest::Approx(1.0 - 0.9902122000166117).epsilon(1e-9));
    }
    SUBCASE("identical or mixed inputs rejected") {
        const QubitState up = bloch_to_density({0, 0, 1});
        CHECK_THROWS_AS(optimal_unambiguous_povm(up, up), no_discrimination_error);
        const QubitState mixed = bloch_to_density({0, 0, 0.5});
        CHECK_THROWS_AS(optimal_unambiguous_povm(up, mixed), no_discrimination_error);
    }
}

TEST_CASE("povm_conventional") {
    SUBCASE("eps = 0 collapses both identification elements") {
        const PovmSet povm = povm_conventional(0.0, BlochVector{});
        CHECK((povm.pi1 - povm.pi2).max_abs() == 0.0);
        const Complex2x2 expected =
            complexd{0.25, 0.0} * Complex2x2::pauli_combination(1.0, kZAxis);
        CHECK((povm.pi1 - expected).max_abs() <= 1e-15);
    }
    SUBCASE("unambiguous at zero deviation") {
        const auto [k1, k2] = source_pair_blochs(0.01);
        const QubitState rho1 = bloch_to_density(k1);
        const QubitState rho2 = bloch_to_density(k2);
        const PovmSet povm = povm_conventional(0.01, BlochVector{});
        CHECK(std::abs(trace_oracle(rho1.matrix(), povm.pi2)) <= 1e-12);
        CHECK(std::abs(trace_oracle(rho2.matrix(), povm.pi1)) <= 1e-12);
    }
    SUBCASE("matches the optimal construction up to the truncated prefactor") {
        for (double eps : {1e-3, 1e-2, 0.05}) {
            const auto [k1, k2] = source_pair_blochs(eps);
            const PovmSet truncated = povm_conventional(eps, BlochVector{});
            const PovmSet optimal =
                optimal_unambiguous_povm(bloch_to_density(k1), bloch_to_density(k2));
            const double tol = std::max(1e-15, eps * eps * eps * eps);
            CHECK((truncated.pi1 - optimal.pi1).max_abs() <= tol);
            CHECK((truncated.pi2 - optimal.pi2).max_abs() <= tol);
        }
    }
    SUBCASE("completeness holds exactly") {
        const PovmSet povm = povm_conventional(0.03, BlochVector{0.01, -0.005, 0.0});
        CHECK(povm.completeness_error() <= 1e-15);
    }
    SUBCASE("deviation against the tilt is flagged as non-positive") {
        const PovmSet povm = povm_conventional(0.01, BlochVector{0.0, -0.01, 0.0});
        const PovmDiagnostics diag = validate_povm(povm, 0.01);
        CHECK(diag.flagged);
        CHECK(diag.min_eig_pi1 < -1e-9);
        CHECK(diag.completeness_error <= 1e-15);
    }
    SUBCASE("invalid inputs rejected") {
        CHECK_THROWS_AS(povm_conventional(0.2, BlochVector{}), std::invalid_argument);
        CHECK_THROWS_AS(povm_conventional(0.01, BlochVector{0.0, 0.0, 0.01}),
                        std::invalid_argument);
        CHECK_THROWS_AS(povm_conventional(0.05, BlochVector{0.0, 0.999, 0.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("povm_weak") {
    SUBCASE("eps = 0 collapses both identification elements") {
        const PovmSet povm = povm_weak(0.0, 0.1, BlochVector{});
        CHECK((povm.pi1 - povm.pi2).max_abs() == 0.0);
    }
    SUBCASE("unambiguous against the first-order pointer pair") {
        const auto [k1, k2] = weak_pair_blochs(1e-3, 0.05);
        const QubitState rho1 = bloch_to_density(k1);
        const QubitState rho2 = bloch_to_density(k2);
        const PovmSet povm = povm_weak(1e-3, 0.05, BlochVector{});
        CHECK(std::abs(trace_oracle(rho1.matrix(), povm.pi2)) <= 1e-12);
        CHECK(std::abs(trace_oracle(rho2.matrix(), povm.pi1)) <= 1e-12);
    }
    SUBCASE("completeness holds exactly") {
        const PovmSet povm = povm_weak(0.002, 0.1, BlochVector{0.003, 0.001, 0.0});
        CHECK(povm.completeness_error() <= 1e-15);
    }
    SUBCASE("regime guard") {
        CHECK_THROWS_AS(povm_weak(0.06, 0.1, BlochVector{}), regime_error);
        CHECK_THROWS_AS(povm_weak(0.01, 0.1, BlochVector{0.0, 0.0, 0.01}),
                        std::invalid_argument);
    }
}

TEST_CASE("discriminate") {
    SUBCASE("orthogonal states with their projective measurement") {
        const QubitState up = bloch_to_density({0, 0, 1});
        const QubitState down = bloch_to_density({0, 0, -1});
        const auto report = discriminate(up, down, optimal_unambiguous_povm(up, down));
        CHECK(report.p_success == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(report.p_error == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("all-inconclusive measurement") {
        PovmSet povm;
        povm.pi1 = Complex2x2::zero();
        povm.pi2 = Complex2x2::zero();
        povm.piQ = Complex2x2::identity();
        const auto report = discriminate(bloch_to_density({0.1, 0.2, 0.3}),
                                         bloch_to_density({0, 0, -1}), povm);
        CHECK(report.p_inconclusive == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(report.p_success == 0.0);
    }
    SUBCASE("conventional measurement at eps = 0.01, zero deviation") {
        const auto [k1, k2] = source_pair_blochs(0.01);
        const auto report = discriminate(bloch_to_density(k1), bloch_to_density(k2),
                                         povm_conventional(0.01, BlochVector{}));
        CHECK(report.p_error <= 1e-12);
        CHECK(report.p_success ==
              doctest::Approx(1.2500390643064633e-05).epsilon(1e-10));
    }
    SUBCASE("outcome probabilities sum to one") {
        SplitMix64 rng(302);
        for (int i = 0; i < 50; ++i) {
            const QubitState rho1 = bloch_to_density(random_ball_vector(rng));
            const QubitState rho2 = bloch_to_density(random_ball_vector(rng));
            const double eps = 0.05 * rng.next_double();
            const auto report = discriminate(rho1, rho2,
                                             povm_conventional(eps, BlochVector{}));
            CHECK(report.p_success + report.p_error + report.p_inconclusive ==
                  doctest::Approx(1.0).epsilon(1e-12));
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 3; ++b) {
                    CHECK(report.conditional[a][b] >= -1e-12);
                    CHECK(report.conditional[a][b] <= 1.0 + 1e-12);
                }
        }
    }
}
