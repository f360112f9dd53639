#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "wmdisc/errors.hpp"
#include "wmdisc/sampling.hpp"
#include "wmdisc/weak_measurement.hpp"

using namespace wmdisc;

namespace {

// Canonical protocol pieces: coupling about x, pointer starts in |0>_z,
// postselection along +z.
QubitState pointer_start() { return PureQubit::from_z_basis(1.0, 0.0).density(); }

TwoQubitOperator canonical_unitary(double g) {
    return coupling_unitary(CouplingSpec(g, kXAxis));
}

PostselectedOutcome run_pipeline(const PureQubit& psi, double g) {
    return evolve_postselect(psi.density(), pointer_start(), canonical_unitary(g),
                             PostselectionSpec(kZAxis));
}

} // namespace

TEST_CASE("make_state_pair") {
    SUBCASE("eta = 0 collapses the pair") {
        const StatePair pair = make_state_pair(0.0);
        CHECK(fidelity_overlap(pair.psi1, pair.psi2) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("eta = 1 gives overlap 1/sqrt(3)") {
        const StatePair pair = make_state_pair(1.0);
        CHECK(fidelity_overlap(pair.psi1, pair.psi2) ==
              doctest::Approx(0.5773502691896258).epsilon(1e-14));
    }
    SUBCASE("eta = 0.01 gives overlap 1/sqrt(1.0002)") {
        const StatePair pair = make_state_pair(0.01);
        CHECK(fidelity_overlap(pair.psi1, pair.psi2) ==
              doctest::Approx(0.9999000149975006).epsilon(1e-14));
    }
    SUBCASE("overlap law holds for complex eta") {
        SplitMix64 rng(201);
        for (int i = 0; i < 50; ++i) {
            const complexd eta = random_complex(rng, 2.0);
            const StatePair pair = make_state_pair(eta);
            CHECK(fidelity_overlap(pair.psi1, pair.psi2) ==
                  doctest::Approx(1.0 / std::sqrt(1.0 + 2.0 * std::norm(eta)))
                      .epsilon(1e-12));
        }
    }
    SUBCASE("non-finite eta rejected") {
        CHECK_THROWS_AS(make_state_pair(complexd{1.0 / 0.0, 0.0}), std::invalid_argument);
    }
}

TEST_CASE("coupling_unitary") {
    SUBCASE("g = 0 is the identity") {
        CHECK((canonical_unitary(0.0) - TwoQubitOperator::identity()).max_abs() == 0.0);
    }
    SUBCASE("g = pi/2 about x gives -i sigma_x tensor sigma_x") {
        const TwoQubitOperator u = canonical_unitary(std::numbers::pi / 2.0);
        const TwoQubitOperator expected =
            complexd{0.0, -1.0} * tensor(Complex2x2::pauli_x(), Complex2x2::pauli_x());
        CHECK((u - expected).max_abs() <= 1e-12);
    }
    SUBCASE("unitary for random couplings") {
        SplitMix64 rng(202);
        for (int i = 0; i < 50; ++i) {
            const CouplingSpec spec(std::numbers::pi * rng.next_double(),
                                    random_unit_vector(rng));
            CHECK(coupling_unitary(spec).unitarity_error() <= 1e-12);
        }
    }
    SUBCASE("matches the exponential series") {
        SplitMix64 rng(203);
        for (int i = 0; i < 10; ++i) {
            const double g = std::numbers::pi * rng.next_double();
            const BlochVector n = random_unit_vector(rng);
            const Complex2x2 ns = Complex2x2::pauli_combination(0.0, n);
            const TwoQubitOperator generator =
                complexd{0.0, -g} * tensor(ns, ns);
            TwoQubitOperator series = TwoQubitOperator::identity();
            TwoQubitOperator term = TwoQubitOperator::identity();
            for (int k = 1; k <= 24; ++k) {
                term = complexd{1.0 / k, 0.0} * (term * generator);
                series = series + term;
            }
            CHECK((series - coupling_unitary(CouplingSpec(g, n))).max_abs() <= 1e-13);
        }
    }
    SUBCASE("invalid specs rejected") {
        CHECK_THROWS_AS(CouplingSpec(-0.1, kXAxis), std::invalid_argument);
        CHECK_THROWS_AS(CouplingSpec(0.1, BlochVector{0.5, 0, 0}), std::invalid_argument);
    }
}

TEST_CASE("evolve_postselect") {
    SUBCASE("no coupling, source aligned with the postselection") {
        const PureQubit psi_f = PureQubit::from_z_basis(1.0, 0.0);
        const QubitState rho_b = bloch_to_density({0.2, -0.1, 0.4});
        const auto out = evolve_postselect(psi_f.density(), rho_b,
                                           canonical_unitary(0.0),
                                           PostselectionSpec(kZAxis));
        CHECK(out.success_prob == doctest::Approx(1.0).epsilon(1e-14));
        CHECK((out.pointer_state.matrix() - rho_b.matrix()).max_abs() <= 1e-14);
    }
    SUBCASE("no coupling, source orthogonal to the postselection is degenerate") {
        const StatePair pair = make_state_pair(0.7);
        CHECK_THROWS_AS(run_pipeline(pair.psi1, 0.0), degenerate_postselection_error);
    }
    SUBCASE("success probabilities at eta = 0.05, g = 0.3") {
        const StatePair pair = make_state_pair(0.05);
        // the reference state postselects with probability sin^2 g, the
        // tilted state with the eta-dependent probability
        CHECK(run_pipeline(pair.psi1, 0.3).success_prob ==
              doctest::Approx(0.08733219254516084).epsilon(1e-12));
        CHECK(run_pipeline(pair.psi2, 0.3).success_prob ==
              doctest::Approx(0.09143833988301994).epsilon(1e-12));
    }
    SUBCASE("probability conservation over complementary postselections") {
        SplitMix64 rng(204);
        int done = 0;
        while (done < 100) {
            const QubitState rho_a = bloch_to_density(random_ball_vector(rng));
            const QubitState rho_b = bloch_to_density(random_ball_vector(rng));
            const BlochVector f = random_unit_vector(rng);
            const TwoQubitOperator u = coupling_unitary(CouplingSpec(
                std::numbers::pi * rng.next_double(), random_unit_vector(rng)));
            try {
                const auto plus = evolve_postselect(rho_a, rho_b, u, PostselectionSpec(f));
                const auto minus =
                    evolve_postselect(rho_a, rho_b, u, PostselectionSpec(-1.0 * f));
                CHECK(plus.success_prob + minus.success_prob ==
                      doctest::Approx(1.0).epsilon(1e-12));
                const Complex2x2 mixture =
                    complexd{plus.success_prob, 0.0} * plus.pointer_state.matrix() +
                    complexd{minus.success_prob, 0.0} * minus.pointer_state.matrix();
                const Complex2x2 unconditioned = partial_trace_A(
                    u * tensor(rho_a.matrix(), rho_b.matrix()) * u.adjoint());
                CHECK((mixture - unconditioned).max_abs() <= 1e-12);
                ++done;
            } catch (const degenerate_postselection_error&) {
                // probability-zero branch; draw another configuration
            }
        }
    }
}

TEST_CASE("pointer_states_analytic") {
    SUBCASE("g = pi/2 leaves the pointers indistinguishable") {
        const PointerPair pair = pointer_states_analytic(0.3, std::numbers::pi / 2.0);
        CHECK(fidelity_overlap(pair.phi1, pair.phi2) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("overlap 1/sqrt2 when 2 eta^2 cos^2 g = sin^2 g") {
        // eta = 1, tan g = sqrt2
        const PointerPair pair = pointer_states_analytic(1.0, 0.9553166181245093);
        CHECK(fidelity_overlap(pair.phi1, pair.phi2) ==
              doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("overlap at eta = 0.01, g = 0.1") {
        const PointerPair pair = pointer_states_analytic(0.01, 0.1);
        CHECK(fidelity_overlap(pair.phi1, pair.phi2) ==
              doctest::Approx(0.9902122000166117).epsilon(1e-12));
    }
    SUBCASE("agrees with the exact pipeline up to global phase, complex eta included") {
        SplitMix64 rng(205);
        for (int i = 0; i < 200; ++i) {
            const complexd eta = random_complex(rng);
            const double g = 0.01 + (std::numbers::pi / 2.0 - 0.01) * rng.next_double();
            if (std::abs(eta) < 1e-3) continue;
            const StatePair pair = make_state_pair(eta);
            const PointerPair analytic = pointer_states_analytic(eta, g);
            const BlochVector k1 = run_pipeline(pair.psi1, g).pointer_state.bloch();
            const BlochVector k2 = run_pipeline(pair.psi2, g).pointer_state.bloch();
            CHECK((k1 - analytic.phi1.bloch()).norm() <= 1e-10);
            CHECK((k2 - analytic.phi2.bloch()).norm() <= 1e-10);
        }
    }
    SUBCASE("zero-probability branch is flagged at sin g = 0") {
        const PointerPair pair = pointer_states_analytic(0.4, 0.0);
        CHECK(pair.phi1_zero_probability);
        CHECK((pair.phi1.bloch() - BlochVector{0, 0, -1}).norm() <= 1e-15);
        CHECK(!pointer_states_analytic(0.4, 0.3).phi1_zero_probability);
    }
    SUBCASE("eta = 0 with sin g = 0 rejected") {
        CHECK_THROWS_AS(pointer_states_analytic(0.0, 0.0),
                        degenerate_postselection_error);
    }
}

TEST_CASE("postselection_probs") {
    SUBCASE("g = 0") {
        const auto p = postselection_probs(0.25, 0.0);
        CHECK(p.lambda1 == doctest::Approx(0.125 / 1.125).epsilon(1e-14));
        CHECK(p.lambda2 == 0.0);
    }
    SUBCASE("g = pi/2") {
        const auto p = postselection_probs(0.25, std::numbers::pi / 2.0);
        CHECK(p.lambda1 == doctest::Approx(1.0 / 1.125).epsilon(1e-12));
        CHECK(p.lambda2 == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("nearly equal in the weak regime") {
        const auto p = postselection_probs(0.001, 0.1);
        CHECK(p.lambda2 == doctest::Approx(0.009966711079379185).epsilon(1e-12));
        CHECK(std::abs(p.lambda1 - p.lambda2) <= 2.0 * 0.001 * 0.001);
    }
    SUBCASE("matches the exact pipeline across a grid") {
        for (double eta : {1e-3, 1e-2, 0.1, 1.0})
            for (double g : {0.01, 0.3, std::numbers::pi / 4.0, 1.2}) {
                const StatePair pair = make_state_pair(eta);
                const auto p = postselection_probs(eta, g);
                CHECK(run_pipeline(pair.psi2, g).success_prob ==
                      doctest::Approx(p.lambda1).epsilon(1e-12));
                CHECK(run_pipeline(pair.psi1, g).success_prob ==
                      doctest::Approx(p.lambda2).epsilon(1e-12));
            }
    }
}

TEST_CASE("regime_check") {
    CHECK(regime_check(0.5, std::numbers::pi / 4.0) == Regime::near_quarter_pi);
    CHECK(regime_check(1e-8, std::numbers::pi / 4.0) == Regime::near_quarter_pi);
    CHECK(regime_check(0.001, 0.1) == Regime::eta_much_less_than_g);
    CHECK(regime_check(0.5, 0.5) == Regime::neither);
    CHECK(regime_check(0.05, 0.4) == Regime::neither); // g too large for the weak regime
}

TEST_CASE("bloch_update_coeffs") {
    SUBCASE("identity evolution at g = 0") {
        const BlochVector k_b{0.3, -0.2, 0.5};
        const UpdateCoeffs u =
            bloch_update_coeffs({0.1, 0.2, 0.3}, k_b, kZAxis, kXAxis, 0.0);
        CHECK(u.alpha2 == 0.0);
        CHECK(u.alpha3 == 0.0);
        CHECK(u.alpha4 == 0.0);
        CHECK(u.c1 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(u.c2 == 0.0);
        CHECK(u.c3 == 0.0);
        CHECK((reconstruct_pointer(u, k_b, kXAxis) - k_b).norm() <= 1e-14);
    }
    SUBCASE("g = pi/2 reflects the pointer about the coupling axis") {
        // n.k_A = 0 and f.n = 0 kill every coefficient except the reflection
        const BlochVector k_b{0.2, 0.3, 0.6};
        const BlochVector n = kXAxis;
        const UpdateCoeffs u = bloch_update_coeffs({0.0, 0.6, -0.8}, k_b, kZAxis, n,
                                                   std::numbers::pi / 2.0);
        CHECK(std::abs(u.alpha1) <= 1e-30);
        CHECK(std::abs(u.alpha2) <= 1e-15);
        CHECK(std::abs(u.alpha4) <= 1e-15);
        const BlochVector expected = 2.0 * dot(n, k_b) * n - k_b;
        CHECK((reconstruct_pointer(u, k_b, n) - expected).norm() <= 1e-12);
        // cross-check against the exact pipeline
        const BlochOutcome exact = evolve_postselect_bloch(
            {0.0, 0.6, -0.8}, k_b, n, std::numbers::pi / 2.0, kZAxis);
        CHECK((reconstruct_pointer(u, k_b, n) - exact.pointer).norm() <= 1e-12);
    }
    SUBCASE("reconstruction matches the exact pipeline on random configurations") {
        SplitMix64 rng(206);
        int done = 0;
        while (done < 1000) {
            const BlochVector k_a = random_ball_vector(rng);
            const BlochVector k_b = random_ball_vector(rng);
            const BlochVector f = random_unit_vector(rng);
            const BlochVector n = random_unit_vector(rng);
            const double g = std::numbers::pi * rng.next_double();
            UpdateCoeffs u{};
            try {
                u = bloch_update_coeffs(k_a, k_b, f, n, g);
            } catch (const degenerate_postselection_error&) {
                continue;
            }
            if (u.denominator() < 1e-4) continue; // avoid noise amplification
            ++done;
            const BlochOutcome exact = evolve_postselect_bloch(k_a, k_b, n, g, f);
            CHECK((reconstruct_pointer(u, k_b, n) - exact.pointer).norm() <= 1e-10);
            // the denominator carries the success probability
            CHECK(exact.success_prob == doctest::Approx(0.5 * u.denominator()).epsilon(1e-10));
        }
    }
    SUBCASE("the factor 2 in the c2 numerator is load-bearing") {
        // dropping it yields a non-unit pointer for pure inputs; the exact
        // pipeline exposes the mutation immediately
        const BlochVector k_b{0.2, 0.3, std::sqrt(1.0 - 0.13)};
        const BlochVector n = kXAxis;
        const UpdateCoeffs u = bloch_update_coeffs({0.0, 0.6, -0.8}, k_b, kZAxis, n,
                                                   std::numbers::pi / 2.0);
        const double c2_mutated = (u.alpha2 + u.alpha3 * u.n_dot_kb) / u.denominator();
        const BlochVector mutated = u.c1 * k_b + c2_mutated * n + u.c3 * cross(n, k_b);
        const BlochOutcome exact = evolve_postselect_bloch(
            {0.0, 0.6, -0.8}, k_b, n, std::numbers::pi / 2.0, kZAxis);
        CHECK((mutated - exact.pointer).norm() > 1e-2);
        CHECK(std::abs(mutated.norm() - 1.0) > 1e-2);
    }
    SUBCASE("degenerate postselection rejected") {
        // uncoupled, postselecting the orthogonal complement of a pure state
        CHECK_THROWS_AS(
            bloch_update_coeffs({0, 0, 1}, {0.1, 0, 0}, {0, 0, -1}, kXAxis, 0.0),
            degenerate_postselection_error);
    }
    SUBCASE("invalid inputs rejected") {
        CHECK_THROWS_AS(bloch_update_coeffs({0, 0, 2}, {0, 0, 0}, kZAxis, kXAxis, 0.1),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            bloch_update_coeffs({0, 0, 1}, {0, 0, 0}, {0, 0, 0.5}, kXAxis, 0.1),
            std::invalid_argument);
    }
}

TEST_CASE("pointer separation is amplified in the weak regime") {
    for (double eta : {1e-3, 5e-3})
        for (double g : {0.05, 0.1, 0.2}) {
            if (eta > g / 10.0) continue;
            const StatePair pair = make_state_pair(eta);
            const BlochVector k1 = run_pipeline(pair.psi1, g).pointer_state.bloch();
            const BlochVector k2 = run_pipeline(pair.psi2, g).pointer_state.bloch();
            const double source = (pair.psi1.bloch() - pair.psi2.bloch()).norm();
            CHECK((k1 - k2).norm() > source);
        }
}
