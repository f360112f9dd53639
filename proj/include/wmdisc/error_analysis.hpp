#pragma once

#include <cstdint>
#include <utility>

#include "wmdisc/discrimination.hpp"

namespace wmdisc {

// ---------------------------------------------------------------------------
// Deviation model. The well-defined direction is Z; everything else carries
// relative deviations:
//   source pair      k_A1 = -Z,  k_A2 = -sqrt(1-eps^2) Z + eps Y
//   coupling axis    n = sqrt(1-|delta_n|^2) X + delta_n,  delta_n.X = 0
//   POVM tilt        delta_f in the X-Y plane, magnitude delta_f_mag
// ---------------------------------------------------------------------------
struct DeviationSpec {
    DeviationSpec(double eps_, BlochVector delta_n_, double delta_f_mag_);
    double eps;
    BlochVector delta_n;
    double delta_f_mag;
};

// Source-pair Bloch vectors for a given separation parameter eps.
std::pair<BlochVector, BlochVector> source_pair_blochs(double eps);

// Coupling axis perturbed away from X by delta_n (must satisfy delta_n.X = 0,
// |delta_n| < 1).
BlochVector perturbed_axis(BlochVector delta_n);

// First-order pointer-pair Bloch vectors after the weak-measurement protocol,
//   k_B1 = -Z
//   k_B2 = -sqrt(1 - (2 eps/g)^2) Z + (2 eps/g) X
// with delta_n dropped (its first-order effect is a common tilt of both
// pointers that cancels in their separation; see the error-analysis tests).
//
// Consistency note, established against the exact pipeline: the transverse
// coefficient of the exact evolution is eps*sin(2g)/(1 - sqrt(1-eps^2)cos(2g))
// ~ eps*cot(g), half of the 2*eps/g used here. The 2*eps/g form is kept
// because the deviation POVMs and the beta ratios are built around it; the
// acceptance suite measures and reports the gap.
//
// Preconditions: eps <= g/10, g <= 0.3, |delta_n| <= 10*eps, 2*eps/g <= 1.
std::pair<BlochVector, BlochVector> perturbed_pointer_blochs(double eps, double g,
                                                             BlochVector delta_n);

// The same q-parametrized pointer pair without the first-order regime guard;
// this is the pair the weak-measurement POVM is built against. Requires only
// 2*eps/g <= 1.
std::pair<BlochVector, BlochVector> weak_pair_blochs(double eps, double g);

// Success-to-error trace ratio
//   beta = [Tr(rho1 pi1) + Tr(rho2 pi2)] / [Tr(rho1 pi2) + Tr(rho2 pi1)].
// When the error sum is <= 1e-15 (including the slightly negative values a
// flagged non-positive POVM can produce) the ratio is unbounded: beta is set
// to +infinity and `unbounded` is true.
struct BetaResult {
    double success_sum;
    double error_sum;
    double beta;
    bool unbounded;
};

BetaResult beta_ratio(const QubitState& rho1, const QubitState& rho2,
                      const PovmSet& povm);

// First-order closed form for the conventional POVM:
//   beta_A = 1 + [eps^2 - eps (delta_f.Y)] / (|delta_f|^2 / 2)
// Returns +infinity when |delta_f| = 0.
double beta_a_formula(double eps, BlochVector delta_f);

// First-order closed form for the weak-measurement POVM, with q = 2 eps/g:
//   beta_B = 1 + [q^2 - q (delta_f.X)] / (|delta_f|^2 / 2)
// Returns +infinity when |delta_f| = 0.
double beta_b_formula(double eps, double g, BlochVector delta_f);

// Angle-averaged closed-form means at fixed |delta_f|:
//   <beta_A> = 1 + 2 eps^2 / |delta_f|^2
//   <beta_B> = 1 + (2/g)^2 * 2 eps^2 / |delta_f|^2
double expected_mean_beta_a(double eps, double delta_f_mag);
double expected_mean_beta_b(double eps, double g, double delta_f_mag);

struct McParams {
    double eps;
    double g;
    double delta_f_mag;
    long long samples;
    std::uint64_t seed;
    // Off by default: draw |delta_f| as delta_f_mag * |standard normal|
    // instead of keeping it fixed. The angle-averaged closed-form means
    // above apply only to the default fixed-magnitude mode.
    bool gaussian_magnitude = false;
};

inline const char* delta_f_sampling_name(bool gaussian_magnitude) {
    return gaussian_magnitude ? "gaussian-magnitude" : "uniform-angle";
}

struct McSummary {
    double mean_beta_a;
    double mean_beta_b;
    double std_error_a;
    double std_error_b;
    // Trace-based diagnostics over the same samples; means are taken over the
    // samples whose error sum is positive (the rest are unbounded).
    double mean_beta_a_trace;
    double mean_beta_b_trace;
    long long trace_valid_a;
    long long trace_valid_b;
    long long sample_count;
    std::uint64_t seed;
};

// Monte Carlo average of both beta ratios over delta_f drawn uniformly in
// angle at fixed magnitude. Per-sample RNG streams are derived from
// (seed, sample index) and results are reduced in index order, so the output
// is bit-identical for any worker count. The parallel kernel and the serial
// reference produce identical summaries.
McSummary mc_average_beta(const McParams& params);
McSummary mc_average_beta_serial(const McParams& params);

} // namespace wmdisc
