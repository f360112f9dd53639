#include "wmdisc/error_analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "wmdisc/errors.hpp"
#include "wmdisc/rng.hpp"

namespace wmdisc {

namespace {

constexpr double kErrorSumFloor = 1e-15;

struct SampleValues {
    double beta_a;
    double beta_b;
    double beta_a_trace; // NaN when unbounded
    double beta_b_trace;
};

struct McContext {
    QubitState conv1;
    QubitState conv2;
    QubitState weak1;
    QubitState weak2;
};

SampleValues evaluate_sample(const McParams& p, const McContext& ctx,
                             std::uint64_t index) {
    SplitMix64 rng = make_stream(p.seed, index);
    const double theta = 2.0 * std::numbers::pi * rng.next_double();
    double mag = p.delta_f_mag;
    if (p.gaussian_magnitude) {
        const double u = 1.0 - rng.next_double(); // (0, 1]
        const double v = rng.next_double();
        mag *= std::abs(std::sqrt(-2.0 * std::log(u)) *
                        std::cos(2.0 * std::numbers::pi * v));
    }
    const BlochVector delta_f{mag * std::cos(theta), mag * std::sin(theta), 0.0};
    SampleValues v{};
    v.beta_a = beta_a_formula(p.eps, delta_f);
    v.beta_b = beta_b_formula(p.eps, p.g, delta_f);
    const BetaResult ra = beta_ratio(ctx.conv1, ctx.conv2, povm_conventional(p.eps, delta_f));
    const BetaResult rb = beta_ratio(ctx.weak1, ctx.weak2, povm_weak(p.eps, p.g, delta_f));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    v.beta_a_trace = ra.unbounded ? nan : ra.beta;
    v.beta_b_trace = rb.unbounded ? nan : rb.beta;
    return v;
}

McSummary reduce_samples(const McParams& p, const std::vector<SampleValues>& vals) {
    McSummary s{};
    s.sample_count = p.samples;
    s.seed = p.seed;

    double sum_a = 0.0, sum_b = 0.0, sum_at = 0.0, sum_bt = 0.0;
    for (const auto& v : vals) {
        sum_a += v.beta_a;
        sum_b += v.beta_b;
        if (!std::isnan(v.beta_a_trace)) {
            sum_at += v.beta_a_trace;
            ++s.trace_valid_a;
        }
        if (!std::isnan(v.beta_b_trace)) {
            sum_bt += v.beta_b_trace;
            ++s.trace_valid_b;
        }
    }
    const double n = static_cast<double>(p.samples);
    s.mean_beta_a = sum_a / n;
    s.mean_beta_b = sum_b / n;
    s.mean_beta_a_trace = s.trace_valid_a > 0
                              ? sum_at / static_cast<double>(s.trace_valid_a)
                              : std::numeric_limits<double>::quiet_NaN();
    s.mean_beta_b_trace = s.trace_valid_b > 0
                              ? sum_bt / static_cast<double>(s.trace_valid_b)
                              : std::numeric_limits<double>::quiet_NaN();

    // Standard error = sample std / sqrt(N); zero for a single sample.
    double ss_a = 0.0, ss_b = 0.0;
    for (const auto& v : vals) {
        ss_a += (v.beta_a - s.mean_beta_a) * (v.beta_a - s.mean_beta_a);
        ss_b += (v.beta_b - s.mean_beta_b) * (v.beta_b - s.mean_beta_b);
    }
    if (p.samples > 1) {
        s.std_error_a = std::sqrt(ss_a / (n - 1.0)) / std::sqrt(n);
        s.std_error_b = std::sqrt(ss_b / (n - 1.0)) / std::sqrt(n);
    }
    return s;
}

McContext make_context(const McParams& p) {
    const auto [ka1, ka2] = source_pair_blochs(p.eps);
    const auto [kb1, kb2] = weak_pair_blochs(p.eps, p.g);
    return {bloch_to_density(ka1), bloch_to_density(ka2),
            bloch_to_density(kb1), bloch_to_density(kb2)};
}

void require_mc_params(const McParams& p) {
    if (p.samples < 1)
        throw std::invalid_argument("mc_average_beta: samples must be >= 1");
    if (!(p.delta_f_mag >= 0.0))
        throw std::invalid_argument("mc_average_beta: delta_f_mag must be >= 0");
    // Construction of the POVMs and state pairs enforces the remaining
    // preconditions; fail fast before allocating sample storage.
    (void)make_context(p);
    (void)povm_conventional(p.eps, BlochVector{0.0, p.delta_f_mag, 0.0});
    (void)povm_weak(p.eps, p.g, BlochVector{p.delta_f_mag, 0.0, 0.0});
}

McSummary unbounded_summary(const McParams& p) {
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    McSummary s{};
    s.mean_beta_a = inf;
    s.mean_beta_b = inf;
    s.mean_beta_a_trace = nan;
    s.mean_beta_b_trace = nan;
    s.sample_count = p.samples;
    s.seed = p.seed;
    return s;
}

} // namespace

DeviationSpec::DeviationSpec(double eps_, BlochVector delta_n_, double delta_f_mag_)
    : eps(eps_), delta_n(delta_n_), delta_f_mag(delta_f_mag_) {
    if (!(eps >= 0.0 && eps < 1.0))
        throw std::invalid_argument("DeviationSpec: eps outside [0, 1)");
    if (delta_n.norm() >= 1.0)
        throw std::invalid_argument("DeviationSpec: |delta_n| must be < 1");
    if (std::abs(delta_n.x) > kAlgebraTol)
        throw std::invalid_argument("DeviationSpec: delta_n must be orthogonal to X");
    if (!(delta_f_mag >= 0.0))
        throw std::invalid_argument("DeviationSpec: delta_f_mag must be >= 0");
}

std::pair<BlochVector, BlochVector> source_pair_blochs(double eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("source_pair_blochs: eps outside [0, 1]");
    return {BlochVector{0.0, 0.0, -1.0},
            BlochVector{0.0, eps, -std::sqrt(1.0 - eps * eps)}};
}

BlochVector perturbed_axis(BlochVector delta_n) {
    if (std::abs(delta_n.x) > kAlgebraTol)
        throw std::invalid_argument("perturbed_axis: delta_n must be orthogonal to X");
    const double d2 = delta_n.norm_sq();
    if (d2 >= 1.0)
        throw std::invalid_argument("perturbed_axis: |delta_n| must be < 1");
    return {std::sqrt(1.0 - d2), delta_n.y, delta_n.z};
}

std::pair<BlochVector, BlochVector> weak_pair_blochs(double eps, double g) {
    if (!(g > 0.0) || 2.0 * eps / g > 1.0)
        throw regime_error("weak_pair_blochs: requires 2*eps/g <= 1");
    const double q = 2.0 * eps / g;
    return {BlochVector{0.0, 0.0, -1.0},
            BlochVector{q, 0.0, -std::sqrt(1.0 - q * q)}};
}

std::pair<BlochVector, BlochVector> perturbed_pointer_blochs(double eps, double g,
                                                             BlochVector delta_n) {
    if (!(g > 0.0 && g <= 0.3) || eps > g / 10.0)
        throw regime_error("perturbed_pointer_blochs: requires eps <= g/10 and g <= 0.3");
    if (delta_n.norm() > 10.0 * eps + kAlgebraTol)
        throw std::invalid_argument(
            "perturbed_pointer_blochs: |delta_n| must not exceed 10*eps");
    (void)perturbed_axis(delta_n); // validates orientation
    return weak_pair_blochs(eps, g);
}

BetaResult beta_ratio(const QubitState& rho1, const QubitState& rho2,
                      const PovmSet& povm) {
    const DiscriminationReport report = discriminate(rho1, rho2, povm);
    BetaResult r{};
    r.success_sum = report.conditional[0][0] + report.conditional[1][1];
    r.error_sum = report.conditional[0][1] + report.conditional[1][0];
    if (r.error_sum <= kErrorSumFloor) {
        r.unbounded = true;
        r.beta = std::numeric_limits<double>::infinity();
    } else {
        r.beta = r.success_sum / r.error_sum;
    }
    return r;
}

double beta_a_formula(double eps, BlochVector delta_f) {
    const double d2 = delta_f.norm_sq();
    if (d2 == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 + (eps * eps - eps * delta_f.y) / (0.5 * d2);
}

double beta_b_formula(double eps, double g, BlochVector delta_f) {
    const double d2 = delta_f.norm_sq();
    if (d2 == 0.0) return std::numeric_limits<double>::infinity();
    const double q = 2.0 * eps / g;
    return 1.0 + (q * q - q * delta_f.x) / (0.5 * d2);
}

double expected_mean_beta_a(double eps, double delta_f_mag) {
    return 1.0 + 2.0 * eps * eps / (delta_f_mag * delta_f_mag);
}

double expected_mean_beta_b(double eps, double g, double delta_f_mag) {
    return 1.0 + (2.0 / g) * (2.0 / g) * 2.0 * eps * eps / (delta_f_mag * delta_f_mag);
}

McSummary mc_average_beta(const McParams& params) {
    require_mc_params(params);
    if (params.delta_f_mag == 0.0) return unbounded_summary(params);
    const McContext ctx = make_context(params);
    std::vector<SampleValues> vals(static_cast<std::size_t>(params.samples));
    const long long n = params.samples;
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i)
        vals[static_cast<std::size_t>(i)] =
            evaluate_sample(params, ctx, static_cast<std::uint64_t>(i));
    return reduce_samples(params, vals);
}

McSummary mc_average_beta_serial(const McParams& params) {
    require_mc_params(params);
    if (params.delta_f_mag == 0.0) return unbounded_summary(params);
    const McContext ctx = make_context(params);
    std::vector<SampleValues> vals(static_cast<std::size_t>(params.samples));
    for (long long i = 0; i < params.samples; ++i)
        vals[static_cast<std::size_t>(i)] =
            evaluate_sample(params, ctx, static_cast<std::uint64_t>(i));
    return reduce_samples(params, vals);
}

} // namespace wmdisc
