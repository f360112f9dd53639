#include "wmdisc/sweep.hpp"

#include <cmath>
#include <limits>

#include "wmdisc/discrimination.hpp"
#include "wmdisc/error_analysis.hpp"
#include "wmdisc/errors.hpp"
#include "wmdisc/rng.hpp"
#include "wmdisc/weak_measurement.hpp"

namespace wmdisc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void mark_skipped(ResultRow& row, const std::string& reason) {
    if (row.status == "ok")
        row.status = "skipped: " + reason;
    else
        row.status += "; " + reason;
}

ExperimentConfig with_param(const ExperimentConfig& base, SweepParam param,
                            double value) {
    ExperimentConfig c = base;
    switch (param) {
        case SweepParam::eta: c.eta_re = value; break;
        case SweepParam::g: c.g = value; break;
        case SweepParam::eps: c.eps = value; break;
        case SweepParam::delta_f_mag: c.delta_f_mag = value; break;
    }
    return c;
}

} // namespace

const std::vector<std::string>& result_row_fields() {
    static const std::vector<std::string> fields{
        "eta_re",      "eta_im",      "g",
        "eps",         "delta_n_mag", "delta_f_mag",
        "samples",     "seed",        "lambda1",
        "lambda2",     "pointer_overlap", "p_exact",
        "p_approx",    "p_idp",       "mean_beta_a",
        "mean_beta_b", "std_error_a", "std_error_b",
        "status"};
    return fields;
}

ResultRow evaluate_point(const ExperimentConfig& cfg, std::uint64_t seed,
                         bool parallel_mc) {
    ResultRow row{};
    row.eta_re = cfg.eta_re;
    row.eta_im = cfg.eta_im;
    row.g = cfg.g;
    row.eps = cfg.eps;
    row.delta_n_mag = cfg.delta_n_mag;
    row.delta_f_mag = cfg.delta_f_mag;
    row.samples = cfg.samples;
    row.seed = seed;
    row.status = "ok";
    row.pointer_overlap = kNaN;
    row.p_approx = kNaN;
    row.mean_beta_a = row.mean_beta_b = kNaN;
    row.std_error_a = row.std_error_b = kNaN;

    const complexd eta = cfg.eta();
    const auto probs = postselection_probs(eta, cfg.g);
    row.lambda1 = probs.lambda1;
    row.lambda2 = probs.lambda2;
    row.p_exact = overall_success_exact(eta, cfg.g);
    row.p_idp = idp_limit_eta(eta);

    try {
        const PointerPair pair = pointer_states_analytic(eta, cfg.g);
        row.pointer_overlap = fidelity_overlap(pair.phi1, pair.phi2);
    } catch (const degenerate_postselection_error&) {
        mark_skipped(row, "pointer-degenerate");
    }

    try {
        row.p_approx = overall_success_approx(eta, cfg.g);
    } catch (const regime_error&) {
        mark_skipped(row, "approx-out-of-regime");
    }

    try {
        const McParams params{cfg.eps,     cfg.g,    cfg.delta_f_mag,
                              cfg.samples, seed,     cfg.delta_f_gaussian};
        const McSummary mc =
            parallel_mc ? mc_average_beta(params) : mc_average_beta_serial(params);
        row.mean_beta_a = mc.mean_beta_a;
        row.mean_beta_b = mc.mean_beta_b;
        row.std_error_a = mc.std_error_a;
        row.std_error_b = mc.std_error_b;
    } catch (const std::exception&) {
        mark_skipped(row, "beta-out-of-regime");
    }

    return row;
}

std::vector<double> sweep_axis_values(const SweepSpec& sweep) {
    std::vector<double> values(static_cast<std::size_t>(sweep.count));
    const double n = static_cast<double>(sweep.count - 1);
    for (int i = 0; i < sweep.count; ++i) {
        const double t = static_cast<double>(i) / n;
        values[static_cast<std::size_t>(i)] =
            sweep.log_spacing
                ? sweep.start * std::pow(sweep.stop / sweep.start, t)
                : sweep.start + (sweep.stop - sweep.start) * t;
    }
    return values;
}

namespace {

std::vector<ResultRow> run_sweep_impl(const ExperimentConfig& cfg, bool parallel) {
    if (!cfg.sweep) throw config_error("run_sweep: config has no sweep axis");
    const SweepSpec& sweep = *cfg.sweep;
    const std::vector<double> values = sweep_axis_values(sweep);
    std::vector<ResultRow> rows(values.size());

    if (parallel) {
        const long long n = static_cast<long long>(values.size());
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < n; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            rows[idx] = evaluate_point(
                with_param(cfg, sweep.param, values[idx]),
                derive_seed(cfg.seed, static_cast<std::uint64_t>(i)),
                /*parallel_mc=*/true);
        }
    } else {
        for (std::size_t i = 0; i < values.size(); ++i)
            rows[i] = evaluate_point(with_param(cfg, sweep.param, values[i]),
                                     derive_seed(cfg.seed, i),
                                     /*parallel_mc=*/false);
    }
    return rows;
}

} // namespace

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, bool parallel) {
    return run_sweep_impl(cfg, parallel);
}

std::vector<ResultRow> run_sweep_serial(const ExperimentConfig& cfg) {
    return run_sweep_impl(cfg, false);
}

} // namespace wmdisc
