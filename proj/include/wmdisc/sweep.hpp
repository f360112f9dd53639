#pragma once

#include <string>
#include <vector>

#include "wmdisc/config.hpp"

namespace wmdisc {

// One evaluated experiment point. A row is complete (status "ok") or carries
// a "skipped: <reason>" marker; fields blocked by a violated precondition are
// NaN. Unbounded beta means are +infinity (serialized as "inf").
struct ResultRow {
    double eta_re, eta_im;
    double g;
    double eps;
    double delta_n_mag;
    double delta_f_mag;
    long long samples;
    std::uint64_t seed;

    double lambda1, lambda2;
    double pointer_overlap;
    double p_exact;
    double p_approx;
    double p_idp;
    double mean_beta_a, mean_beta_b;
    double std_error_a, std_error_b;
    std::string status;
};

// Field names, in emission order.
const std::vector<std::string>& result_row_fields();

// Evaluate one configuration point. `seed` is the per-row stream seed;
// `parallel_mc` selects the OpenMP or the serial Monte Carlo kernel (results
// are bit-identical either way).
ResultRow evaluate_point(const ExperimentConfig& cfg, std::uint64_t seed,
                         bool parallel_mc = true);

// Evaluate a sweep in order. Rows are independent; with `parallel` they are
// computed by an OpenMP loop into preallocated slots, so output order and
// values never depend on the worker count. Per-row seeds derive from
// (cfg.seed, row index). A config without a sweep axis is rejected.
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, bool parallel = true);
std::vector<ResultRow> run_sweep_serial(const ExperimentConfig& cfg);

// The sweep axis values (count points from start to stop, linear or log).
std::vector<double> sweep_axis_values(const SweepSpec& sweep);

} // namespace wmdisc
