// wmdisc: weak-measurement state-discrimination simulator.
//
// Subcommands:
//   verify   run the full invariant suite, print a pass/fail table
//   sweep    evaluate a parameter sweep and emit CSV/JSONL rows
//   mc-beta  single-point Monte Carlo of the success-to-error ratios
//   idp      print the unambiguous-discrimination limit for the configured eta
//
// Exit codes: 0 success, 1 invariant failure, 2 config error, 3 I/O error.

#include <algorithm>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wmdisc/config.hpp"
#include "wmdisc/discrimination.hpp"
#include "wmdisc/emit.hpp"
#include "wmdisc/error_analysis.hpp"
#include "wmdisc/errors.hpp"
#include "wmdisc/sweep.hpp"
#include "wmdisc/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

struct CommonOptions {
    std::string config_path;
    std::string format = "csv";
    std::string out = "-";
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool quick = false;
};

wmdisc::EmitFormat parse_format(const std::string& name) {
    if (name == "csv") return wmdisc::EmitFormat::csv;
    if (name == "jsonl") return wmdisc::EmitFormat::jsonl;
    throw wmdisc::config_error("unknown output format '" + name + "' (csv|jsonl)");
}

wmdisc::ExperimentConfig resolve_config(const CommonOptions& opts) {
    wmdisc::ExperimentConfig cfg;
    if (!opts.config_path.empty()) cfg = wmdisc::load_config(opts.config_path);
    if (opts.seed_given) cfg.seed = opts.seed;
    if (opts.quick) cfg.samples = std::min<long long>(cfg.samples, 2000);
    return cfg;
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_output) {
    cmd->add_option("--config", opts.config_path, "experiment config (JSON)");
    cmd->add_option("--seed", opts.seed, "override the config seed")
        ->each([&opts](const std::string&) { opts.seed_given = true; });
    cmd->add_flag("--quick", opts.quick, "reduced sample counts");
    if (with_output) {
        cmd->add_option("--format", opts.format, "output format: csv|jsonl")
            ->check(CLI::IsMember({"csv", "jsonl"}));
        cmd->add_option("--out", opts.out, "output path ('-' for stdout)");
    }
}

int cmd_verify(const CommonOptions& opts) {
    return wmdisc::run_verify(opts.quick, std::cout) == 0 ? kExitOk
                                                          : kExitInvariantFailure;
}

wmdisc::EmitMetadata metadata_for(const wmdisc::ExperimentConfig& cfg) {
    wmdisc::EmitMetadata meta{cfg.seed};
    meta.delta_f_sampling = wmdisc::delta_f_sampling_name(cfg.delta_f_gaussian);
    return meta;
}

int cmd_sweep(const CommonOptions& opts) {
    const wmdisc::ExperimentConfig cfg = resolve_config(opts);
    if (!cfg.sweep)
        throw wmdisc::config_error("sweep subcommand requires a 'sweep' config block");
    const auto rows = wmdisc::run_sweep(cfg);
    wmdisc::emit_rows_to(rows, parse_format(opts.format), metadata_for(cfg), opts.out);
    return kExitOk;
}

int cmd_mc_beta(const CommonOptions& opts) {
    const wmdisc::ExperimentConfig cfg = resolve_config(opts);
    const wmdisc::McParams params{cfg.eps,     cfg.g,    cfg.delta_f_mag,
                                  cfg.samples, cfg.seed, cfg.delta_f_gaussian};
    const wmdisc::McSummary summary = wmdisc::mc_average_beta(params);
    wmdisc::emit_mc_summary_to(params, summary, parse_format(opts.format),
                               metadata_for(cfg), opts.out);
    return kExitOk;
}

int cmd_idp(const CommonOptions& opts) {
    const wmdisc::ExperimentConfig cfg = resolve_config(opts);
    const wmdisc::complexd eta = cfg.eta();
    const double overlap = 1.0 / std::sqrt(1.0 + 2.0 * std::norm(eta));
    std::cout << "eta = " << wmdisc::format_double(cfg.eta_re) << " + "
              << wmdisc::format_double(cfg.eta_im) << "i\n"
              << "overlap = " << wmdisc::format_double(overlap) << "\n"
              << "p_max = " << wmdisc::format_double(wmdisc::idp_limit(overlap))
              << "\n"
              << "p_max_eta = " << wmdisc::format_double(wmdisc::idp_limit_eta(eta))
              << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak-measurement discrimination simulator"};
    app.require_subcommand(1);

    CommonOptions opts;
    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
    add_common(verify, opts, false);
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate a parameter sweep");
    add_common(sweep, opts, true);
    CLI::App* mc = app.add_subcommand("mc-beta", "Monte Carlo beta ratios");
    add_common(mc, opts, true);
    CLI::App* idp = app.add_subcommand("idp", "print the discrimination limit");
    add_common(idp, opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (verify->parsed()) return cmd_verify(opts);
        if (sweep->parsed()) return cmd_sweep(opts);
        if (mc->parsed()) return cmd_mc_beta(opts);
        if (idp->parsed()) return cmd_idp(opts);
    } catch (const wmdisc::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvariantFailure;
    }
    return kExitConfigError;
}
