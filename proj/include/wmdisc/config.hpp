#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wmdisc/algebra.hpp"

namespace wmdisc {

enum class SweepParam { eta, g, eps, delta_f_mag };

const char* sweep_param_name(SweepParam p);

struct SweepSpec {
    SweepParam param;
    double start;
    double stop;
    int count;     // >= 2
    bool log_spacing;
};

// One experiment: protocol parameters plus an optional sweep axis. A sweep
// over `eta` moves the real part; the imaginary part stays at `eta_im`.
struct ExperimentConfig {
    double eta_re = 1e-3;
    double eta_im = 0.0;
    double g = 0.05;
    double eps = 1e-3;
    double delta_n_mag = 0.0;
    double delta_f_mag = 1e-3;
    bool delta_f_gaussian = false;
    long long samples = 100000;
    std::uint64_t seed = 12345;
    std::optional<SweepSpec> sweep;

    complexd eta() const { return {eta_re, eta_im}; }
};

// Parse a JSON config document. Unknown keys are a hard error; missing keys
// take the defaults above. Throws config_error with the offending field.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

} // namespace wmdisc
