// Benchmark: OpenMP kernels against their serial reference implementations.
// Also asserts that both produce bit-identical results.

#include <chrono>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wmdisc/emit.hpp"
#include "wmdisc/error_analysis.hpp"
#include "wmdisc/sweep.hpp"

using namespace wmdisc;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

void bench_mc(long long samples) {
    const McParams params{1e-3, 0.05, 1e-3, samples, 31337};

    auto t0 = std::chrono::steady_clock::now();
    const McSummary serial = mc_average_beta_serial(params);
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const McSummary parallel = mc_average_beta(params);
    const double t_parallel = seconds_since(t0);

    if (std::memcmp(&serial, &parallel, sizeof(McSummary)) != 0) {
        std::cerr << "mc kernel mismatch between serial and parallel\n";
        std::exit(1);
    }
    std::cout << "mc-beta    " << std::setw(9) << samples << " samples   serial "
              << std::fixed << std::setprecision(3) << t_serial << " s   parallel "
              << t_parallel << " s   speedup " << std::setprecision(2)
              << t_serial / t_parallel << "x\n";
}

void bench_sweep(int points, long long samples) {
    ExperimentConfig cfg;
    cfg.eps = 1e-3;
    cfg.delta_f_mag = 1e-3;
    cfg.samples = samples;
    cfg.sweep = SweepSpec{SweepParam::g, 0.02, 0.3, points, false};

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = run_sweep_serial(cfg);
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = run_sweep(cfg);
    const double t_parallel = seconds_since(t0);

    std::ostringstream a, b;
    emit_rows(serial, EmitFormat::csv, {cfg.seed}, a);
    emit_rows(parallel, EmitFormat::csv, {cfg.seed}, b);
    if (a.str() != b.str()) {
        std::cerr << "sweep mismatch between serial and parallel\n";
        std::exit(1);
    }
    std::cout << "sweep      " << std::setw(4) << points << " points x " << samples
              << " samples   serial " << std::fixed << std::setprecision(3)
              << t_serial << " s   parallel " << t_parallel << " s   speedup "
              << std::setprecision(2) << t_serial / t_parallel << "x\n";
}

} // namespace

int main() {
#ifdef _OPENMP
    std::cout << "OpenMP enabled, max threads " << omp_get_max_threads() << "\n";
#else
    std::cout << "OpenMP not enabled; parallel paths run serially\n";
#endif
    bench_mc(200000);
    bench_mc(2000000);
    bench_sweep(64, 20000);
    return 0;
}
