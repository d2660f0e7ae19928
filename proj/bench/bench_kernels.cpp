// Compares the OpenMP scan kernels against their serial references on the
// hot enumeration loops: delegation mask scans, persuasion partition scans,
// and threshold-rounding sampling. Results must match bit for bit; timings
// show the speedup.

#include "pwe/delegation.hpp"
#include "pwe/generators.hpp"
#include "pwe/oracle.hpp"
#include "pwe/rng.hpp"
#include "pwe/sdp.hpp"

#include <chrono>
#include <cstdio>
#include <string>

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <class F>
double timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return seconds(t0, std::chrono::steady_clock::now());
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::string(argv[1]) == "--quick";

    std::printf("%-28s %10s %10s %8s  %s\n", "kernel", "serial[s]", "openmp[s]", "speedup", "match");

    {
        pwe::RandomParams params;
        params.n = quick ? 10 : 14;
        params.m = quick ? 14 : 20;
        params.density = 0.35;
        const pwe::Instance inst = pwe::gen_random(params, 7).instance;
        pwe::DelegationOracleResult serial, parallel;
        const double ts = timed([&] { serial = pwe::delegation_oracle_serial(inst); });
        const double tp = timed([&] { parallel = pwe::delegation_oracle(inst); });
        std::printf("%-28s %10.3f %10.3f %8.2f  %s\n", "delegation mask scan", ts, tp, ts / tp,
                    serial.utility == parallel.utility && serial.best_mask == parallel.best_mask
                        ? "yes"
                        : "NO");
    }

    {
        pwe::RandomParams params;
        params.n = 8;
        params.m = quick ? 9 : 12;
        params.density = 0.4;
        const pwe::Instance inst = pwe::gen_random(params, 11).instance;
        pwe::PersuasionOracleResult serial, parallel;
        const double ts = timed([&] { serial = pwe::persuasion_oracle_serial(inst); });
        const double tp = timed([&] { parallel = pwe::persuasion_oracle(inst); });
        std::printf("%-28s %10.3f %10.3f %8.2f  %s\n", "persuasion partition scan", ts, tp, ts / tp,
                    serial.utility == parallel.utility && serial.best_mask == parallel.best_mask
                        ? "yes"
                        : "NO");
    }

    {
        pwe::RandomParams params;
        params.n = 10;
        params.m = 10;
        params.shape = pwe::RandomShape::DegreeBounded;
        params.max_degree = 2;
        const pwe::Instance inst = pwe::gen_random(params, 13).instance;
        const auto sdp = pwe::sdp_solve(pwe::build_delegation_sdp(inst));
        const pwe::ThreshRounder rounder(sdp.vectors, 0.8825, 0.0384);
        const pwe::DelegationEvaluator eval(inst);
        const int samples = quick ? 20000 : 200000;

        pwe::Rational best_serial = 0, best_parallel = 0;
        const double ts = timed([&] {
            for (int k = 0; k < samples; ++k) {
                pwe::Rng rng(pwe::derive_seed(3, k));
                best_serial = std::max(best_serial, eval.utility(rounder.sample_mask(rng)));
            }
        });
        const double tp = timed([&] {
#pragma omp parallel
            {
                pwe::Rational local = 0;
#pragma omp for schedule(static)
                for (int k = 0; k < samples; ++k) {
                    pwe::Rng rng(pwe::derive_seed(3, k));
                    local = std::max(local, eval.utility(rounder.sample_mask(rng)));
                }
#pragma omp critical
                best_parallel = std::max(best_parallel, local);
            }
        });
        std::printf("%-28s %10.3f %10.3f %8.2f  %s\n", "thresh rounding sampling", ts, tp, ts / tp,
                    best_serial == best_parallel ? "yes" : "NO");
    }

    return 0;
}
