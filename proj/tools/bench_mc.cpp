// Benchmark: OpenMP-parallel Monte Carlo replications against the serial
// reference implementation, verifying identical results.

#include <chrono>
#include <cstdio>

#include "fjump/simulation.hpp"

using Clock = std::chrono::steady_clock;

int main(int argc, char** argv) {
    int reps = argc > 1 ? std::atoi(argv[1]) : 100;
    fjump::TestConfig config;
    for (fjump::Space sp : {fjump::Space::density, fjump::Space::covariance,
                            fjump::Space::network}) {
        fjump::DgpSpec spec;
        spec.space = sp;
        spec.signal = fjump::Signal::piecewise_smooth;
        spec.jump = sp == fjump::Space::covariance ? 1.0 : 0.0;
        spec.n = 500;
        spec.seed = 42;

        auto t0 = Clock::now();
        fjump::SimResult serial = fjump::run_size_power_serial(spec, reps, 0.05, config);
        auto t1 = Clock::now();
        fjump::SimResult parallel = fjump::run_size_power(spec, reps, 0.05, config);
        auto t2 = Clock::now();

        double ts = std::chrono::duration<double>(t1 - t0).count();
        double tp = std::chrono::duration<double>(t2 - t1).count();
        bool match = serial.rejection_rate == parallel.rejection_rate &&
                     serial.replications == parallel.replications &&
                     serial.per_rep == parallel.per_rep;
        std::printf("%-10s reps=%d serial=%.2fs parallel=%.2fs speedup=%.2fx %s\n",
                    fjump::space_name(sp), reps, ts, tp, ts / tp,
                    match ? "identical" : "MISMATCH");
        if (!match) return 1;
    }
    return 0;
}
