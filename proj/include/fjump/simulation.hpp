#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fjump/jump_test.hpp"
#include "fjump/metric_space.hpp"

namespace fjump {

enum class Signal { piecewise_smooth, piecewise_constant };

const char* signal_name(Signal s);
Signal signal_from_name(const std::string& name);

/// Monte Carlo scenario. `jump` is the additive mean shift delta_D
/// (density), the multiplicative scale beta_C (covariance), or the additive
/// edge-probability shift delta_N (network); 0 (1 for covariance) is the null.
struct DgpSpec {
    Space space = Space::density;
    Signal signal = Signal::piecewise_smooth;
    double jump = 0.0;
    int n = 500;
    double cutoff = 0.5;
    std::uint64_t seed = 0;
};

struct Dataset {
    std::vector<double> xs;
    std::vector<MetricObject> objects;
};

/// Whether `jump` corresponds to the null hypothesis for the space.
bool is_null_jump(Space space, double jump);

Dataset generate(const DgpSpec& spec);

struct SimResult {
    double rejection_rate = 0.0;
    int replications = 0;  // successful replications
    int failures = 0;      // replications that raised an estimation error
    std::vector<std::pair<double, double>> per_rep;  // (t_n, p_value)
    double mean_selected_h = 0.0;
};

enum class TestMethod { proposed, local_constant };

/// Rejection rate of the chosen test over `reps` replications of `spec`,
/// each with an RNG stream derived from (spec.seed, replication index).
/// OpenMP-parallel across replications; results are independent of thread
/// count and scheduling.
SimResult run_size_power(const DgpSpec& spec, int reps, double alpha,
                         const TestConfig& config,
                         TestMethod method = TestMethod::proposed, int jobs = 0);

/// Serial reference implementation of run_size_power with identical output,
/// kept for testing and benchmarking the parallel path.
SimResult run_size_power_serial(const DgpSpec& spec, int reps, double alpha,
                                const TestConfig& config,
                                TestMethod method = TestMethod::proposed);

/// Localized k-sample comparator: the same F/U/T construction with
/// local-constant (equal) weights inside [c - h, c + h]. Returns
/// {t_statistic, p_value}.
std::pair<double, double> comparator_test(const Dataset& data, double c,
                                          double window_h,
                                          int min_side_points = 5);

}  // namespace fjump
