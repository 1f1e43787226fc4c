#pragma once

#include <cstdint>

#include "fjump/special_math.hpp"

namespace fjump {

/// Small deterministic PRNG (splitmix64). Output is identical across
/// platforms and compilers, which the reproducibility contract of the
/// simulation harness relies on; std:: distributions are
/// implementation-defined and are avoided for that reason.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Derive an independent stream for replication `index`.
    static Rng stream(std::uint64_t base_seed, std::uint64_t index) {
        Rng mixer(base_seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        mixer.next();
        return Rng(mixer.next());
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1), excludes both endpoints.
    double uniform() {
        return ((double)(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal by inverse-CDF transform.
    double normal() { return normal_quantile(uniform()); }

    bool bernoulli(double p) { return uniform() < p; }

    /// Integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

}  // namespace fjump
