#pragma once

#include <span>
#include <vector>

#include "fjump/kernels.hpp"

namespace fjump {

enum class Side { left, right, pooled };

const char* side_name(Side s);

/// One-sided sample moments at the cutoff,
///   mu_j = n^{-1} sum_k 1(side) K_h(X_k - c) (X_k - c)^j,  j = 0, 1, 2,
/// with sigma0_sq = mu0 mu2 - mu1^2. Observations with X = c count as the
/// right side.
struct SideMoments {
    double mu0 = 0.0, mu1 = 0.0, mu2 = 0.0;
    double sigma0_sq = 0.0;
    int n_effective = 0;  // observations with nonzero kernel weight
};

/// Per-observation local linear weights s_{+,in}, s_{-,in}, or the pooled
/// s_{p,in}. The weights satisfy (1/n) sum_i w_i = 1 and
/// (1/n) sum_i w_i (X_i - c) = 0 exactly up to floating point, and are
/// zero off the kernel support and on the wrong side of the cutoff.
struct WeightVector {
    std::vector<double> weights;
    Side side = Side::right;
    double bandwidth = 0.0;
    double cutoff = 0.0;
};

SideMoments side_moments(std::span<const double> xs, double c, double h,
                         Side side, const KernelSpec& kernel);

/// s_{+,in} = 1(X_i >= c) K_h(X_i - c) [mu2 - mu1 (X_i - c)] / sigma0_sq
/// (left side analogous with X_i < c). Throws errc::degenerate_data when
/// sigma0_sq is numerically zero on the requested side.
WeightVector local_linear_weights(std::span<const double> xs, double c, double h,
                                  Side side, const KernelSpec& kernel);

/// s_{p,in} = 1/2 s_{+,in} + 1/2 s_{-,in}. Both sides must share the same
/// cutoff and bandwidth.
WeightVector pooled_weights(const WeightVector& w_plus, const WeightVector& w_minus);

/// Zeroth-order (local constant) weights: equal weight on the side's
/// observations within [c - h, c + h], normalized so (1/n) sum w = 1. Used
/// by the localized k-sample comparator.
WeightVector local_constant_weights(std::span<const double> xs, double c, double h,
                                    Side side);

/// Boundary density estimate f_hat_X(c) = mu_{+,0} + mu_{-,0}; consistent
/// since the one-sided kernel masses integrate to 1.
double boundary_density(std::span<const double> xs, double c, double h,
                        const KernelSpec& kernel);

}  // namespace fjump
