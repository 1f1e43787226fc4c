#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fjump/kernels.hpp"
#include "fjump/metric_space.hpp"

namespace fjump {

/// Stratified K-fold partition for bandwidth cross-validation: left and
/// right observations are each split into K folds by a seeded shuffle.
struct CvPlan {
    std::vector<std::vector<int>> left_folds;   // indices into the dataset
    std::vector<std::vector<int>> right_folds;
    std::vector<double> grid;                   // increasing candidate bandwidths
    std::uint64_t seed = 0;
};

/// Geometrically spaced candidate bandwidths. The lower endpoint is the
/// smallest h covering at least min_side_points observations on each side;
/// the upper endpoint is the larger one-sided covariate range.
std::vector<double> candidate_grid(std::span<const double> xs, double c,
                                   int n_bw, int min_side_points);

CvPlan make_cv_plan(std::span<const double> xs, double c, int k_folds,
                    std::vector<double> grid, std::uint64_t seed,
                    int min_side_points);

struct CvCurve {
    std::vector<double> h;      // evaluated candidates, increasing
    std::vector<double> cv;     // CV(h); NaN where the candidate failed
    std::vector<std::string> failures;
    double selected = 0.0;
};

/// CV(h) = sum over folds of squared distances between held-out objects and
/// the training-data one-sided Frechet means at c. Failed candidates are
/// skipped; ties break toward the smaller bandwidth.
CvCurve cv_select(std::span<const double> xs,
                  std::span<const MetricObject> objects, double c,
                  const CvPlan& plan, const KernelSpec& kernel);

}  // namespace fjump
