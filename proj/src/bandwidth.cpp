#include "fjump/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fjump/errors.hpp"
#include "fjump/local_weights.hpp"
#include "fjump/rng.hpp"

namespace fjump {

std::vector<double> candidate_grid(std::span<const double> xs, double c,
                                   int n_bw, int min_side_points) {
    if (n_bw < 1) throw_error(errc::invalid_input, "candidate_grid: n_bw must be >= 1");
    std::vector<double> left, right;
    for (double x : xs) (x < c ? left : right).push_back(std::fabs(x - c));
    if ((int)left.size() < min_side_points || (int)right.size() < min_side_points) {
        std::ostringstream os;
        os << "too few observations per side: left=" << left.size()
           << " right=" << right.size() << " (need >= " << min_side_points << ")";
        throw_error(errc::degenerate_data, os.str());
    }
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    double lower = std::max(left[min_side_points - 1], right[min_side_points - 1]);
    double upper = std::max(left.back(), right.back());
    if (lower <= 0.0) lower = upper * 1e-6;
    if (!(lower < upper)) {
        std::ostringstream os;
        os << "degenerate covariate design: feasible bandwidth range is empty"
           << " (lower=" << lower << ", upper=" << upper << ")";
        throw_error(errc::degenerate_data, os.str());
    }
    std::vector<double> grid(n_bw);
    if (n_bw == 1) {
        grid[0] = std::exp(0.5 * (std::log(lower) + std::log(upper)));
        return grid;
    }
    double log_lo = std::log(lower), log_hi = std::log(upper);
    for (int i = 0; i < n_bw; ++i)
        grid[i] = std::exp(log_lo + (log_hi - log_lo) * i / (n_bw - 1));
    return grid;
}

CvPlan make_cv_plan(std::span<const double> xs, double c, int k_folds,
                    std::vector<double> grid, std::uint64_t seed,
                    int min_side_points) {
    if (k_folds < 2) throw_error(errc::invalid_input, "cv folds must be >= 2");
    if (grid.empty()) throw_error(errc::invalid_input, "empty candidate grid");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw_error(errc::invalid_input, "candidate grid must be increasing");

    std::vector<int> left, right;
    for (int i = 0; i < (int)xs.size(); ++i)
        (xs[i] < c ? left : right).push_back(i);

    // Seeded Fisher-Yates, then round-robin fold assignment within each side.
    Rng rng(seed ^ 0x5ca1ab1eULL);
    auto split = [&](std::vector<int>& idx) {
        for (int i = (int)idx.size() - 1; i > 0; --i)
            std::swap(idx[i], idx[rng.below((std::uint64_t)i + 1)]);
        std::vector<std::vector<int>> folds(k_folds);
        for (int i = 0; i < (int)idx.size(); ++i)
            folds[i % k_folds].push_back(idx[i]);
        return folds;
    };

    CvPlan plan;
    plan.seed = seed;
    plan.grid = std::move(grid);
    plan.left_folds = split(left);
    plan.right_folds = split(right);

    double h_max = plan.grid.back();
    for (int k = 0; k < k_folds; ++k) {
        int train_left = 0, train_right = 0;
        for (int i = 0; i < (int)xs.size(); ++i) {
            bool held_out =
                std::find(plan.left_folds[k].begin(), plan.left_folds[k].end(), i) !=
                    plan.left_folds[k].end() ||
                std::find(plan.right_folds[k].begin(), plan.right_folds[k].end(), i) !=
                    plan.right_folds[k].end();
            if (held_out || std::fabs(xs[i] - c) > h_max) continue;
            (xs[i] < c ? train_left : train_right)++;
        }
        if (train_left < min_side_points || train_right < min_side_points) {
            std::ostringstream os;
            os << "fold " << k << " leaves too few training points per side ("
               << train_left << " left, " << train_right << " right)";
            throw_error(errc::degenerate_data, os.str());
        }
    }
    return plan;
}

CvCurve cv_select(std::span<const double> xs,
                  std::span<const MetricObject> objects, double c,
                  const CvPlan& plan, const KernelSpec& kernel) {
    if (objects.size() != xs.size())
        throw_error(errc::invalid_input, "cv_select: xs/objects length mismatch");
    const int k_folds = (int)plan.left_folds.size();

    CvCurve curve;
    curve.h = plan.grid;
    curve.cv.assign(plan.grid.size(), std::numeric_limits<double>::quiet_NaN());

    for (size_t gi = 0; gi < plan.grid.size(); ++gi) {
        double h = plan.grid[gi];
        double total = 0.0;
        try {
            for (int k = 0; k < k_folds; ++k) {
                std::vector<double> train_x;
                std::vector<MetricObject> train_y;
                std::vector<char> held(xs.size(), 0);
                for (int i : plan.left_folds[k]) held[i] = 1;
                for (int i : plan.right_folds[k]) held[i] = 1;
                for (size_t i = 0; i < xs.size(); ++i) {
                    if (held[i]) continue;
                    train_x.push_back(xs[i]);
                    train_y.push_back(objects[i]);
                }
                auto fit = [&](Side side) {
                    WeightVector wv = local_linear_weights(train_x, c, h, side, kernel);
                    std::vector<double> unit(wv.weights.size());
                    for (size_t i = 0; i < unit.size(); ++i)
                        unit[i] = wv.weights[i] / (double)unit.size();
                    return weighted_frechet_mean(train_y, unit);
                };
                MetricObject mean_left = fit(Side::left);
                MetricObject mean_right = fit(Side::right);
                for (int i : plan.left_folds[k]) {
                    double d = distance(objects[i], mean_left);
                    total += d * d;
                }
                for (int i : plan.right_folds[k]) {
                    double d = distance(objects[i], mean_right);
                    total += d * d;
                }
            }
        } catch (const Error& e) {
            std::ostringstream os;
            os << "h=" << h << ": " << e.what();
            curve.failures.push_back(os.str());
            continue;
        }
        curve.cv[gi] = total;
    }

    // Argmin over feasible candidates; ascending scan breaks ties toward
    // the smaller bandwidth.
    double best = std::numeric_limits<double>::infinity();
    double selected = 0.0;
    for (size_t gi = 0; gi < plan.grid.size(); ++gi) {
        if (std::isnan(curve.cv[gi])) continue;
        if (curve.cv[gi] < best) {
            best = curve.cv[gi];
            selected = plan.grid[gi];
        }
    }
    if (selected == 0.0) {
        std::ostringstream os;
        os << "all candidate bandwidths failed:";
        for (const auto& f : curve.failures) os << "\n  " << f;
        throw_error(errc::degenerate_data, os.str());
    }
    curve.selected = selected;
    return curve;
}

}  // namespace fjump
