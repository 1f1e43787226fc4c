#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fjump {

/// Supported object spaces. `euclidean` is a scalar variant kept as a
/// testing oracle: every estimator reduces to classical weighted least
/// squares there.
enum class Space { density, covariance, network, sphere, euclidean };

const char* space_name(Space s);
Space space_from_name(const std::string& name);

/// Quantile function of a univariate distribution sampled on the
/// equidistant interior grid {1/(m+1), ..., m/(m+1)} of (0,1). The
/// squared distance is the discretized 2-Wasserstein metric,
/// d^2(a, b) = (1/m) * sum_j (a_j - b_j)^2.
struct QuantileDensity {
    Eigen::VectorXd values;  // nondecreasing
};

/// Symmetric positive semidefinite matrix under the Frobenius metric.
struct CovMatrix {
    Eigen::MatrixXd entries;
};

/// Graph Laplacian L = D - A of an undirected graph: symmetric,
/// nonpositive off-diagonal, zero row sums. Frobenius metric.
struct NetworkLaplacian {
    Eigen::MatrixXd entries;
};

/// Unit vector with nonnegative components on S^{k-1}, geodesic metric
/// d(y1, y2) = arccos(y1' y2).
struct SpherePoint {
    Eigen::VectorXd coords;
};

struct EuclideanScalar {
    double value = 0.0;
};

using MetricObject = std::variant<QuantileDensity, CovMatrix, NetworkLaplacian,
                                  SpherePoint, EuclideanScalar>;

Space space_of(const MetricObject& obj);

/// Ambient dimension: grid size m, matrix order p, or vector length k.
int dimension_of(const MetricObject& obj);

/// Metric distance between two objects of the same variant and dimension.
/// Throws errc::dimension_mismatch otherwise.
double distance(const MetricObject& a, const MetricObject& b);

/// List of violated type invariants, empty iff the object is valid.
std::vector<std::string> validate(const MetricObject& obj);

/// Nearest point of the space's constraint set to a raw coefficient array
/// under the ambient L2/Frobenius norm. `raw` is the quantile grid, the
/// row-major matrix, or the vector of coordinates depending on `space`.
/// Idempotent on valid objects.
MetricObject project_to_space(std::span<const double> raw, Space space, int dim);

/// Weighted Frechet mean argmin_w sum_i weights[i] d^2(Y_i, w).
///
/// Weights must sum to 1 (local linear weights may be negative). For the
/// linear-embedding spaces the minimizer is the metric projection of the
/// weighted Euclidean average onto the constraint set; for the sphere it
/// is computed by projected Riemannian gradient descent.
MetricObject weighted_frechet_mean(std::span<const MetricObject> objects,
                                   std::span<const double> weights);

/// L2 projection of a sequence onto the nondecreasing cone
/// (pool-adjacent-violators).
Eigen::VectorXd isotonic_projection(const Eigen::VectorXd& y);

/// Value of the Frechet objective sum_i weights[i] d^2(Y_i, omega).
double frechet_objective(std::span<const MetricObject> objects,
                         std::span<const double> weights,
                         const MetricObject& omega);

}  // namespace fjump
