#include "fjump/metric_space.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "fjump/errors.hpp"

namespace fjump {

const char* space_name(Space s) {
    switch (s) {
        case Space::density: return "density";
        case Space::covariance: return "covariance";
        case Space::network: return "network";
        case Space::sphere: return "sphere";
        case Space::euclidean: return "euclidean";
    }
    return "?";
}

Space space_from_name(const std::string& name) {
    for (Space s : {Space::density, Space::covariance, Space::network,
                    Space::sphere, Space::euclidean}) {
        if (name == space_name(s)) return s;
    }
    throw_error(errc::invalid_input, "unknown space: " + name);
}

Space space_of(const MetricObject& obj) {
    return std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, QuantileDensity>) return Space::density;
            else if constexpr (std::is_same_v<T, CovMatrix>) return Space::covariance;
            else if constexpr (std::is_same_v<T, NetworkLaplacian>) return Space::network;
            else if constexpr (std::is_same_v<T, SpherePoint>) return Space::sphere;
            else return Space::euclidean;
        },
        obj);
}

int dimension_of(const MetricObject& obj) {
    return std::visit(
        [](const auto& v) -> int {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, QuantileDensity>) return (int)v.values.size();
            else if constexpr (std::is_same_v<T, CovMatrix>) return (int)v.entries.rows();
            else if constexpr (std::is_same_v<T, NetworkLaplacian>) return (int)v.entries.rows();
            else if constexpr (std::is_same_v<T, SpherePoint>) return (int)v.coords.size();
            else return 1;
        },
        obj);
}

namespace {

void require_compatible(const MetricObject& a, const MetricObject& b) {
    if (space_of(a) != space_of(b))
        throw_error(errc::dimension_mismatch,
                    std::string("variant mismatch: ") + space_name(space_of(a)) +
                        " vs " + space_name(space_of(b)));
    if (dimension_of(a) != dimension_of(b)) {
        std::ostringstream os;
        os << "dimension mismatch: " << dimension_of(a) << " vs " << dimension_of(b);
        throw_error(errc::dimension_mismatch, os.str());
    }
}

}  // namespace

double distance(const MetricObject& a, const MetricObject& b) {
    require_compatible(a, b);
    if (const auto* qa = std::get_if<QuantileDensity>(&a)) {
        const auto& qb = std::get<QuantileDensity>(b);
        double m = (double)qa->values.size();
        return std::sqrt((qa->values - qb.values).squaredNorm() / m);
    }
    if (const auto* ca = std::get_if<CovMatrix>(&a)) {
        return (ca->entries - std::get<CovMatrix>(b).entries).norm();
    }
    if (const auto* la = std::get_if<NetworkLaplacian>(&a)) {
        return (la->entries - std::get<NetworkLaplacian>(b).entries).norm();
    }
    if (const auto* sa = std::get_if<SpherePoint>(&a)) {
        double dot = sa->coords.dot(std::get<SpherePoint>(b).coords);
        return std::acos(std::clamp(dot, -1.0, 1.0));
    }
    return std::fabs(std::get<EuclideanScalar>(a).value -
                     std::get<EuclideanScalar>(b).value);
}

std::vector<std::string> validate(const MetricObject& obj) {
    std::vector<std::string> out;
    if (const auto* q = std::get_if<QuantileDensity>(&obj)) {
        for (int i = 0; i + 1 < q->values.size(); ++i) {
            if (q->values[i + 1] < q->values[i] - 1e-12) {
                out.push_back("quantile values not nondecreasing");
                break;
            }
        }
        if (!q->values.allFinite()) out.push_back("non-finite quantile value");
    } else if (const auto* c = std::get_if<CovMatrix>(&obj)) {
        const auto& m = c->entries;
        if (m.rows() != m.cols()) {
            out.push_back("matrix not square");
            return out;
        }
        if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10)
            out.push_back("matrix not symmetric");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()),
                                                          Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-8)
            out.push_back("matrix not positive semidefinite");
    } else if (const auto* l = std::get_if<NetworkLaplacian>(&obj)) {
        const auto& m = l->entries;
        if (m.rows() != m.cols()) {
            out.push_back("matrix not square");
            return out;
        }
        if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10)
            out.push_back("Laplacian not symmetric");
        bool offdiag_ok = true;
        for (int i = 0; i < m.rows() && offdiag_ok; ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (i != j && m(i, j) > 1e-10) {
                    out.push_back("positive off-diagonal entry");
                    offdiag_ok = false;
                    break;
                }
        if (m.rowwise().sum().cwiseAbs().maxCoeff() > 1e-8)
            out.push_back("row sums not zero");
    } else if (const auto* s = std::get_if<SpherePoint>(&obj)) {
        if (std::fabs(s->coords.norm() - 1.0) > 1e-10)
            out.push_back("coordinates not unit norm");
        if (s->coords.minCoeff() < -1e-12)
            out.push_back("negative coordinate");
    } else {
        if (!std::isfinite(std::get<EuclideanScalar>(obj).value))
            out.push_back("non-finite scalar");
    }
    return out;
}

Eigen::VectorXd isotonic_projection(const Eigen::VectorXd& y) {
    // Pool-adjacent-violators with block merging.
    const int n = (int)y.size();
    std::vector<double> mean(n), weight(n);
    std::vector<int> len(n);
    int top = 0;
    for (int i = 0; i < n; ++i) {
        mean[top] = y[i];
        weight[top] = 1.0;
        len[top] = 1;
        ++top;
        while (top > 1 && mean[top - 2] > mean[top - 1]) {
            double w = weight[top - 2] + weight[top - 1];
            mean[top - 2] = (weight[top - 2] * mean[top - 2] +
                             weight[top - 1] * mean[top - 1]) / w;
            weight[top - 2] = w;
            len[top - 2] += len[top - 1];
            --top;
        }
    }
    Eigen::VectorXd out(n);
    int pos = 0;
    for (int b = 0; b < top; ++b)
        for (int k = 0; k < len[b]; ++k) out[pos++] = mean[b];
    return out;
}

namespace {

Eigen::MatrixXd psd_projection(const Eigen::MatrixXd& m) {
    Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXd laplacian_projection(const Eigen::MatrixXd& m) {
    Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    const int p = (int)sym.rows();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (i != j) out(i, j) = std::min(sym(i, j), 0.0);
    for (int i = 0; i < p; ++i) out(i, i) = -out.row(i).sum();
    return out;
}

SpherePoint sphere_projection(const Eigen::VectorXd& v) {
    Eigen::VectorXd clamped = v.cwiseMax(0.0);
    double norm = clamped.norm();
    if (norm < 1e-14)
        throw_error(errc::degenerate_data,
                    "sphere projection of the zero vector is undefined");
    return SpherePoint{clamped / norm};
}

double sphere_objective(std::span<const MetricObject> objects,
                        std::span<const double> weights,
                        const Eigen::VectorXd& omega) {
    double obj = 0.0;
    for (size_t i = 0; i < objects.size(); ++i) {
        double dot = std::get<SpherePoint>(objects[i]).coords.dot(omega);
        double d = std::acos(std::clamp(dot, -1.0, 1.0));
        obj += weights[i] * d * d;
    }
    return obj;
}

SpherePoint sphere_frechet_mean(std::span<const MetricObject> objects,
                                std::span<const double> weights) {
    const int k = dimension_of(objects[0]);
    Eigen::VectorXd avg = Eigen::VectorXd::Zero(k);
    double abs_sum = 0.0;
    for (size_t i = 0; i < objects.size(); ++i) {
        avg += weights[i] * std::get<SpherePoint>(objects[i]).coords;
        abs_sum += std::fabs(weights[i]);
    }
    Eigen::VectorXd omega = sphere_projection(avg).coords;

    const double base_step = 1.0 / (2.0 * abs_sum);
    double obj = sphere_objective(objects, weights, omega);
    for (int it = 0; it < 500; ++it) {
        // Riemannian gradient of sum_i w_i arccos(y_i' w)^2.
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(k);
        for (size_t i = 0; i < objects.size(); ++i) {
            const auto& y = std::get<SpherePoint>(objects[i]).coords;
            double t = std::clamp(y.dot(omega), -1.0, 1.0);
            double d = std::acos(t);
            double s = std::sqrt(std::max(1.0 - t * t, 1e-24));
            double phi = (d < 1e-8) ? 1.0 : d / s;
            grad -= 2.0 * weights[i] * phi * (y - t * omega);
        }
        if (grad.norm() * base_step < 1e-14) return SpherePoint{omega};

        double step = base_step;
        bool improved = false;
        for (int half = 0; half < 40; ++half) {
            Eigen::VectorXd cand = (omega - step * grad).cwiseMax(0.0);
            if (cand.norm() < 1e-14) {
                step *= 0.5;
                continue;
            }
            cand.normalize();
            double cand_obj = sphere_objective(objects, weights, cand);
            if (cand_obj <= obj) {
                double decrease = obj - cand_obj;
                omega = cand;
                obj = cand_obj;
                improved = true;
                if (decrease < 1e-12) return SpherePoint{omega};
                break;
            }
            step *= 0.5;
        }
        if (!improved) return SpherePoint{omega};  // at a stationary point
    }
    std::ostringstream os;
    os << "sphere Frechet mean did not converge; last iterate: [";
    for (int i = 0; i < omega.size(); ++i) os << (i ? ", " : "") << omega[i];
    os << "]";
    throw_error(errc::no_convergence, os.str());
}

}  // namespace

MetricObject project_to_space(std::span<const double> raw, Space space, int dim) {
    switch (space) {
        case Space::density: {
            if ((int)raw.size() != dim)
                throw_error(errc::dimension_mismatch, "density grid size mismatch");
            Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(raw.data(), dim);
            return QuantileDensity{isotonic_projection(v)};
        }
        case Space::covariance: {
            if ((int)raw.size() != dim * dim)
                throw_error(errc::dimension_mismatch, "matrix size mismatch");
            Eigen::MatrixXd m = Eigen::Map<const Eigen::Matrix<
                double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
                raw.data(), dim, dim);
            return CovMatrix{psd_projection(m)};
        }
        case Space::network: {
            if ((int)raw.size() != dim * dim)
                throw_error(errc::dimension_mismatch, "matrix size mismatch");
            Eigen::MatrixXd m = Eigen::Map<const Eigen::Matrix<
                double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
                raw.data(), dim, dim);
            return NetworkLaplacian{laplacian_projection(m)};
        }
        case Space::sphere: {
            if ((int)raw.size() != dim)
                throw_error(errc::dimension_mismatch, "sphere dimension mismatch");
            Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(raw.data(), dim);
            return sphere_projection(v);
        }
        case Space::euclidean:
            if (raw.size() != 1)
                throw_error(errc::dimension_mismatch, "scalar expects one value");
            return EuclideanScalar{raw[0]};
    }
    throw_error(errc::invalid_input, "unknown space tag");
}

MetricObject weighted_frechet_mean(std::span<const MetricObject> objects,
                                   std::span<const double> weights) {
    if (objects.empty())
        throw_error(errc::invalid_input, "weighted_frechet_mean: empty input");
    if (objects.size() != weights.size())
        throw_error(errc::invalid_input,
                    "weighted_frechet_mean: objects/weights length mismatch");
    double sum = 0.0;
    for (double w : weights) sum += w;
    if (sum <= 0.0)
        throw_error(errc::invalid_input,
                    "weighted_frechet_mean: weight sum must be positive");
    if (std::fabs(sum - 1.0) > 1e-6)
        throw_error(errc::invalid_input,
                    "weighted_frechet_mean: weights must sum to 1");
    for (size_t i = 1; i < objects.size(); ++i)
        require_compatible(objects[0], objects[i]);

    const Space space = space_of(objects[0]);
    const int dim = dimension_of(objects[0]);
    switch (space) {
        case Space::density: {
            Eigen::VectorXd avg = Eigen::VectorXd::Zero(dim);
            for (size_t i = 0; i < objects.size(); ++i)
                avg += weights[i] * std::get<QuantileDensity>(objects[i]).values;
            return QuantileDensity{isotonic_projection(avg)};
        }
        case Space::covariance: {
            Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(dim, dim);
            for (size_t i = 0; i < objects.size(); ++i)
                avg += weights[i] * std::get<CovMatrix>(objects[i]).entries;
            return CovMatrix{psd_projection(avg)};
        }
        case Space::network: {
            Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(dim, dim);
            for (size_t i = 0; i < objects.size(); ++i)
                avg += weights[i] * std::get<NetworkLaplacian>(objects[i]).entries;
            return NetworkLaplacian{laplacian_projection(avg)};
        }
        case Space::sphere:
            return sphere_frechet_mean(objects, weights);
        case Space::euclidean: {
            double avg = 0.0;
            for (size_t i = 0; i < objects.size(); ++i)
                avg += weights[i] * std::get<EuclideanScalar>(objects[i]).value;
            return EuclideanScalar{avg};
        }
    }
    throw_error(errc::invalid_input, "unknown space tag");
}

double frechet_objective(std::span<const MetricObject> objects,
                         std::span<const double> weights,
                         const MetricObject& omega) {
    double obj = 0.0;
    for (size_t i = 0; i < objects.size(); ++i) {
        double d = distance(objects[i], omega);
        obj += weights[i] * d * d;
    }
    return obj;
}

}  // namespace fjump
