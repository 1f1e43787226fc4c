#include "fjump/simulation.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fjump/bandwidth.hpp"
#include "fjump/errors.hpp"
#include "fjump/rng.hpp"
#include "fjump/special_math.hpp"

namespace fjump {

const char* signal_name(Signal s) {
    return s == Signal::piecewise_smooth ? "piecewise_smooth" : "piecewise_constant";
}

Signal signal_from_name(const std::string& name) {
    if (name == "piecewise_smooth") return Signal::piecewise_smooth;
    if (name == "piecewise_constant") return Signal::piecewise_constant;
    throw_error(errc::invalid_input, "unknown signal: " + name);
}

bool is_null_jump(Space space, double jump) {
    return space == Space::covariance ? jump == 1.0 : jump == 0.0;
}

namespace {

constexpr int kDensityGrid = 50;
constexpr int kCovDim = 3;
constexpr int kCovDraws = 300;
constexpr int kNetworkNodes = 10;

Dataset gen_density(const DgpSpec& spec, Rng& rng) {
    // Gaussian quantile grid on the interior points j/(m+1).
    Eigen::VectorXd base(kDensityGrid);
    for (int j = 0; j < kDensityGrid; ++j)
        base[j] = normal_quantile((j + 1) / (double)(kDensityGrid + 1));

    Dataset data;
    data.xs.resize(spec.n);
    data.objects.reserve(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        double x = rng.uniform();
        data.xs[i] = x;
        double mu = spec.signal == Signal::piecewise_smooth ? 0.8 * (x - 0.5) : 0.5;
        if (x >= spec.cutoff) mu += spec.jump;
        // The object's own mean is noisy around mu(x); the conditional
        // Frechet variance equals that noise variance.
        mu += 0.25 * rng.normal();
        data.objects.push_back(QuantileDensity{(base.array() + mu).matrix()});
    }
    return data;
}

Dataset gen_cov(const DgpSpec& spec, Rng& rng) {
    if (spec.jump <= 0.0)
        throw_error(errc::invalid_input, "covariance scale beta_C must be > 0");
    Dataset data;
    data.xs.resize(spec.n);
    data.objects.reserve(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        double x = rng.uniform();
        data.xs[i] = x;
        Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(kCovDim, kCovDim);
        double diag = 1.5, off = 0.2;
        if (spec.signal == Signal::piecewise_smooth) {
            diag += 0.6 * (x - 0.5);
            off += 0.3 * (x - 0.5);
        }
        sigma.diagonal().setConstant(diag);
        sigma(0, 1) = sigma(1, 0) = off;
        if (x >= spec.cutoff) sigma *= spec.jump;  // D_beta Sigma D_beta

        Eigen::MatrixXd chol = sigma.llt().matrixL();
        // Sample covariance of kCovDraws multivariate normal draws.
        Eigen::MatrixXd draws(kCovDim, kCovDraws);
        for (int d = 0; d < kCovDraws; ++d) {
            Eigen::VectorXd z(kCovDim);
            for (int j = 0; j < kCovDim; ++j) z[j] = rng.normal();
            draws.col(d) = chol * z;
        }
        Eigen::VectorXd mean = draws.rowwise().mean();
        Eigen::MatrixXd centered = draws.colwise() - mean;
        Eigen::MatrixXd sample_cov =
            centered * centered.transpose() / (double)(kCovDraws - 1);
        data.objects.push_back(CovMatrix{std::move(sample_cov)});
    }
    return data;
}

Dataset gen_network(const DgpSpec& spec, Rng& rng) {
    Dataset data;
    data.xs.resize(spec.n);
    data.objects.reserve(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        double x = rng.uniform();
        data.xs[i] = x;
        double p = spec.signal == Signal::piecewise_smooth ? 0.4 + 0.2 * (x - 0.5) : 0.4;
        if (x >= spec.cutoff) p += spec.jump;
        p = std::clamp(p, 0.05, 0.95);

        Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(kNetworkNodes, kNetworkNodes);
        for (int u = 0; u < kNetworkNodes; ++u)
            for (int v = u + 1; v < kNetworkNodes; ++v)
                if (rng.bernoulli(p)) adj(u, v) = adj(v, u) = 1.0;
        Eigen::MatrixXd lap = -adj;
        for (int u = 0; u < kNetworkNodes; ++u) lap(u, u) = adj.row(u).sum();
        data.objects.push_back(NetworkLaplacian{std::move(lap)});
    }
    return data;
}

}  // namespace

Dataset generate(const DgpSpec& spec) {
    if (spec.n < 1) throw_error(errc::invalid_input, "sample size must be positive");
    Rng rng(Rng::stream(spec.seed, 0).next());
    switch (spec.space) {
        case Space::density: return gen_density(spec, rng);
        case Space::covariance: return gen_cov(spec, rng);
        case Space::network: return gen_network(spec, rng);
        default:
            throw_error(errc::invalid_input,
                        "simulation supports density, covariance, and network spaces");
    }
}

std::pair<double, double> comparator_test(const Dataset& data, double c,
                                          double window_h, int min_side_points) {
    const size_t n = data.xs.size();
    WeightVector wp = local_constant_weights(data.xs, c, window_h, Side::right);
    WeightVector wm = local_constant_weights(data.xs, c, window_h, Side::left);
    int n_right = 0, n_left = 0;
    for (size_t i = 0; i < n; ++i) {
        if (wp.weights[i] != 0.0) ++n_right;
        if (wm.weights[i] != 0.0) ++n_left;
    }
    if (n_right < min_side_points || n_left < min_side_points)
        throw_error(errc::degenerate_data,
                    "comparator: too few observations inside the window");

    SideEstimates plus = side_estimates(data.objects, wp);
    SideEstimates minus = side_estimates(data.objects, wm);
    SideEstimates pooled = side_estimates(data.objects, pooled_weights(wp, wm));

    KernelSpec uniform{KernelKind::uniform};
    double f_hat = boundary_density(data.xs, c, window_h, uniform);
    // Local-constant variance constant: int_0^inf K^2 / K10^2 = 1 for the
    // uniform kernel.
    const double s_const = 1.0;
    double f_n = compute_fn(pooled.variance, plus.variance, minus.variance);
    double u_n = compute_un(plus.variance, minus.variance, plus.sigma_v_sq,
                            minus.sigma_v_sq, s_const, f_hat);
    return compute_tn(f_n, u_n, n, window_h, plus.sigma_v_sq, minus.sigma_v_sq,
                      s_const, f_hat);
}

namespace {

struct RepOutcome {
    bool ok = false;
    double t_n = 0.0;
    double p_value = 1.0;
    double selected_h = 0.0;
};

RepOutcome run_one(const DgpSpec& spec, int rep, const TestConfig& config,
                   TestMethod method) {
    RepOutcome out;
    try {
        DgpSpec rep_spec = spec;
        rep_spec.seed = Rng::stream(spec.seed, (std::uint64_t)rep).next();
        Dataset data = generate(rep_spec);
        TestConfig rep_config = config;
        rep_config.seed = Rng::stream(spec.seed ^ 0xc0ffeeULL, (std::uint64_t)rep).next();
        if (method == TestMethod::proposed) {
            TestResult res = run_test(data.xs, data.objects, spec.cutoff, rep_config);
            out.t_n = res.t_n;
            out.p_value = res.p_value;
            out.selected_h = res.h_mean;
        } else {
            // Window for the localized k-sample comparator: the proposed
            // test's CV bandwidth, for comparability.
            auto grid = candidate_grid(data.xs, spec.cutoff,
                                       rep_config.n_bandwidth_candidates,
                                       rep_config.min_side_points);
            CvPlan plan = make_cv_plan(data.xs, spec.cutoff, rep_config.cv_folds,
                                       grid, rep_config.seed,
                                       rep_config.min_side_points);
            double h = cv_select(data.xs, data.objects, spec.cutoff, plan,
                                 KernelSpec{rep_config.kernel}).selected;
            std::tie(out.t_n, out.p_value) =
                comparator_test(data, spec.cutoff, h, rep_config.min_side_points);
            out.selected_h = h;
        }
        out.ok = true;
    } catch (const Error&) {
        out.ok = false;
    }
    return out;
}

SimResult aggregate(const std::vector<RepOutcome>& outcomes, double alpha) {
    SimResult result;
    double h_sum = 0.0;
    int rejected = 0;
    for (const auto& o : outcomes) {
        if (!o.ok) {
            ++result.failures;
            continue;
        }
        ++result.replications;
        result.per_rep.emplace_back(o.t_n, o.p_value);
        if (o.p_value < alpha) ++rejected;
        h_sum += o.selected_h;
    }
    if (result.replications > 0) {
        result.rejection_rate = (double)rejected / result.replications;
        result.mean_selected_h = h_sum / result.replications;
    }
    return result;
}

}  // namespace

SimResult run_size_power(const DgpSpec& spec, int reps, double alpha,
                         const TestConfig& config, TestMethod method, int jobs) {
    if (reps < 1) throw_error(errc::invalid_input, "replications must be >= 1");
    std::vector<RepOutcome> outcomes(reps);
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#pragma omp parallel for schedule(dynamic)
#endif
    for (int r = 0; r < reps; ++r) outcomes[r] = run_one(spec, r, config, method);
    return aggregate(outcomes, alpha);
}

SimResult run_size_power_serial(const DgpSpec& spec, int reps, double alpha,
                                const TestConfig& config, TestMethod method) {
    if (reps < 1) throw_error(errc::invalid_input, "replications must be >= 1");
    std::vector<RepOutcome> outcomes(reps);
    for (int r = 0; r < reps; ++r) outcomes[r] = run_one(spec, r, config, method);
    return aggregate(outcomes, alpha);
}

}  // namespace fjump
