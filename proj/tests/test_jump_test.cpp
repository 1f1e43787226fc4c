#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fjump/errors.hpp"
#include "fjump/jump_test.hpp"
#include "fjump/local_weights.hpp"
#include "fjump/rng.hpp"

using namespace fjump;

namespace {

// simple scalar dataset with a linear trend and noise
void make_scalar(Rng& rng, int n, double jump, std::vector<double>& xs,
                 std::vector<MetricObject>& objs) {
    xs.resize(n);
    objs.clear();
    for (int i = 0; i < n; ++i) {
        double x = rng.uniform();
        xs[i] = x;
        double y = 0.5 * (x - 0.5) + 0.3 * rng.normal();
        if (x >= 0.5) y += jump;
        objs.push_back(EuclideanScalar{y});
    }
}

}  // namespace

TEST_CASE("F_n arithmetic") {
    CHECK(compute_fn(1.0, 1.0, 1.0) == doctest::Approx(0.0));
    CHECK(compute_fn(2.0, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK(compute_fn(1.0, 0.5, 0.9) == doctest::Approx(0.3));
}

TEST_CASE("U_n arithmetic") {
    // (v+ - v-)^2 / (s (sig+ + sig-) / f)
    CHECK(compute_un(2.0, 1.0, 0.5, 0.5, 4.0, 2.0) ==
          doctest::Approx(1.0 / 2.0));
    CHECK(compute_un(1.0, 1.0, 0.3, 0.4, 4.0, 1.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(compute_un(1.0, 2.0, 0.0, 0.0, 4.0, 1.0), Error);
}

TEST_CASE("T_n and its chi-squared p-value") {
    // nh*U + nh*F^2/denom with denom = s(sig+ + sig-)/f
    auto [t, p] = compute_tn(0.0, 3.841459 / 100.0, 100, 1.0, 0.5, 0.5, 1.0, 1.0);
    CHECK(t == doctest::Approx(3.841459));
    CHECK(p == doctest::Approx(0.05).epsilon(1e-5));

    auto [t0, p0] = compute_tn(0.0, 0.0, 50, 0.2, 1.0, 1.0, 4.0, 1.0);
    CHECK(t0 == 0.0);
    CHECK(p0 == 1.0);
}

TEST_CASE("side estimates reproduce the weighted moments") {
    Rng rng(3);
    int n = 40;
    std::vector<double> xs;
    std::vector<MetricObject> objs;
    make_scalar(rng, n, 0.0, xs, objs);
    KernelSpec kern{KernelKind::epanechnikov};
    WeightVector w = local_linear_weights(xs, 0.5, 0.4, Side::right, kern);
    SideEstimates est = side_estimates(objs, w);

    double mean = std::get<EuclideanScalar>(est.mean).value;
    double m2 = 0.0, m4 = 0.0, a2 = 0.0, a4 = 0.0, asum = 0.0;
    for (int i = 0; i < n; ++i) asum += std::fabs(w.weights[i] / n);
    for (int i = 0; i < n; ++i) {
        double u = w.weights[i] / n;
        double y = std::get<EuclideanScalar>(objs[i]).value;
        double d2 = (y - mean) * (y - mean);
        m2 += u * d2;
        m4 += u * d2 * d2;
        a2 += std::fabs(u) / asum * d2;
        a4 += std::fabs(u) / asum * d2 * d2;
    }
    CHECK(est.variance == doctest::Approx(m2).epsilon(1e-10));
    double expected =
        std::max({m4 - m2 * m2, a4 - a2 * a2, 1e-12});
    CHECK(est.sigma_v_sq == doctest::Approx(expected).epsilon(1e-10));

    // shortcut identity: m4 - m2^2 equals the centered second moment
    double direct = 0.0;
    for (int i = 0; i < n; ++i) {
        double u = w.weights[i] / n;
        double y = std::get<EuclideanScalar>(objs[i]).value;
        double d2 = (y - mean) * (y - mean);
        direct += u * (d2 - m2) * (d2 - m2);
    }
    CHECK(m4 - m2 * m2 == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("full test runs and rejects a scalar jump") {
    Rng rng(11);
    std::vector<double> xs;
    std::vector<MetricObject> objs;
    make_scalar(rng, 500, 1.0, xs, objs);
    TestConfig cfg;
    cfg.seed = 7;
    TestResult res = run_test(xs, objs, 0.5, cfg);
    CHECK(res.p_value < 0.05);
    CHECK(res.t_n > 3.841459);
    CHECK(res.h_var < res.h_mean);
    CHECK(res.h_var ==
          doctest::Approx(res.h_mean * std::pow(500.0, -1.0 / 20.0)));
    CHECK(res.n_left + res.n_right == 500);
    CHECK(res.f_x_hat > 0.0);
}

TEST_CASE("null scalar data yields moderate statistics") {
    Rng rng(12);
    std::vector<double> xs;
    std::vector<MetricObject> objs;
    make_scalar(rng, 500, 0.0, xs, objs);
    TestConfig cfg;
    cfg.seed = 7;
    TestResult res = run_test(xs, objs, 0.5, cfg);
    CHECK(res.t_n >= 0.0);
    CHECK(res.p_value > 0.001);  // not an extreme rejection
    // F_n may be slightly negative in sample but not by much
    double eps = 10.0 / std::sqrt(500.0 * res.h_var) *
                 std::max(res.sigma_plus_sq, res.sigma_minus_sq);
    CHECK(res.f_n >= -eps);
}

TEST_CASE("permutation invariance") {
    Rng rng(21);
    std::vector<double> xs;
    std::vector<MetricObject> objs;
    make_scalar(rng, 200, 0.5, xs, objs);
    TestConfig cfg;
    cfg.seed = 9;
    cfg.fixed_bandwidth = 0.3;  // folds do not matter with a pinned bandwidth
    TestResult a = run_test(xs, objs, 0.5, cfg);

    std::vector<int> perm(200);
    for (int i = 0; i < 200; ++i) perm[i] = i;
    Rng shuffle(77);
    for (int i = 199; i > 0; --i)
        std::swap(perm[i], perm[shuffle.below(i + 1)]);
    std::vector<double> xs2(200);
    std::vector<MetricObject> objs2;
    for (int i = 0; i < 200; ++i) {
        xs2[i] = xs[perm[i]];
        objs2.push_back(objs[perm[i]]);
    }
    TestResult b = run_test(xs2, objs2, 0.5, cfg);
    CHECK(a.t_n == doctest::Approx(b.t_n).epsilon(1e-8));
    CHECK(a.p_value == doctest::Approx(b.p_value).epsilon(1e-8));
    CHECK(a.v_plus == doctest::Approx(b.v_plus).epsilon(1e-8));
}

TEST_CASE("scale equivariance of the decision") {
    Rng rng(22);
    std::vector<double> xs;
    std::vector<MetricObject> objs;
    make_scalar(rng, 300, 0.0, xs, objs);
    TestConfig cfg;
    cfg.seed = 13;
    TestResult a = run_test(xs, objs, 0.5, cfg);

    const double lambda = 3.7;
    std::vector<double> xs2(xs);
    for (double& x : xs2) x *= lambda;
    TestConfig cfg2 = cfg;
    cfg2.fixed_bandwidth = a.h_mean * lambda;
    TestConfig cfg1 = cfg;
    cfg1.fixed_bandwidth = a.h_mean;
    TestResult base = run_test(xs, objs, 0.5, cfg1);
    TestResult scaled = run_test(xs2, objs, 0.5 * lambda, cfg2);
    CHECK(base.t_n == doctest::Approx(scaled.t_n).epsilon(1e-8));
    CHECK(base.p_value == doctest::Approx(scaled.p_value).epsilon(1e-8));
    CHECK(base.v_plus == doctest::Approx(scaled.v_plus).epsilon(1e-8));
    CHECK(base.v_minus == doctest::Approx(scaled.v_minus).epsilon(1e-8));
}

TEST_CASE("reflection swaps the sides") {
    Rng rng(23);
    std::vector<double> xs;
    std::vector<MetricObject> objs;
    make_scalar(rng, 300, 0.0, xs, objs);
    TestConfig cfg;
    cfg.seed = 31;
    cfg.fixed_bandwidth = 0.25;
    TestResult a = run_test(xs, objs, 0.5, cfg);

    std::vector<double> xs2(xs);
    for (double& x : xs2) x = 1.0 - x;  // no x sits exactly at the cutoff
    TestResult b = run_test(xs2, objs, 0.5, cfg);
    CHECK(a.v_plus == doctest::Approx(b.v_minus).epsilon(1e-8));
    CHECK(a.v_minus == doctest::Approx(b.v_plus).epsilon(1e-8));
    CHECK(a.t_n == doctest::Approx(b.t_n).epsilon(1e-8));
}

TEST_CASE("insufficient one-sided data errors") {
    std::vector<double> xs = {0.1, 0.2, 0.3};
    std::vector<MetricObject> objs = {EuclideanScalar{1.0}, EuclideanScalar{2.0},
                                      EuclideanScalar{3.0}};
    Rng rng(41);
    for (int i = 0; i < 50; ++i) {
        xs.push_back(0.5 + 0.4 * rng.uniform());
        objs.push_back(EuclideanScalar{rng.normal()});
    }
    TestConfig cfg;
    CHECK_THROWS_WITH_AS(run_test(xs, objs, 0.5, cfg),
                         doctest::Contains("left"), Error);
}

TEST_CASE("constant data on both sides errors") {
    std::vector<double> xs;
    std::vector<MetricObject> objs;
    Rng rng(43);
    for (int i = 0; i < 100; ++i) {
        xs.push_back(rng.uniform());
        objs.push_back(EuclideanScalar{2.0});
    }
    TestConfig cfg;
    cfg.fixed_bandwidth = 0.4;
    CHECK_THROWS_WITH_AS(run_test(xs, objs, 0.5, cfg),
                         doctest::Contains("degenerate variance"), Error);
}

TEST_CASE("config validation") {
    std::vector<double> xs;
    std::vector<MetricObject> objs;
    Rng rng(44);
    make_scalar(rng, 100, 0.0, xs, objs);
    TestConfig cfg;
    cfg.cv_folds = 1;
    CHECK_THROWS_AS(run_test(xs, objs, 0.5, cfg), Error);
    TestConfig cfg2;
    cfg2.fixed_bandwidth = -0.1;
    CHECK_THROWS_AS(run_test(xs, objs, 0.5, cfg2), Error);
    std::vector<double> empty;
    std::vector<MetricObject> none;
    CHECK_THROWS_AS(run_test(empty, none, 0.5, TestConfig{}), Error);
}
