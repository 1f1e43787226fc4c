#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fjump/errors.hpp"
#include "fjump/metric_space.hpp"
#include "fjump/rng.hpp"

using namespace fjump;

namespace {

MetricObject rand_density(Rng& rng, int m) {
    Eigen::VectorXd v(m);
    for (int i = 0; i < m; ++i) v[i] = rng.normal();
    std::sort(v.begin(), v.end());
    return QuantileDensity{v};
}

MetricObject rand_cov(Rng& rng, int p) {
    Eigen::MatrixXd a(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) a(i, j) = rng.normal();
    return CovMatrix{a * a.transpose()};
}

MetricObject rand_network(Rng& rng, int nodes) {
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(nodes, nodes);
    for (int u = 0; u < nodes; ++u)
        for (int v = u + 1; v < nodes; ++v)
            if (rng.bernoulli(0.5)) adj(u, v) = adj(v, u) = 1.0;
    Eigen::MatrixXd lap = -adj;
    for (int u = 0; u < nodes; ++u) lap(u, u) = adj.row(u).sum();
    return NetworkLaplacian{lap};
}

MetricObject rand_sphere(Rng& rng, int k) {
    Eigen::VectorXd v(k);
    for (int i = 0; i < k; ++i) v[i] = std::fabs(rng.normal()) + 1e-3;
    v.normalize();
    return SpherePoint{v};
}

}  // namespace

TEST_CASE("space names round-trip") {
    for (Space s : {Space::density, Space::covariance, Space::network,
                    Space::sphere, Space::euclidean}) {
        CHECK(space_from_name(space_name(s)) == s);
    }
    CHECK_THROWS_AS(space_from_name("hilbert"), Error);
}

TEST_CASE("density distance on a one-point grid") {
    MetricObject a = QuantileDensity{Eigen::VectorXd::Constant(1, 0.0)};
    MetricObject b = QuantileDensity{Eigen::VectorXd::Constant(1, 3.0)};
    CHECK(distance(a, b) == doctest::Approx(3.0));
}

TEST_CASE("matrix distances are Frobenius") {
    Eigen::MatrixXd m1(2, 2), m2(2, 2);
    m1 << 2, 0, 0, 2;
    m2 << 1, 0, 0, 1;
    CHECK(distance(CovMatrix{m1}, CovMatrix{m2}) ==
          doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("sphere distance is the arc length") {
    Eigen::VectorXd e1(3), e2(3);
    e1 << 1, 0, 0;
    e2 << 0, 1, 0;
    CHECK(distance(SpherePoint{e1}, SpherePoint{e2}) ==
          doctest::Approx(M_PI / 2.0));
    CHECK(distance(SpherePoint{e1}, SpherePoint{e1}) == doctest::Approx(0.0));
}

TEST_CASE("mixed variants and dimensions are rejected") {
    MetricObject d = QuantileDensity{Eigen::VectorXd::Zero(3)};
    MetricObject d4 = QuantileDensity{Eigen::VectorXd::Zero(4)};
    MetricObject e = EuclideanScalar{1.0};
    CHECK_THROWS_AS(distance(d, e), Error);
    CHECK_THROWS_AS(distance(d, d4), Error);
}

TEST_CASE("metric properties on random objects") {
    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<MetricObject> objs = {
            rand_density(rng, 5), rand_cov(rng, 3), rand_network(rng, 6),
            rand_sphere(rng, 4)};
        for (const MetricObject& base : objs) {
            MetricObject a = base, b = base, c = base;
            // independent draws of the same variant/dimension
            switch (space_of(base)) {
                case Space::density:
                    b = rand_density(rng, 5); c = rand_density(rng, 5); break;
                case Space::covariance:
                    b = rand_cov(rng, 3); c = rand_cov(rng, 3); break;
                case Space::network:
                    b = rand_network(rng, 6); c = rand_network(rng, 6); break;
                default:
                    b = rand_sphere(rng, 4); c = rand_sphere(rng, 4); break;
            }
            double dab = distance(a, b);
            CHECK(dab >= 0.0);
            CHECK(dab == doctest::Approx(distance(b, a)).epsilon(1e-12));
            // arccos near 1 limits the sphere self-distance to ~sqrt(eps)
            CHECK(distance(a, a) < 1e-7);
            CHECK(dab <= distance(a, c) + distance(c, b) + 1e-9);
        }
    }
}

TEST_CASE("validate flags broken invariants") {
    Eigen::VectorXd dec(3);
    dec << 1.0, 0.5, 2.0;
    CHECK(!validate(QuantileDensity{dec}).empty());

    Eigen::MatrixXd neg(2, 2);
    neg << 1, 0, 0, -2;
    CHECK(!validate(CovMatrix{neg}).empty());

    Eigen::MatrixXd lap(2, 2);
    lap << 1, -1, -1, 2;  // row sums not zero
    CHECK(!validate(NetworkLaplacian{lap}).empty());

    Eigen::VectorXd notunit(2);
    notunit << 1.0, 1.0;
    CHECK(!validate(SpherePoint{notunit}).empty());

    // valid specimens
    Eigen::VectorXd inc(3);
    inc << -1.0, 0.0, 2.5;
    CHECK(validate(QuantileDensity{inc}).empty());
    CHECK(validate(EuclideanScalar{3.0}).empty());
}

TEST_CASE("pool-adjacent-violators against the textbook example") {
    Eigen::VectorXd y(3);
    y << 3.0, 1.0, 2.0;
    Eigen::VectorXd z = isotonic_projection(y);
    CHECK(z[0] == doctest::Approx(2.0));
    CHECK(z[1] == doctest::Approx(2.0));
    CHECK(z[2] == doctest::Approx(2.0));

    Eigen::VectorXd y2(4);
    y2 << 1.0, 3.0, 2.0, 4.0;
    Eigen::VectorXd z2 = isotonic_projection(y2);
    CHECK(z2[0] == doctest::Approx(1.0));
    CHECK(z2[1] == doctest::Approx(2.5));
    CHECK(z2[2] == doctest::Approx(2.5));
    CHECK(z2[3] == doctest::Approx(4.0));
}

TEST_CASE("PAVA is the L2-nearest monotone sequence") {
    // brute force over a fine monotone grid in 3 dimensions
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd y(3);
        for (int i = 0; i < 3; ++i) y[i] = rng.uniform() * 4.0 - 2.0;
        Eigen::VectorXd best(3);
        double best_obj = 1e100;
        const int g = 40;
        for (int a = 0; a <= g; ++a)
            for (int b = a; b <= g; ++b)
                for (int c = b; c <= g; ++c) {
                    Eigen::VectorXd z(3);
                    z << -2.0 + 4.0 * a / g, -2.0 + 4.0 * b / g,
                        -2.0 + 4.0 * c / g;
                    double obj = (z - y).squaredNorm();
                    if (obj < best_obj) { best_obj = obj; best = z; }
                }
        Eigen::VectorXd z = isotonic_projection(y);
        CHECK((z - y).squaredNorm() <= best_obj + 1e-6);
        for (int i = 1; i < 3; ++i) CHECK(z[i] >= z[i - 1] - 1e-12);
    }
}

TEST_CASE("projection clamps the PSD cone") {
    std::vector<double> raw = {1.0, 0.0, 0.0, -2.0};
    MetricObject m = project_to_space(raw, Space::covariance, 2);
    const auto& cov = std::get<CovMatrix>(m);
    CHECK(cov.entries(0, 0) == doctest::Approx(1.0));
    CHECK(cov.entries(1, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(validate(m).empty());
}

TEST_CASE("projection is idempotent on valid objects") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        for (MetricObject obj : {rand_density(rng, 4), rand_cov(rng, 3),
                                 rand_network(rng, 5), rand_sphere(rng, 3)}) {
            REQUIRE(validate(obj).empty());
            std::vector<double> raw;
            switch (space_of(obj)) {
                case Space::density: {
                    const auto& v = std::get<QuantileDensity>(obj).values;
                    raw.assign(v.begin(), v.end());
                    break;
                }
                case Space::covariance: {
                    const auto& e = std::get<CovMatrix>(obj).entries;
                    for (int i = 0; i < e.rows(); ++i)
                        for (int j = 0; j < e.cols(); ++j) raw.push_back(e(i, j));
                    break;
                }
                case Space::network: {
                    const auto& e = std::get<NetworkLaplacian>(obj).entries;
                    for (int i = 0; i < e.rows(); ++i)
                        for (int j = 0; j < e.cols(); ++j) raw.push_back(e(i, j));
                    break;
                }
                default: {
                    const auto& v = std::get<SpherePoint>(obj).coords;
                    raw.assign(v.begin(), v.end());
                    break;
                }
            }
            MetricObject back =
                project_to_space(raw, space_of(obj), dimension_of(obj));
            CHECK(distance(obj, back) < 1e-7);
        }
    }
}

TEST_CASE("scalar weighted mean is the weighted average") {
    std::vector<MetricObject> objs = {EuclideanScalar{1.0}, EuclideanScalar{2.0},
                                      EuclideanScalar{4.0}};
    std::vector<double> w = {0.5, 0.25, 0.25};
    MetricObject m = weighted_frechet_mean(objs, w);
    CHECK(std::get<EuclideanScalar>(m).value == doctest::Approx(2.0));

    // negative weights are allowed as long as they sum to 1
    std::vector<double> w2 = {1.5, -0.25, -0.25};
    MetricObject m2 = weighted_frechet_mean(objs, w2);
    CHECK(std::get<EuclideanScalar>(m2).value == doctest::Approx(0.0));
}

TEST_CASE("negative-weight density mean needs the monotone projection") {
    // weighted average is decreasing; the mean must be its PAVA projection
    Eigen::VectorXd a(3), b(3);
    a << 0.0, 0.0, 0.0;
    b << 0.0, 0.5, 1.0;
    std::vector<MetricObject> objs = {QuantileDensity{a}, QuantileDensity{b}};
    std::vector<double> w = {2.0, -1.0};  // average = (0, -0.5, -1)
    MetricObject m = weighted_frechet_mean(objs, w);
    const auto& v = std::get<QuantileDensity>(m).values;
    CHECK(v[0] == doctest::Approx(-0.5));
    CHECK(v[1] == doctest::Approx(-0.5));
    CHECK(v[2] == doctest::Approx(-0.5));
}

TEST_CASE("weighted mean is invariant to observation order") {
    Rng rng(5);
    std::vector<MetricObject> objs;
    for (int i = 0; i < 6; ++i) objs.push_back(rand_cov(rng, 3));
    std::vector<double> w = {0.3, 0.25, 0.2, 0.15, 0.07, 0.03};
    MetricObject m1 = weighted_frechet_mean(objs, w);
    std::reverse(objs.begin(), objs.end());
    std::reverse(w.begin(), w.end());
    MetricObject m2 = weighted_frechet_mean(objs, w);
    CHECK(distance(m1, m2) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("weighted mean minimizes the objective on small instances") {
    // dense grid search oracle per space
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        // density, m = 2
        {
            std::vector<MetricObject> objs = {rand_density(rng, 2),
                                              rand_density(rng, 2),
                                              rand_density(rng, 2)};
            std::vector<double> w = {0.7, 0.5, -0.2};
            MetricObject m = weighted_frechet_mean(objs, w);
            double opt = frechet_objective(objs, w, m);
            const int g = 60;
            for (int a = 0; a <= g; ++a)
                for (int b = a; b <= g; ++b) {
                    Eigen::VectorXd z(2);
                    z << -3.0 + 6.0 * a / g, -3.0 + 6.0 * b / g;
                    double obj =
                        frechet_objective(objs, w, QuantileDensity{z});
                    CHECK(opt <= obj + 1e-6);
                }
        }
        // sphere, k = 2 (quarter circle)
        {
            std::vector<MetricObject> objs = {rand_sphere(rng, 2),
                                              rand_sphere(rng, 2),
                                              rand_sphere(rng, 2)};
            std::vector<double> w = {0.4, 0.4, 0.2};
            MetricObject m = weighted_frechet_mean(objs, w);
            double opt = frechet_objective(objs, w, m);
            const int g = 600;
            for (int a = 0; a <= g; ++a) {
                double th = (M_PI / 2.0) * a / g;
                Eigen::VectorXd z(2);
                z << std::cos(th), std::sin(th);
                double obj = frechet_objective(objs, w, SpherePoint{z});
                CHECK(opt <= obj + 1e-6);
            }
        }
    }
}

TEST_CASE("weight preconditions are enforced") {
    std::vector<MetricObject> objs = {EuclideanScalar{1.0}, EuclideanScalar{2.0}};
    std::vector<double> bad_sum = {0.5, 0.2};
    CHECK_THROWS_AS(weighted_frechet_mean(objs, bad_sum), Error);
    std::vector<MetricObject> none;
    std::vector<double> empty;
    CHECK_THROWS_AS(weighted_frechet_mean(none, empty), Error);
}
