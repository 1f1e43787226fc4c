#include "fjump/local_weights.hpp"

#include <cmath>
#include <sstream>

#include "fjump/errors.hpp"

namespace fjump {

const char* side_name(Side s) {
    switch (s) {
        case Side::left: return "left";
        case Side::right: return "right";
        case Side::pooled: return "pooled";
    }
    return "?";
}

namespace {

inline bool on_side(double x, double c, Side side) {
    return side == Side::right ? (x >= c) : (x < c);
}

}  // namespace

SideMoments side_moments(std::span<const double> xs, double c, double h,
                         Side side, const KernelSpec& kernel) {
    if (h <= 0.0) throw_error(errc::invalid_input, "bandwidth must be positive");
    if (xs.empty()) throw_error(errc::invalid_input, "empty covariate vector");
    if (side == Side::pooled)
        throw_error(errc::invalid_input, "side_moments: side must be left or right");
    SideMoments m;
    const double n = (double)xs.size();
    for (double x : xs) {
        if (!on_side(x, c, side)) continue;
        double u = x - c;
        double k = kernel(u / h) / h;
        if (k == 0.0) continue;
        ++m.n_effective;
        m.mu0 += k;
        m.mu1 += k * u;
        m.mu2 += k * u * u;
    }
    m.mu0 /= n;
    m.mu1 /= n;
    m.mu2 /= n;
    m.sigma0_sq = m.mu0 * m.mu2 - m.mu1 * m.mu1;
    return m;
}

WeightVector local_linear_weights(std::span<const double> xs, double c, double h,
                                  Side side, const KernelSpec& kernel) {
    SideMoments m = side_moments(xs, c, h, side, kernel);
    if (m.sigma0_sq <= 1e-12) {
        std::ostringstream os;
        os << "degenerate design on the " << side_name(side) << " side: sigma0_sq="
           << m.sigma0_sq << " with " << m.n_effective
           << " observations in the kernel window (h=" << h << ")";
        throw_error(errc::degenerate_data, os.str());
    }
    WeightVector wv;
    wv.side = side;
    wv.bandwidth = h;
    wv.cutoff = c;
    wv.weights.resize(xs.size(), 0.0);
    for (size_t i = 0; i < xs.size(); ++i) {
        double x = xs[i];
        if (!on_side(x, c, side)) continue;
        double u = x - c;
        double k = kernel(u / h) / h;
        if (k == 0.0) continue;
        wv.weights[i] = k * (m.mu2 - m.mu1 * u) / m.sigma0_sq;
    }
    return wv;
}

WeightVector pooled_weights(const WeightVector& w_plus, const WeightVector& w_minus) {
    if (w_plus.side != Side::right || w_minus.side != Side::left)
        throw_error(errc::invalid_input, "pooled_weights: expects (right, left) pair");
    if (w_plus.weights.size() != w_minus.weights.size())
        throw_error(errc::invalid_input, "pooled_weights: length mismatch");
    if (w_plus.cutoff != w_minus.cutoff)
        throw_error(errc::invalid_input, "pooled_weights: cutoff mismatch");
    if (w_plus.bandwidth != w_minus.bandwidth)
        throw_error(errc::invalid_input, "pooled_weights: bandwidth mismatch");
    WeightVector wv;
    wv.side = Side::pooled;
    wv.bandwidth = w_plus.bandwidth;
    wv.cutoff = w_plus.cutoff;
    wv.weights.resize(w_plus.weights.size());
    for (size_t i = 0; i < wv.weights.size(); ++i)
        wv.weights[i] = 0.5 * w_plus.weights[i] + 0.5 * w_minus.weights[i];
    return wv;
}

WeightVector local_constant_weights(std::span<const double> xs, double c, double h,
                                    Side side) {
    if (h <= 0.0) throw_error(errc::invalid_input, "bandwidth must be positive");
    if (side == Side::pooled)
        throw_error(errc::invalid_input, "local_constant_weights: side must be left or right");
    int count = 0;
    for (double x : xs)
        if (on_side(x, c, side) && std::fabs(x - c) <= h) ++count;
    if (count == 0) {
        std::ostringstream os;
        os << "no observations on the " << side_name(side) << " side within h=" << h;
        throw_error(errc::degenerate_data, os.str());
    }
    WeightVector wv;
    wv.side = side;
    wv.bandwidth = h;
    wv.cutoff = c;
    wv.weights.resize(xs.size(), 0.0);
    double w = (double)xs.size() / (double)count;  // so (1/n) sum = 1
    for (size_t i = 0; i < xs.size(); ++i)
        if (on_side(xs[i], c, side) && std::fabs(xs[i] - c) <= h) wv.weights[i] = w;
    return wv;
}

double boundary_density(std::span<const double> xs, double c, double h,
                        const KernelSpec& kernel) {
    SideMoments right = side_moments(xs, c, h, Side::right, kernel);
    SideMoments left = side_moments(xs, c, h, Side::left, kernel);
    double f = right.mu0 + left.mu0;
    if (f <= 1e-12)
        throw_error(errc::degenerate_data,
                    "no data near the cutoff: estimated density is zero");
    return f;
}

}  // namespace fjump
