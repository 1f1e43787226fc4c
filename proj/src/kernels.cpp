#include "fjump/kernels.hpp"

#include <cmath>

#include "fjump/errors.hpp"
#include "fjump/special_math.hpp"

namespace fjump {

const char* kernel_name(KernelKind k) {
    switch (k) {
        case KernelKind::epanechnikov: return "epanechnikov";
        case KernelKind::triangular: return "triangular";
        case KernelKind::uniform: return "uniform";
    }
    return "?";
}

KernelKind kernel_from_name(const std::string& name) {
    for (KernelKind k : {KernelKind::epanechnikov, KernelKind::triangular,
                         KernelKind::uniform}) {
        if (name == kernel_name(k)) return k;
    }
    throw_error(errc::invalid_input, "unknown kernel: " + name);
}

double KernelSpec::operator()(double u) const {
    double a = std::fabs(u);
    if (a > 1.0) return 0.0;
    switch (kind) {
        case KernelKind::epanechnikov: return 0.75 * (1.0 - u * u);
        case KernelKind::triangular: return 1.0 - a;
        case KernelKind::uniform: return 0.5;
    }
    return 0.0;
}

KernelConstants kernel_constants(const KernelSpec& kernel) {
    const double tol = 1e-13;
    auto moment = [&](int j) {
        return integrate([&](double u) { return std::pow(u, j) * kernel(u); },
                         0.0, 1.0, tol);
    };
    KernelConstants c{};
    c.k10 = moment(0);
    c.k11 = moment(1);
    c.k12 = moment(2);
    c.k13 = moment(3);
    double denom = c.k12 * c.k10 - c.k11 * c.k11;
    double num = integrate(
        [&](double u) {
            double t = c.k12 - u * c.k11;
            double k = kernel(u);
            return t * t * k * k;
        },
        0.0, 1.0, tol);
    c.s_plus = num / (denom * denom);
    c.b_plus = (c.k12 * c.k12 - c.k11 * c.k13) / denom;
    // Symmetric kernel: the left-side constants are identical.
    c.s_minus = c.s_plus;
    c.b_minus = c.b_plus;
    return c;
}

}  // namespace fjump
