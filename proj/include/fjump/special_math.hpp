#pragma once

#include <functional>

namespace fjump {

/// Regularized upper incomplete gamma function Q(a, x) = Γ(a, x)/Γ(a).
/// Series expansion for x < a + 1, continued fraction otherwise; relative
/// accuracy about 1e-13 for the arguments used here (a = 1/2).
double gamma_q(double a, double x);

/// Upper-tail probability of the chi-squared distribution with one degree
/// of freedom, P(X > t) = Q(1/2, t/2).
double chi2_1_sf(double t);

/// Standard normal quantile function (Wichura's AS 241 algorithm),
/// absolute error below 1e-9 over p in (0, 1).
double normal_quantile(double p);

/// Adaptive Simpson quadrature of f over [a, b] with absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);

}  // namespace fjump
