#pragma once

#include <string>

namespace fjump {

/// Symmetric probability-density kernels supported on [-1, 1].
enum class KernelKind { epanechnikov, triangular, uniform };

const char* kernel_name(KernelKind k);
KernelKind kernel_from_name(const std::string& name);

struct KernelSpec {
    KernelKind kind = KernelKind::epanechnikov;

    double operator()(double u) const;
};

/// One-sided kernel moments K_{+,1j} = int_0^inf u^j K(u) du together with
/// the asymptotic variance constant S and bias constant B of one-sided
/// local linear regression,
///
///   S = int_0^inf (K12 - u K11)^2 K^2(u) du / (K12 K10 - K11^2)^2,
///   B = (K12^2 - K11 K13) / (K12 K10 - K11^2).
///
/// For a symmetric kernel the left and right constants coincide.
struct KernelConstants {
    double k10, k11, k12, k13;
    double s_plus, s_minus;
    double b_plus, b_minus;
};

/// Constants computed by adaptive quadrature on [0, 1] with absolute
/// tolerance 1e-10.
KernelConstants kernel_constants(const KernelSpec& kernel);

}  // namespace fjump
