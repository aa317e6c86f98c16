#include "coopem/kernels.hpp"

#include <cmath>
#include <string>

#include "coopem/errors.hpp"

namespace coopem {

namespace detail {

// cos(u)/u^2 - sin(u)/u^3. Series terms t_k = (-1)^k (2k) u^{2k-2}/(2k+1)!,
// ratio t_{k+1}/t_k = -u^2 / ((2k)(2k+3)).
double bracket_d(double u) {
    if (u < kernel_series_threshold_u) {
        double term = -1.0 / 3.0;
        double sum = term;
        for (int k = 1; std::abs(term) >= 1e-17; ++k) {
            term *= -u * u / ((2.0 * k) * (2.0 * k + 3.0));
            sum += term;
        }
        return sum;
    }
    return std::cos(u) / (u * u) - std::sin(u) / (u * u * u);
}

// sin(u)/u^2 + cos(u)/u^3 = 1/u^3 + sum, terms s_j = (-1)^j (2j+1) u^{2j-1}/(2j+2)!,
// ratio s_{j+1}/s_j = -u^2 / ((2j+1)(2j+4)).
double bracket_p(double u) {
    if (u < kernel_series_threshold_u) {
        double term = 1.0 / (2.0 * u);
        double sum = 1.0 / (u * u * u) + term;
        for (int j = 0; std::abs(term) >= 1e-17; ++j) {
            term *= -u * u / ((2.0 * j + 1.0) * (2.0 * j + 4.0));
            sum += term;
        }
        return sum;
    }
    return std::sin(u) / (u * u) + std::cos(u) / (u * u * u);
}

} // namespace detail

double kernel_D(double x, double eta) {
    if (!(x >= 0.0))
        throw validation_error("kernel_D requires x >= 0, got " + std::to_string(x));
    if (x == 0.0)
        return 1.0; // analytic limit, exact for the Dicke small-sample regime
    const double c = std::cos(eta);
    const double c2 = c * c;
    const double s2 = 1.0 - c2;
    const double u = 2.0 * M_PI * x;
    return 1.5 * (s2 * std::sin(u) / u + (1.0 - 3.0 * c2) * detail::bracket_d(u));
}

double kernel_P(double x, double eta) {
    if (!(x > 0.0))
        throw validation_error("kernel_P requires x > 0 (divergent at contact), got " +
                               std::to_string(x));
    const double c = std::cos(eta);
    const double c2 = c * c;
    const double s2 = 1.0 - c2;
    const double u = 2.0 * M_PI * x;
    return 1.5 * (-s2 * std::cos(u) / u + (1.0 - 3.0 * c2) * detail::bracket_p(u));
}

KernelValue eval_kernels(double x, double eta) {
    return {kernel_D(x, eta), kernel_P(x, eta), x, eta};
}

} // namespace coopem
