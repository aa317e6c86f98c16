#ifndef COOPEM_KERNELS_HPP
#define COOPEM_KERNELS_HPP

namespace coopem {

// Dimensionless pair-coupling functions of separation x (units of lambda0)
// and dipole-axis angle eta. With u = 2*pi*x,
//
//   D(x,eta) = 3/2 { sin^2(eta) sin(u)/u + (1-3cos^2(eta)) [cos(u)/u^2 - sin(u)/u^3] }
//   P(x,eta) = 3/2 { -sin^2(eta) cos(u)/u + (1-3cos^2(eta)) [sin(u)/u^2 + cos(u)/u^3] }
//
// D modifies collective decay rates (|D| <= 1); P is the photon-exchange
// dipole-dipole interaction, divergent as x^-3 at contact. Both are even in
// cos(eta), so eta and pi-eta give the same value.

// D(x, eta). Requires x >= 0; D(0, eta) is the analytic limit 1.
double kernel_D(double x, double eta);

// P(x, eta). Requires x > 0 (divergent at contact).
double kernel_P(double x, double eta);

struct KernelValue {
    double d = 0.0;
    double p = 0.0;
    double x = 0.0;
    double eta = 0.0;
};

// Both kernels at once (one trig evaluation of the shared pieces).
KernelValue eval_kernels(double x, double eta);

// The bracketed combinations lose ~u^2 relative precision to cancellation
// when evaluated directly at small u, so below this threshold they switch to
// alternating Maclaurin series truncated at term < 1e-17:
//   cos(u)/u^2 - sin(u)/u^3 = -1/3 + u^2/30 - u^4/840 + u^6/45360 - ...
//   sin(u)/u^2 + cos(u)/u^3 = 1/u^3 + 1/(2u) - u/8 + u^3/144 - u^5/5760 + ...
inline constexpr double kernel_series_threshold_u = 0.1;

namespace detail {
// Exposed for the crossover-continuity tests.
double bracket_d(double u);
double bracket_p(double u);
} // namespace detail

} // namespace coopem

#endif
