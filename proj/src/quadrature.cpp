#include "coopem/quadrature.hpp"

#include <cmath>

#include "coopem/errors.hpp"

namespace coopem {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw validation_error("Gauss-Legendre order must be >= 1");
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        // Refresh P_{n-1} at the converged node for the weight formula.
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1.0);
        nodes[i] = t;
        weights[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

std::vector<SphereNode> sphere_product_rule(int order) {
    if (order < 1) throw validation_error("sphere quadrature order must be >= 1");
    std::vector<double> ct, w;
    gauss_legendre(order, ct, w);
    const int nphi = 2 * order + 1;
    const double dphi = 2.0 * M_PI / nphi;

    std::vector<SphereNode> nodes;
    nodes.reserve(static_cast<std::size_t>(order) * nphi);
    for (int i = 0; i < order; ++i) {
        const double st = std::sqrt(std::max(0.0, 1.0 - ct[i] * ct[i]));
        for (int j = 0; j < nphi; ++j) {
            const double phi = j * dphi;
            nodes.push_back({{st * std::cos(phi), st * std::sin(phi), ct[i]}, w[i] * dphi});
        }
    }
    return nodes;
}

} // namespace coopem
