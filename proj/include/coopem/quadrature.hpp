#ifndef COOPEM_QUADRATURE_HPP
#define COOPEM_QUADRATURE_HPP

#include <vector>

#include "coopem/geometry.hpp"

namespace coopem {

// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct SphereNode {
    Vec3 dir;
    double weight; // weights sum to 4*pi
};

// Product rule over the unit sphere: `order` Gauss-Legendre nodes in
// cos(theta) times 2*order+1 equispaced azimuths. Exact for spherical
// harmonics up to degree ~2*order-1; node ordering is fixed so reductions
// are bit-stable.
std::vector<SphereNode> sphere_product_rule(int order);

} // namespace coopem

#endif
