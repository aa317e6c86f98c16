#include "coopem/geometry.hpp"

#include <cmath>
#include <string>

#include "coopem/errors.hpp"

namespace coopem {

namespace {
constexpr double unit_tol = 1e-12;
constexpr double coincidence_cut = 1e-12;
} // namespace

AtomConfig::AtomConfig(std::vector<Vec3> positions, Vec3 dipole)
    : positions_(std::move(positions)), dipole_(dipole) {
    if (positions_.size() < 2)
        throw validation_error("atom configuration needs at least 2 atoms, got " +
                               std::to_string(positions_.size()));
    if (std::abs(norm(dipole_) - 1.0) > unit_tol)
        throw validation_error("dipole is not a unit vector (|d| = " +
                               std::to_string(norm(dipole_)) + ")");
    for (std::size_t m = 0; m < positions_.size(); ++m)
        for (std::size_t n = m + 1; n < positions_.size(); ++n)
            if (norm(positions_[n] - positions_[m]) < coincidence_cut)
                throw validation_error("atoms[" + std::to_string(m) + "] and atoms[" +
                                       std::to_string(n) + "] coincide");
}

std::vector<PairGeometry> build_pair_geometry(const AtomConfig& config) {
    const auto& r = config.positions();
    const Vec3 d = config.dipole();
    std::vector<PairGeometry> pairs;
    pairs.reserve(config.size() * (config.size() - 1) / 2);
    for (int m = 0; m < config.size(); ++m) {
        for (int n = m + 1; n < config.size(); ++n) {
            const Vec3 sep = r[n] - r[m];
            const double x = norm(sep);
            if (x < coincidence_cut)
                throw validation_error("atoms[" + std::to_string(m) + "] and atoms[" +
                                       std::to_string(n) + "] coincide");
            // |d.rhat| folds eta into [0, pi/2]; clamp guards rounding above 1.
            double c = std::abs(dot(d, sep)) / x;
            if (c > 1.0) c = 1.0;
            pairs.push_back({m, n, x, std::acos(c)});
        }
    }
    return pairs;
}

AtomConfig equilateral_config(double side) {
    if (!(side > 0.0))
        throw validation_error("equilateral side must be positive, got " + std::to_string(side));
    const double h = side * std::sqrt(3.0) / 2.0;
    std::vector<Vec3> pos = {{0.0, 0.0, 0.0}, {side, 0.0, 0.0}, {side / 2.0, h, 0.0}};
    return AtomConfig(std::move(pos), Vec3{0.0, 0.0, 1.0});
}

AtomConfig collinear_config(double x12, double x23, double eta) {
    if (!(x12 > 0.0) || !(x23 > 0.0))
        throw validation_error("collinear gaps must be positive, got x12 = " +
                               std::to_string(x12) + ", x23 = " + std::to_string(x23));
    std::vector<Vec3> pos = {{0.0, 0.0, 0.0}, {x12, 0.0, 0.0}, {x12 + x23, 0.0, 0.0}};
    // Dipole in the xy-plane at angle eta from the line (the x axis).
    return AtomConfig(std::move(pos), Vec3{std::cos(eta), std::sin(eta), 0.0});
}

} // namespace coopem
