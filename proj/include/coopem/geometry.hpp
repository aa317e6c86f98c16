#ifndef COOPEM_GEOMETRY_HPP
#define COOPEM_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace coopem {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(Vec3 v) { double n = norm(v); return {v.x / n, v.y / n, v.z / n}; }

// Atom positions in units of lambda0 plus the shared dipole unit vector.
// Immutable after construction; safe to share across scan workers.
class AtomConfig {
public:
    // Validates: N >= 2, |dipole| = 1 within 1e-12, no coincident atoms.
    AtomConfig(std::vector<Vec3> positions, Vec3 dipole);

    const std::vector<Vec3>& positions() const { return positions_; }
    Vec3 dipole() const { return dipole_; }
    int size() const { return static_cast<int>(positions_.size()); }

private:
    std::vector<Vec3> positions_;
    Vec3 dipole_;
};

// One unordered atom pair: separation x = r_mn / lambda0 and the angle eta
// between the dipole and the pair axis, folded into [0, pi/2] (the coupling
// kernels are even in cos eta, so the fold loses nothing).
struct PairGeometry {
    int m = 0, n = 0;   // m < n
    double x = 0.0;     // separation, units of lambda0
    double eta = 0.0;   // radians, [0, pi/2]
};

// All N(N-1)/2 pairs, indices sorted. Throws validation_error naming the
// pair if two atoms coincide.
std::vector<PairGeometry> build_pair_geometry(const AtomConfig& config);

// Three atoms at the vertices of an equilateral triangle of the given side,
// dipole normal to the triangle plane (every pair sees eta = pi/2).
AtomConfig equilateral_config(double side);

// Three collinear atoms with gaps x12 and x23; the dipole makes angle eta
// with the line (x13 = x12 + x23). Any eta is accepted; pair angles come out
// folded into [0, pi/2].
AtomConfig collinear_config(double x12, double x23, double eta);

} // namespace coopem

#endif
