#ifndef COOPEM_DYNAMICS_HPP
#define COOPEM_DYNAMICS_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "coopem/modes.hpp"

namespace coopem {

// Single-excitation initial state: amplitudes C_n(0) over |e_n; 0>.
class InitialState {
public:
    // Requires sum |C_n|^2 = 1 within 1e-12.
    explicit InitialState(Eigen::VectorXcd amplitudes);

    // Accepts a vector whose norm is within `tol` of 1 and renormalizes it
    // exactly; rejects anything further off.
    static InitialState from_unnormalized(Eigen::VectorXcd amplitudes, double tol = 1e-6);

    static InitialState excited_atom(int n_atoms, int index); // C = e_index
    static InitialState dicke(int n_atoms);                   // C = (1,...,1)/sqrt(N)

    const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
    int size() const { return static_cast<int>(amplitudes_.size()); }

private:
    Eigen::VectorXcd amplitudes_;
};

// Coefficients a_m of the initial state over the eigenmodes.
struct ModeDecomposition {
    Eigen::VectorXcd coefficients;
};

// Solves [b^(1)|...|b^(N)] a = C(0). Throws validation_error if the
// eigenvector matrix is numerically singular (condition beyond 1e12, i.e.
// the matrix is effectively non-diagonalizable); consistency_error if the
// solution fails to reconstruct C(0) within 1e-10.
ModeDecomposition decompose_initial(const ModeSet& modes, const InitialState& state);

// Amplitudes over a time grid (units of 1/gamma_eg) plus the per-sample
// survival probability sum_n |C_n(t)|^2.
struct AmplitudeTrajectory {
    std::vector<double> times;
    Eigen::MatrixXcd amplitudes; // column k = C(times[k])
    std::vector<double> survival;
};

// Closed-form evolution C_n(t) = sum_m a_m b_n^(m) e^{-Gamma_m t}: the
// amplitude equations are linear with constant coefficients, so no stepping
// is involved. Times must be non-negative and ascending.
AmplitudeTrajectory evolve(const ModeSet& modes, const ModeDecomposition& decomp,
                           const std::vector<double>& times);

std::vector<double> time_grid(double t_max, int steps); // steps intervals, steps+1 samples

} // namespace coopem

#endif
