#include "coopem/dynamics.hpp"

#include <cmath>
#include <string>

#include "coopem/errors.hpp"

namespace coopem {

InitialState::InitialState(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 2)
        throw validation_error("initial state needs at least 2 amplitudes");
    const double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw validation_error("initial state is not normalized (sum |C_n|^2 = " +
                               std::to_string(norm2) + ")");
}

InitialState InitialState::from_unnormalized(Eigen::VectorXcd amplitudes, double tol) {
    const double n = amplitudes.norm();
    if (std::abs(n - 1.0) > tol)
        throw validation_error("initial state norm " + std::to_string(n) +
                               " is too far from 1 to normalize");
    return InitialState(amplitudes / n);
}

InitialState InitialState::excited_atom(int n_atoms, int index) {
    if (index < 0 || index >= n_atoms)
        throw validation_error("excited-atom index " + std::to_string(index) +
                               " out of range for N = " + std::to_string(n_atoms));
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n_atoms);
    c(index) = 1.0;
    return InitialState(std::move(c));
}

InitialState InitialState::dicke(int n_atoms) {
    if (n_atoms < 2) throw validation_error("Dicke state needs N >= 2");
    Eigen::VectorXcd c =
        Eigen::VectorXcd::Constant(n_atoms, 1.0 / std::sqrt(static_cast<double>(n_atoms)));
    return InitialState(std::move(c));
}

ModeDecomposition decompose_initial(const ModeSet& modes, const InitialState& state) {
    if (modes.size() != state.size())
        throw validation_error("mode set (N = " + std::to_string(modes.size()) +
                               ") and initial state (N = " + std::to_string(state.size()) +
                               ") have different dimensions");

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(modes.eigenvectors,
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 0.0 || smax / smin > 1e12)
        throw validation_error("eigenvector matrix is numerically singular (condition beyond "
                               "1e12); modes are not diagonalizable");

    const Eigen::VectorXcd a = svd.solve(state.amplitudes());
    const double res = (modes.eigenvectors * a - state.amplitudes()).norm();
    if (res > 1e-10)
        throw consistency_error("mode decomposition failed to reconstruct the initial state "
                                "(residual " + std::to_string(res) + ")");
    return ModeDecomposition{a};
}

AmplitudeTrajectory evolve(const ModeSet& modes, const ModeDecomposition& decomp,
                           const std::vector<double>& times) {
    if (modes.size() != decomp.coefficients.size())
        throw validation_error("mode set and decomposition have different dimensions");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] >= 0.0))
            throw validation_error("times must be non-negative");
        if (k > 0 && !(times[k] >= times[k - 1]))
            throw validation_error("times must be ascending");
    }

    const int n = modes.size();
    AmplitudeTrajectory traj;
    traj.times = times;
    traj.amplitudes.resize(n, static_cast<Eigen::Index>(times.size()));
    traj.survival.resize(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        Eigen::VectorXcd weights(n);
        for (int m = 0; m < n; ++m)
            weights(m) = decomp.coefficients(m) * std::exp(-modes.eigenvalues(m) * times[k]);
        traj.amplitudes.col(static_cast<Eigen::Index>(k)) = modes.eigenvectors * weights;
        traj.survival[k] = traj.amplitudes.col(static_cast<Eigen::Index>(k)).squaredNorm();
    }
    return traj;
}

std::vector<double> time_grid(double t_max, int steps) {
    if (!(t_max > 0.0) || steps < 1)
        throw validation_error("time grid needs t_max > 0 and steps >= 1");
    std::vector<double> t(steps + 1);
    for (int k = 0; k <= steps; ++k) t[k] = t_max * k / steps;
    return t;
}

} // namespace coopem
