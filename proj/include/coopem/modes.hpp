#ifndef COOPEM_MODES_HPP
#define COOPEM_MODES_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "coopem/geometry.hpp"
#include "coopem/scan_result.hpp"

namespace coopem {

struct ModelParams {
    double gamma_eg = 1.0; // single-atom decay rate (the rate unit)
    double delta_eg = 0.0; // single-atom dynamic shift, units of gamma_eg
};

// Complex-symmetric N x N coupling matrix governing single-excitation decay:
// diagonal Gamma_0 = gamma_eg/2 + i*delta_eg*gamma_eg, off-diagonal
// Gamma_mn = (gamma_eg/2) [D(x_mn, eta_mn) + i P(x_mn, eta_mn)].
// Not Hermitian; its Hermitian (dissipative) part is positive semidefinite.
class CouplingMatrix {
public:
    CouplingMatrix(Eigen::MatrixXcd entries, ModelParams params);

    const Eigen::MatrixXcd& entries() const { return entries_; }
    int size() const { return static_cast<int>(entries_.rows()); }
    std::complex<double> diagonal() const { return entries_(0, 0); }
    const ModelParams& params() const { return params_; }

private:
    Eigen::MatrixXcd entries_;
    ModelParams params_;
};

CouplingMatrix build_coupling_matrix(const AtomConfig& config, const ModelParams& params);

// Collective eigenmodes. Ordering: descending decay rate (Re Gamma_m),
// ties broken by ascending shift (Im Gamma_m). Eigenvectors are columns,
// normalized under the complex bilinear form b^T b = 1 (the natural
// orthogonality for complex-symmetric matrices; no conjugation).
struct ModeSet {
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd eigenvectors;                  // column m pairs with eigenvalues(m)
    Eigen::VectorXd rates;                          // gamma_m = 2 Re Gamma_m
    Eigen::VectorXd shifts;                         // delta_m = Im Gamma_m
    std::vector<std::vector<int>> degeneracy_groups; // partition by eigenvalue coincidence

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

// Closed-form cubic eigenvalues for N = 3. When all off-diagonals coincide
// the degenerate simplification Gamma_0 + 2*Gamma_1, Gamma_0 - Gamma_1 (x2)
// is used exactly; when the coupling sum of squares vanishes the generic
// numeric path takes over (the trigonometric form is singular there).
// Each root is validated against the characteristic polynomial.
ModeSet eigenmodes_analytic(const CouplingMatrix& matrix);

// General dense solver, any N >= 2. Independent of the cubic path; also the
// only path for N != 3.
ModeSet eigenmodes_numeric(const CouplingMatrix& matrix);

// Null-space eigenvectors for externally supplied eigenvalues (grouped by
// the degeneracy tolerance; degenerate groups come out mutually
// bilinear-orthogonal). For the exactly-symmetric N=3 matrix the canonical
// basis (1,1,1)/sqrt3, (0,1,-1)/sqrt2, (-2,1,1)/sqrt6 is returned. Throws
// validation_error if a supplied value is not an eigenvalue.
Eigen::MatrixXcd eigenvectors(const CouplingMatrix& matrix, const Eigen::VectorXcd& eigenvalues);

// Eigenvalues grouped when |G_m - G_l| <= 1e-9 * max(1, |Gamma_0|).
std::vector<std::vector<int>> group_degenerate(const Eigen::VectorXcd& sorted_eigenvalues,
                                               std::complex<double> gamma0);

// Closed forms for the equilateral triangle, side x, dipole normal to the
// plane: rates gamma_eg[1 + 2D] / gamma_eg[1 - D], shifts
// delta_eg*gamma_eg + gamma_eg*P / delta_eg*gamma_eg - (gamma_eg/2)*P, and
// the symmetric/asymmetric splitting (3/2)*gamma_eg*P, all at (x, pi/2).
struct EquilateralModes {
    double rate_symmetric = 0.0;   // Dicke mode
    double rate_asymmetric = 0.0;  // two-fold degenerate
    double shift_symmetric = 0.0;
    double shift_asymmetric = 0.0;
    double splitting = 0.0;        // shift_symmetric - shift_asymmetric
};

EquilateralModes equilateral_closed_form(double side, const ModelParams& params);

// Collinear-geometry scan: for each x23 builds the config, solves the modes,
// records decay rates sorted descending (columns gamma_1, gamma_2, gamma_3).
ScanResult line_scan(double x12, const std::vector<double>& x23_grid, double eta,
                     const ModelParams& params);

} // namespace coopem

#endif
