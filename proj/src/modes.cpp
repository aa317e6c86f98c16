#include "coopem/modes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#include "coopem/errors.hpp"
#include "coopem/kernels.hpp"

namespace coopem {

namespace {

using Complex = std::complex<double>;

double matrix_scale(const Eigen::MatrixXcd& g) { return std::max(1.0, g.norm()); }

// |det(g - lambda I)| normalized by (||g|| + |lambda|)^N.
double charpoly_residual(const Eigen::MatrixXcd& g, Complex lambda) {
    const int n = static_cast<int>(g.rows());
    Eigen::MatrixXcd a = g;
    a.diagonal().array() -= lambda;
    const double scale = g.norm() + std::abs(lambda);
    return std::abs(a.determinant()) / std::pow(std::max(1.0, scale), n);
}

std::vector<int> sort_order(const Eigen::VectorXcd& vals) {
    std::vector<int> idx(vals.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (vals(a).real() != vals(b).real()) return vals(a).real() > vals(b).real();
        return vals(a).imag() < vals(b).imag();
    });
    return idx;
}

// Fix the residual +-1 freedom left by bilinear normalization: the largest
// component gets a positive real part (positive imaginary on a tie).
void fix_sign(Eigen::VectorXcd& v) {
    int imax = 0;
    double best = -1.0;
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > best) {
            best = std::abs(v(i));
            imax = i;
        }
    }
    const Complex c = v(imax);
    if (c.real() < 0.0 || (std::abs(c.real()) < 1e-12 * std::abs(c) && c.imag() < 0.0)) v = -v;
}

bool offdiagonals_equal(const Eigen::MatrixXcd& g, Complex& mean) {
    const int n = static_cast<int>(g.rows());
    Complex sum = 0.0;
    double maxabs = 0.0;
    int count = 0;
    for (int m = 0; m < n; ++m)
        for (int l = m + 1; l < n; ++l) {
            sum += g(m, l);
            maxabs = std::max(maxabs, std::abs(g(m, l)));
            ++count;
        }
    mean = sum / static_cast<double>(count);
    const double tol = 1e-12 * std::max(1.0, maxabs);
    for (int m = 0; m < n; ++m)
        for (int l = m + 1; l < n; ++l)
            if (std::abs(g(m, l) - mean) > tol) return false;
    return true;
}

ModeSet make_mode_set(const CouplingMatrix& matrix, Eigen::VectorXcd raw_eigenvalues) {
    const auto& g = matrix.entries();
    const int n = matrix.size();

    const auto order = sort_order(raw_eigenvalues);
    Eigen::VectorXcd vals(n);
    for (int i = 0; i < n; ++i) vals(i) = raw_eigenvalues(order[i]);

    ModeSet set;
    set.eigenvalues = vals;
    set.eigenvectors = eigenvectors(matrix, vals);
    set.rates = 2.0 * vals.real();
    set.shifts = vals.imag();
    set.degeneracy_groups = group_degenerate(vals, matrix.diagonal());

    const Complex trace_expected = static_cast<double>(n) * matrix.diagonal();
    if (std::abs(vals.sum() - trace_expected) > 1e-12 * matrix_scale(g))
        throw consistency_error("eigenvalue sum deviates from the matrix trace");
    return set;
}

} // namespace

CouplingMatrix::CouplingMatrix(Eigen::MatrixXcd entries, ModelParams params)
    : entries_(std::move(entries)), params_(params) {
    if (!(params_.gamma_eg > 0.0))
        throw validation_error("gamma_eg must be positive");
    const int n = static_cast<int>(entries_.rows());
    if (entries_.cols() != n || n < 2)
        throw validation_error("coupling matrix must be square with N >= 2");
    for (int m = 0; m < n; ++m) {
        if (entries_(m, m) != entries_(0, 0))
            throw validation_error("coupling matrix diagonal entries must all be equal");
        for (int l = m + 1; l < n; ++l)
            if (entries_(m, l) != entries_(l, m))
                throw validation_error("coupling matrix must be complex-symmetric");
    }
    // Dissipative (Hermitian) part must be positive semidefinite; for a
    // complex-symmetric matrix that part is just the real part.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(entries_.real());
    const double floor = -1e-10 * std::max(1.0, params_.gamma_eg);
    if (es.eigenvalues().minCoeff() < floor)
        throw consistency_error("dissipative part of the coupling matrix is not positive "
                                "semidefinite (min eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()) + ")");
}

CouplingMatrix build_coupling_matrix(const AtomConfig& config, const ModelParams& params) {
    if (!(params.gamma_eg > 0.0))
        throw validation_error("gamma_eg must be positive");
    const int n = config.size();
    Eigen::MatrixXcd g(n, n);
    const double half = params.gamma_eg / 2.0;
    g.setZero();
    g.diagonal().setConstant(Complex{half, params.delta_eg * params.gamma_eg});
    for (const auto& pair : build_pair_geometry(config)) {
        const KernelValue k = eval_kernels(pair.x, pair.eta);
        const Complex gamma_mn = half * Complex{k.d, k.p};
        g(pair.m, pair.n) = gamma_mn;
        g(pair.n, pair.m) = gamma_mn;
    }
    return CouplingMatrix(std::move(g), params);
}

std::vector<std::vector<int>> group_degenerate(const Eigen::VectorXcd& sorted_eigenvalues,
                                               Complex gamma0) {
    // Transitive closure of pairwise coincidence, independent of input order.
    const double tol = 1e-9 * std::max(1.0, std::abs(gamma0));
    const int n = static_cast<int>(sorted_eigenvalues.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(sorted_eigenvalues(i) - sorted_eigenvalues(j)) <= tol)
                parent[find(i)] = find(j);
    std::vector<std::vector<int>> groups;
    std::vector<int> group_of(n, -1);
    for (int i = 0; i < n; ++i) {
        const int root = find(i);
        if (group_of[root] < 0) {
            group_of[root] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[group_of[root]].push_back(i);
    }
    return groups;
}

Eigen::MatrixXcd eigenvectors(const CouplingMatrix& matrix, const Eigen::VectorXcd& eigenvalues) {
    const auto& g = matrix.entries();
    const int n = matrix.size();
    if (eigenvalues.size() != n)
        throw validation_error("expected " + std::to_string(n) + " eigenvalues, got " +
                               std::to_string(eigenvalues.size()));

    const double res_tol = 1e-10 * matrix_scale(g);
    for (int i = 0; i < n; ++i)
        if (charpoly_residual(g, eigenvalues(i)) > 1e-10)
            throw validation_error("supplied value " + std::to_string(i) +
                                   " is not an eigenvalue of the matrix");
    Eigen::MatrixXcd vecs(n, n);

    // Exactly-symmetric N=3 case: the degenerate eigenspace has no preferred
    // basis, so return the canonical one. A (near-)diagonal matrix instead
    // keeps the standard basis.
    Complex gamma1;
    if (n == 3 && offdiagonals_equal(g, gamma1) &&
        std::abs(gamma1) > 1e-12 * std::max(1.0, std::abs(matrix.diagonal()))) {
        const Complex gamma0 = matrix.diagonal();
        const Complex sym = gamma0 + 2.0 * gamma1;
        const Complex asym = gamma0 - gamma1;
        const double tol = 1e-9 * std::max(1.0, std::abs(gamma0));
        const double s3 = 1.0 / std::sqrt(3.0);
        const double s2 = 1.0 / std::sqrt(2.0);
        const double s6 = 1.0 / std::sqrt(6.0);
        int asym_seen = 0;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            const bool near_sym = std::abs(eigenvalues(i) - sym) <= tol;
            const bool near_asym = std::abs(eigenvalues(i) - asym) <= tol;
            if (near_sym && !near_asym) {
                vecs.col(i) << s3, s3, s3;
            } else if (near_asym) {
                if (asym_seen == 0)
                    vecs.col(i) << 0.0, s2, -s2;
                else if (asym_seen == 1)
                    vecs.col(i) << -2.0 * s6, s6, s6;
                else
                    ok = false;
                ++asym_seen;
            } else {
                ok = false; // supplied values do not match; fall through
            }
        }
        if (ok) {
            for (int i = 0; i < 3; ++i) {
                const double r = (g * vecs.col(i) - eigenvalues(i) * vecs.col(i)).norm();
                if (r > res_tol)
                    throw consistency_error("canonical eigenvector residual " +
                                            std::to_string(r) + " exceeds tolerance");
            }
            return vecs;
        }
    }

    // Group the supplied eigenvalues, then take the null space of
    // (g - lambda I) per group via SVD.
    const auto groups = group_degenerate(eigenvalues, matrix.diagonal());
    for (const auto& group : groups) {
        Complex rep = 0.0;
        for (int i : group) rep += eigenvalues(i);
        rep /= static_cast<double>(group.size());

        Eigen::MatrixXcd a = g;
        a.diagonal().array() -= rep;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
        const int k = static_cast<int>(group.size());

        std::vector<Eigen::VectorXcd> basis;
        for (int j = 0; j < k; ++j) basis.push_back(svd.matrixV().col(n - k + j));

        // Bilinear (non-conjugated) Gram-Schmidt within the group.
        for (int j = 0; j < k; ++j) {
            Eigen::VectorXcd v = basis[j];
            for (int l = 0; l < j; ++l) {
                const Complex proj = basis[l].transpose() * v;
                v -= proj * basis[l];
            }
            const Complex bn = v.transpose() * v;
            if (std::abs(bn) < 1e-12)
                throw consistency_error("eigenvector has vanishing bilinear norm "
                                        "(exceptional point); modes are not diagonalizable");
            v /= std::sqrt(bn);
            fix_sign(v);
            basis[j] = v;
        }
        for (int j = 0; j < k; ++j) {
            const int col = group[j];
            const double r =
                (g * basis[j] - eigenvalues(col) * basis[j]).norm() / basis[j].norm();
            if (r > res_tol)
                throw consistency_error(
                    "eigenvector residual " + std::to_string(r) +
                    " exceeds tolerance; the matrix is defective (not diagonalizable)");
            vecs.col(col) = basis[j];
        }
    }
    return vecs;
}

ModeSet eigenmodes_numeric(const CouplingMatrix& matrix) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(matrix.entries(), false);
    if (solver.info() != Eigen::Success)
        throw consistency_error("dense eigensolver failed to converge");
    return make_mode_set(matrix, solver.eigenvalues());
}

ModeSet eigenmodes_analytic(const CouplingMatrix& matrix) {
    if (matrix.size() != 3)
        throw validation_error("analytic cubic eigenvalues require N = 3, got N = " +
                               std::to_string(matrix.size()));
    const auto& g = matrix.entries();
    const Complex gamma0 = matrix.diagonal();
    const Complex g12 = g(0, 1), g13 = g(0, 2), g23 = g(1, 2);

    Eigen::VectorXcd vals(3);

    // All couplings equal: the cubic degenerates and acos(T = -1) is
    // square-root sensitive, but the roots are elementary.
    Complex gamma1;
    if (offdiagonals_equal(g, gamma1)) {
        vals << gamma0 + 2.0 * gamma1, gamma0 - gamma1, gamma0 - gamma1;
        return make_mode_set(matrix, vals);
    }

    const Complex p = g12 * g12 + g13 * g13 + g23 * g23;
    if (std::abs(p) < 1e-14 * std::norm(gamma0)) return eigenmodes_numeric(matrix);

    const Complex s = std::sqrt(p);
    const Complex t_arg = -3.0 * std::sqrt(3.0) * g12 * g13 * g23 / (s * s * s);
    const Complex third = std::acos(t_arg) / 3.0;
    const Complex ct = std::cos(third);
    const Complex st = std::sin(third);
    const Complex amp = s / std::sqrt(3.0);
    const double sqrt3 = std::sqrt(3.0);

    vals << gamma0 + amp * (ct + sqrt3 * st), gamma0 + amp * (ct - sqrt3 * st),
        gamma0 - 2.0 * amp * ct;

    for (int i = 0; i < 3; ++i)
        if (charpoly_residual(g, vals(i)) > 1e-10)
            throw consistency_error("cubic root failed characteristic-polynomial validation");

    return make_mode_set(matrix, vals);
}

EquilateralModes equilateral_closed_form(double side, const ModelParams& params) {
    if (!(side > 0.0))
        throw validation_error("equilateral side must be positive, got " + std::to_string(side));
    if (!(params.gamma_eg > 0.0))
        throw validation_error("gamma_eg must be positive");
    const double d = kernel_D(side, M_PI / 2.0);
    const double p = kernel_P(side, M_PI / 2.0);
    const double ge = params.gamma_eg;
    const double shift0 = params.delta_eg * ge;
    EquilateralModes out;
    out.rate_symmetric = ge * (1.0 + 2.0 * d);
    out.rate_asymmetric = ge * (1.0 - d);
    out.shift_symmetric = shift0 + ge * p;
    out.shift_asymmetric = shift0 - 0.5 * ge * p;
    out.splitting = 1.5 * ge * p;
    return out;
}

ScanResult line_scan(double x12, const std::vector<double>& x23_grid, double eta,
                     const ModelParams& params) {
    if (x23_grid.empty())
        throw validation_error("line scan needs a non-empty x23 grid");
    for (std::size_t i = 0; i < x23_grid.size(); ++i) {
        if (!(x23_grid[i] > 0.0))
            throw validation_error("x23 grid values must be positive");
        if (i > 0 && !(x23_grid[i] > x23_grid[i - 1]))
            throw validation_error("x23 grid must be strictly ascending");
    }
    ScanResult result;
    result.axis_name = "x23";
    result.axis = x23_grid;
    result.columns = {"gamma_1", "gamma_2", "gamma_3"};
    result.rows.reserve(x23_grid.size());
    for (double x23 : x23_grid) {
        const auto modes =
            eigenmodes_analytic(build_coupling_matrix(collinear_config(x12, x23, eta), params));
        result.rows.push_back({modes.rates(0), modes.rates(1), modes.rates(2)});
    }
    return result;
}

} // namespace coopem
