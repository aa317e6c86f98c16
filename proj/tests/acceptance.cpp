// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion (plus elapsed time against the
// per-criterion runtime budget). Exit status = number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coopem/dynamics.hpp"
#include "coopem/geometry.hpp"
#include "coopem/kernels.hpp"
#include "coopem/modes.hpp"
#include "coopem/spectrum.hpp"
#include "support/reference.hpp"

using namespace coopem;
using Complex = std::complex<double>;

namespace {

constexpr double half_pi = M_PI / 2.0;

struct check_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& msg) {
    if (!ok) throw check_failure(msg);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double multiset_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    std::vector<int> perm = {0, 1, 2};
    double best = 1e300;
    do {
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(a(i) - b(perm[i])));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

double charpoly_residual(const Eigen::MatrixXcd& g, Complex lambda) {
    Eigen::MatrixXcd a = g;
    a.diagonal().array() -= lambda;
    const double scale = std::max(1.0, g.norm() + std::abs(lambda));
    return std::abs(a.determinant()) / (scale * scale * scale);
}

struct Solved {
    AtomConfig config;
    ModeSet modes;
    ModeDecomposition decomp;
};

Solved solve(AtomConfig config, const InitialState& initial) {
    auto matrix = build_coupling_matrix(config, ModelParams{});
    auto modes = config.size() == 3 ? eigenmodes_analytic(matrix) : eigenmodes_numeric(matrix);
    auto decomp = decompose_initial(modes, initial);
    return {std::move(config), std::move(modes), std::move(decomp)};
}

const Peak& widest_peak(const std::vector<Peak>& peaks) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < peaks.size(); ++i)
        if (peaks[i].fwhm > peaks[best].fwhm) best = i;
    return peaks[best];
}

// ---- criteria ----------------------------------------------------------

void criterion_kernel_limits() {
    for (double eta : {0.0, M_PI / 4.0, half_pi}) {
        const double dev = std::abs(kernel_D(1e-4, eta) - 1.0);
        require(dev <= 1e-6, "D(1e-4, " + fmt(eta) + ") deviates from 1 by " + fmt(dev));
    }
    const double u = kernel_series_threshold_u;
    const double below = std::nextafter(u, 0.0);
    const double jump_d = std::abs(detail::bracket_d(below) - detail::bracket_d(u));
    const double jump_p = std::abs(detail::bracket_p(below) - detail::bracket_p(u));
    require(jump_d <= 1e-12, "D-bracket crossover jump " + fmt(jump_d));
    require(jump_p <= 1e-12, "P-bracket crossover jump " + fmt(jump_p));
}

void criterion_dicke_limit() {
    const auto eq = equilateral_closed_form(1e-3, ModelParams{});
    require(eq.rate_symmetric >= 2.99, "symmetric rate " + fmt(eq.rate_symmetric) + " < 2.99");
    require(eq.rate_asymmetric <= 0.01,
            "asymmetric rate " + fmt(eq.rate_asymmetric) + " > 0.01");
}

void criterion_eigen_oracle() {
    std::mt19937 rng(20240816);
    double worst_multiset = 0.0, worst_residual = 0.0, worst_trace = 0.0, worst_rate = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto matrix = build_coupling_matrix(testref::random_config(rng, 0.02, 2.0),
                                                  ModelParams{});
        const auto analytic = eigenmodes_analytic(matrix);
        const auto numeric = eigenmodes_numeric(matrix);

        worst_multiset = std::max(
            worst_multiset, multiset_distance(analytic.eigenvalues, numeric.eigenvalues));
        for (int i = 0; i < 3; ++i) {
            worst_residual = std::max(
                worst_residual, charpoly_residual(matrix.entries(), analytic.eigenvalues(i)));
            worst_residual = std::max(
                worst_residual, charpoly_residual(matrix.entries(), numeric.eigenvalues(i)));
            worst_rate = std::min(worst_rate, analytic.rates(i));
        }
        worst_trace =
            std::max(worst_trace, std::abs(analytic.eigenvalues.sum() -
                                           3.0 * matrix.diagonal()));
    }
    require(worst_multiset <= 1e-10, "eigenvalue multiset mismatch " + fmt(worst_multiset));
    require(worst_residual <= 1e-10, "characteristic residual " + fmt(worst_residual));
    require(worst_trace <= 1e-12, "trace identity violated by " + fmt(worst_trace));
    require(worst_rate >= -1e-10, "negative decay rate " + fmt(worst_rate));
}

void criterion_equilateral_degeneracy() {
    const auto modes =
        eigenmodes_numeric(build_coupling_matrix(equilateral_config(0.1), ModelParams{}));
    require(modes.degeneracy_groups.size() == 2,
            "expected 2 degeneracy groups, got " +
                std::to_string(modes.degeneracy_groups.size()));
    require(modes.degeneracy_groups[0].size() == 1 && modes.degeneracy_groups[1].size() == 2,
            "degeneracy groups are not {1}, {2}");
    require(std::abs(modes.eigenvalues(1) - modes.eigenvalues(2)) <= 1e-9,
            "two-fold eigenvalue split " +
                fmt(std::abs(modes.eigenvalues(1) - modes.eigenvalues(2))));

    // superradiant eigenvector vs the Dicke vector, up to a global phase
    const Eigen::VectorXcd v = modes.eigenvectors.col(0);
    Eigen::VectorXcd dicke(3);
    dicke.setConstant(1.0 / std::sqrt(3.0));
    const Complex phase = (dicke.adjoint() * v);
    const double dev = (v - phase / std::abs(phase) * dicke).norm();
    require(dev <= 1e-10, "superradiant eigenvector off the Dicke state by " + fmt(dev));
}

void criterion_line_scan_maxima() {
    std::vector<double> grid;
    for (int i = 1; i <= 200; ++i) grid.push_back(0.005 * i); // (0, 1]

    const auto close_scan = line_scan(0.05, grid, half_pi, ModelParams{});
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (close_scan.rows[i][0] > close_scan.rows[argmax][0]) argmax = i;
    require(std::abs(grid[argmax] - 0.05) <= 0.2 * 0.05,
            "x12=0.05: max rate at x23 = " + fmt(grid[argmax]));
    require(close_scan.rows[argmax][0] > 2.7,
            "x12=0.05: max rate " + fmt(close_scan.rows[argmax][0]) + " <= 2.7");

    const auto far_scan = line_scan(0.5, grid, half_pi, ModelParams{});
    argmax = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (far_scan.rows[i][0] > far_scan.rows[argmax][0]) argmax = i;
    require(argmax == 0, "x12=0.5: max rate at x23 = " + fmt(grid[argmax]) +
                             ", expected the smallest sampled x23");
}

void criterion_equilateral_spectrum() {
    const auto grid = DetuningGrid::linspace(-15.0, 15.0, 3001);
    const double step = 30.0 / 3000.0;
    const double p = kernel_P(0.1, half_pi);

    const auto e1 = solve(equilateral_config(0.1), InitialState::excited_atom(3, 0));
    const auto peaks = find_peaks(total_spectrum(e1.config, e1.modes, e1.decomp, grid));
    require(peaks.size() == 2, "expected 2 peaks, found " + std::to_string(peaks.size()));
    require(std::abs(peaks[0].position - (-p / 2.0)) <= step,
            "narrow peak at " + fmt(peaks[0].position) + ", expected " + fmt(-p / 2.0));
    require(std::abs(peaks[1].position - p) <= step,
            "wide peak at " + fmt(peaks[1].position) + ", expected " + fmt(p));
    require(peaks[1].fwhm > peaks[0].fwhm && peaks[1].position > 0.0,
            "the wide peak is not the blue-shifted one");

    const auto dicke = solve(equilateral_config(0.1), InitialState::dicke(3));
    const auto dicke_peaks =
        find_peaks(total_spectrum(dicke.config, dicke.modes, dicke.decomp, grid));
    require(dicke_peaks.size() == 1,
            "Dicke initial state: expected 1 peak, found " +
                std::to_string(dicke_peaks.size()));
}

void criterion_collinear_spectrum() {
    const auto grid = DetuningGrid::linspace(-20.0, 20.0, 4001);

    const auto perp =
        solve(collinear_config(0.1, 0.1, half_pi), InitialState::excited_atom(3, 0));
    const auto perp_peaks =
        find_peaks(total_spectrum(perp.config, perp.modes, perp.decomp, grid));
    require(perp_peaks.size() == 3,
            "eta=pi/2: expected 3 peaks, found " + std::to_string(perp_peaks.size()));
    require(widest_peak(perp_peaks).position > 0.0, "eta=pi/2: widest peak not blue-shifted");

    const auto para = solve(collinear_config(0.1, 0.1, 0.0), InitialState::excited_atom(3, 0));
    const auto para_peaks =
        find_peaks(total_spectrum(para.config, para.modes, para.decomp, grid));
    require(para_peaks.size() == 3,
            "eta=0: expected 3 peaks, found " + std::to_string(para_peaks.size()));
    require(widest_peak(para_peaks).position < 0.0, "eta=0: widest peak not red-shifted");
}

void criterion_spectrum_oracle() {
    const auto grid = DetuningGrid::linspace(-15.0, 15.0, 1501);
    for (const auto& s :
         {solve(equilateral_config(0.1), InitialState::excited_atom(3, 0)),
          solve(collinear_config(0.1, 0.2, half_pi), InitialState::excited_atom(3, 0))}) {
        const auto closed = total_spectrum(s.config, s.modes, s.decomp, grid);
        const auto quad = quadrature_total_spectrum(s.config, s.modes, s.decomp, grid, 20);
        double smax = 0.0, dev = 0.0;
        for (double v : closed.values) smax = std::max(smax, v);
        for (int k = 0; k < grid.size(); ++k)
            dev = std::max(dev, std::abs(closed.values[k] - quad.values[k]));
        require(dev / smax <= 1e-6,
                "closed form vs quadrature relative deviation " + fmt(dev / smax));
    }

    const double diag_dev =
        std::abs(testref::pair_weight_ref(0.0, 0.7) - pair_weight_same_atom()) /
        pair_weight_same_atom();
    require(diag_dev <= 1e-6, "diagonal pair weight off by " + fmt(diag_dev));
    for (double x : {0.1, 0.2, 0.3})
        for (double eta : {0.0, 0.7, half_pi}) {
            const double ref = testref::pair_weight_ref(x, eta);
            const double dev = std::abs(pair_weight(x, eta) - ref) /
                               std::max(1.0, std::abs(ref));
            require(dev <= 1e-6, "pair weight (" + fmt(x) + ", " + fmt(eta) + ") off by " +
                                     fmt(dev));
        }
}

void criterion_dynamics() {
    // reconstruction at t = 0
    const auto s = solve(equilateral_config(0.1), InitialState::excited_atom(3, 0));
    const auto traj0 = evolve(s.modes, s.decomp, {0.0});
    const double rec =
        (traj0.amplitudes.col(0) - InitialState::excited_atom(3, 0).amplitudes()).norm();
    require(rec <= 1e-12, "t=0 reconstruction error " + fmt(rec));

    // semigroup property on an asymmetric geometry
    std::mt19937 rng(4);
    const auto asym = solve(testref::random_config(rng), InitialState::excited_atom(3, 1));
    const double t1 = 0.7, t2 = 1.3;
    const auto leg1 = evolve(asym.modes, asym.decomp, {0.0, t1});
    const Eigen::VectorXcd mid = leg1.amplitudes.col(1);
    const auto restart = evolve(
        asym.modes, decompose_initial(asym.modes, InitialState(mid / mid.norm())), {0.0, t2});
    const auto direct = evolve(asym.modes, asym.decomp, {0.0, t1 + t2});
    const double gap = (mid.norm() * restart.amplitudes.col(1) - direct.amplitudes.col(1)).norm();
    require(gap <= 1e-10, "semigroup gap " + fmt(gap));

    // decoupled limit: single-atom exponential decay over t in [0, 10]
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(3, 3);
    g.diagonal().setConstant(Complex{0.5, 0.0});
    const auto modes = eigenmodes_numeric(CouplingMatrix(g, ModelParams{}));
    const auto decomp = decompose_initial(modes, InitialState::excited_atom(3, 0));
    std::vector<double> times;
    for (int k = 0; k <= 100; ++k) times.push_back(0.1 * k);
    const auto traj = evolve(modes, decomp, times);
    double worst = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k)
        worst = std::max(worst,
                         std::abs(std::norm(traj.amplitudes(0, static_cast<Eigen::Index>(k))) -
                                  std::exp(-times[k])));
    require(worst <= 1e-10, "decoupled |C_1|^2 deviates from exp(-t) by " + fmt(worst));
}

void criterion_far_separation() {
    // all pairwise separations >= 10 (comfortably inside the premise)
    const auto matrix = build_coupling_matrix(equilateral_config(1000.3), ModelParams{});
    const auto modes = eigenmodes_numeric(matrix);
    for (int i = 0; i < 3; ++i) {
        const double dev = std::abs(modes.eigenvalues(i) - matrix.diagonal());
        require(dev <= 1e-3, "eigenvalue " + std::to_string(i) + " deviates from Gamma_0 by " +
                                 fmt(dev));
    }
    const auto decomp = decompose_initial(modes, InitialState::excited_atom(3, 0));
    const auto series = total_spectrum(equilateral_config(1000.3), modes, decomp,
                                       DetuningGrid::linspace(-15.0, 15.0, 3001));
    const auto peaks = find_peaks(series);
    require(peaks.size() == 1, "expected 1 peak, found " + std::to_string(peaks.size()));
    require(std::abs(peaks[0].fwhm - 1.0) <= 0.02,
            "FWHM " + fmt(peaks[0].fwhm) + " outside gamma_eg +- 2%");
}

struct Criterion {
    int id;
    std::string description;
    double budget_seconds;
    std::function<void()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "kernel contact limits and series crossover", 1.0, criterion_kernel_limits},
        {2, "small-triangle superradiance approaches 3x / 0x", 1.0, criterion_dicke_limit},
        {3, "cubic vs numeric eigensolutions on 1000 random geometries", 30.0,
         criterion_eigen_oracle},
        {4, "equilateral degeneracy structure and Dicke eigenvector", 1.0,
         criterion_equilateral_degeneracy},
        {5, "collinear superradiance maxima vs x23", 10.0, criterion_line_scan_maxima},
        {6, "equilateral spectrum peak structure", 5.0, criterion_equilateral_spectrum},
        {7, "collinear spectrum peak structure", 5.0, criterion_collinear_spectrum},
        {8, "spectrum quadrature oracle and pair weights", 60.0, criterion_spectrum_oracle},
        {9, "dynamics reconstruction, semigroup, decoupled decay", 5.0, criterion_dynamics},
        {10, "far-separation single-atom limit", 5.0, criterion_far_separation},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (error.empty() && elapsed > c.budget_seconds)
            error = "runtime " + fmt(elapsed) + " s exceeds budget " +
                    fmt(c.budget_seconds) + " s";
        if (error.empty()) {
            std::printf("[PASS] criterion %2d: %s (%.2f s)\n", c.id, c.description.c_str(),
                        elapsed);
        } else {
            std::printf("[FAIL] criterion %2d: %s (%.2f s) -- %s\n", c.id,
                        c.description.c_str(), elapsed, error.c_str());
            ++failures;
        }
    }
    if (failures == 0)
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
