#include "coopem/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coopem/errors.hpp"
#include "coopem/kernels.hpp"
#include "coopem/quadrature.hpp"

namespace coopem {

namespace {

using Complex = std::complex<double>;

// f_n(delta) for all atoms at once.
Eigen::VectorXcd lineshape_vector(const ModeSet& modes, const ModeDecomposition& decomp,
                                  double delta) {
    const int n = modes.size();
    Eigen::VectorXcd weights(n);
    for (int m = 0; m < n; ++m)
        weights(m) = decomp.coefficients(m) / (modes.eigenvalues(m) - Complex{0.0, delta});
    return modes.eigenvectors * weights;
}

void check_dimensions(const AtomConfig& config, const ModeSet& modes,
                      const ModeDecomposition& decomp) {
    if (config.size() != modes.size() || modes.size() != decomp.coefficients.size())
        throw validation_error("config, modes and decomposition dimensions disagree");
}

} // namespace

DetuningGrid::DetuningGrid(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw validation_error("detuning grid needs at least 2 points");
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) throw validation_error("detuning grid must be finite");
        if (k > 0 && !(values_[k] > values_[k - 1]))
            throw validation_error("detuning grid must be strictly ascending");
    }
}

DetuningGrid DetuningGrid::linspace(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo))
        throw validation_error("detuning grid needs hi > lo and at least 2 points");
    std::vector<double> v(points);
    for (int k = 0; k < points; ++k)
        v[k] = lo + (hi - lo) * k / (points - 1);
    return DetuningGrid(std::move(v));
}

DetectorDirection::DetectorDirection(Vec3 v) : unit_(v) {
    if (std::abs(norm(v) - 1.0) > 1e-12)
        throw validation_error("detector direction must be a unit vector");
}

DetectorDirection DetectorDirection::from_angles(double theta, double phi) {
    const double st = std::sin(theta);
    return DetectorDirection(normalized(Vec3{st * std::cos(phi), st * std::sin(phi),
                                             std::cos(theta)}));
}

std::complex<double> mode_lineshape(const ModeSet& modes, const ModeDecomposition& decomp,
                                    int atom, double delta) {
    if (atom < 0 || atom >= modes.size())
        throw validation_error("atom index " + std::to_string(atom) + " out of range");
    if (modes.size() != decomp.coefficients.size())
        throw validation_error("modes and decomposition dimensions disagree");
    return lineshape_vector(modes, decomp, delta)(atom);
}

double pair_weight(double x, double theta) {
    if (!(x > 0.0))
        throw validation_error("pair_weight requires x > 0 for distinct atoms, got " +
                               std::to_string(x));
    return (8.0 * M_PI / 3.0) * kernel_D(x, theta);
}

double pair_weight_same_atom() { return 8.0 * M_PI / 3.0; }

SpectrumSeries total_spectrum(const AtomConfig& config, const ModeSet& modes,
                              const ModeDecomposition& decomp, const DetuningGrid& grid) {
    check_dimensions(config, modes, decomp);
    const int n = config.size();

    Eigen::MatrixXd weights(n, n);
    weights.diagonal().setConstant(pair_weight_same_atom());
    for (const auto& pair : build_pair_geometry(config)) {
        const double t = pair_weight(pair.x, pair.eta);
        weights(pair.m, pair.n) = t;
        weights(pair.n, pair.m) = t;
    }

    std::vector<double> values(grid.size());
    double smax = 0.0, imax = 0.0;
    for (int k = 0; k < grid.size(); ++k) {
        const Eigen::VectorXcd f = lineshape_vector(modes, decomp, grid.values()[k]);
        // S = f^H T f with T real symmetric, so S is real up to rounding.
        const Complex s = f.adjoint() * (weights * f);
        values[k] = s.real();
        smax = std::max(smax, std::abs(s.real()));
        imax = std::max(imax, std::abs(s.imag()));
    }
    if (imax > 1e-10 * std::max(smax, 1e-300))
        throw consistency_error("total spectrum has a non-negligible imaginary residue");
    for (double v : values)
        if (v < -1e-9 * smax)
            throw consistency_error("total spectrum is negative beyond tolerance");
    for (double& v : values) v = std::max(v, 0.0);
    return SpectrumSeries{grid, std::move(values), Normalization::none};
}

SpectrumSeries directional_spectrum(const AtomConfig& config, const ModeSet& modes,
                                    const ModeDecomposition& decomp,
                                    const DetectorDirection& direction,
                                    const DetuningGrid& grid) {
    check_dimensions(config, modes, decomp);
    const int n = config.size();
    const Vec3 rhat = direction.unit();
    const double rd = dot(rhat, config.dipole());
    const double polarization = 1.0 - rd * rd;

    // Outgoing-wave phases at the resonant wavenumber k0 = 2*pi/lambda0.
    Eigen::VectorXcd phases(n);
    for (int i = 0; i < n; ++i) {
        const double ph = -2.0 * M_PI * dot(rhat, config.positions()[i]);
        phases(i) = Complex{std::cos(ph), std::sin(ph)};
    }

    std::vector<double> values(grid.size());
    for (int k = 0; k < grid.size(); ++k) {
        const Eigen::VectorXcd f = lineshape_vector(modes, decomp, grid.values()[k]);
        const Complex amp = phases.transpose() * f;
        values[k] = polarization * std::norm(amp);
    }
    return SpectrumSeries{grid, std::move(values), Normalization::none};
}

SpectrumSeries quadrature_total_spectrum(const AtomConfig& config, const ModeSet& modes,
                                         const ModeDecomposition& decomp,
                                         const DetuningGrid& grid, int order) {
    check_dimensions(config, modes, decomp);
    if (order < 6) throw validation_error("sphere quadrature order must be >= 6");

    std::vector<double> values(grid.size(), 0.0);
    for (const auto& node : sphere_product_rule(order)) {
        const auto slice =
            directional_spectrum(config, modes, decomp, DetectorDirection(node.dir), grid);
        for (int k = 0; k < grid.size(); ++k) values[k] += node.weight * slice.values[k];
    }
    return SpectrumSeries{grid, std::move(values), Normalization::none};
}

SpectrumSeries normalize_peak(SpectrumSeries series) {
    const double peak = *std::max_element(series.values.begin(), series.values.end());
    if (!(peak > 0.0))
        throw validation_error("cannot peak-normalize an all-zero spectrum");
    for (double& v : series.values) v /= peak;
    series.normalization = Normalization::peak_one;
    return series;
}

std::vector<Peak> find_peaks(const SpectrumSeries& series) {
    const auto& d = series.grid.values();
    const auto& s = series.values;
    const int n = static_cast<int>(s.size());
    std::vector<Peak> peaks;

    for (int i = 1; i + 1 < n; ++i) {
        if (!(s[i] > s[i - 1] && s[i] > s[i + 1])) continue;

        // Parabolic refinement: fit s0 + B(delta-d[i]) + A(delta-d[i])^2
        // through the three samples (A < 0 at a strict local maximum).
        const double h1 = d[i] - d[i - 1], h2 = d[i + 1] - d[i];
        const double dl = (s[i - 1] - s[i]) / h1, dr = (s[i + 1] - s[i]) / h2;
        const double a = (dr + dl) / (h1 + h2);
        const double b = (dr * h1 - dl * h2) / (h1 + h2);
        Peak peak;
        if (a < 0.0) {
            peak.position = d[i] + std::clamp(-b / (2.0 * a), -h1, h2);
            peak.height = s[i] - b * b / (4.0 * a);
        } else {
            peak.position = d[i];
            peak.height = s[i];
        }

        // Half-height crossings by linear interpolation, walking outward.
        const double half = peak.height / 2.0;
        double left = std::numeric_limits<double>::quiet_NaN();
        double right = std::numeric_limits<double>::quiet_NaN();
        for (int j = i; j > 0; --j) {
            if (s[j - 1] <= half && s[j] >= half) {
                left = d[j - 1] + (d[j] - d[j - 1]) * (half - s[j - 1]) / (s[j] - s[j - 1]);
                break;
            }
            if (s[j - 1] > s[j]) break; // rising again: crossing belongs to a neighbor
        }
        for (int j = i; j + 1 < n; ++j) {
            if (s[j + 1] <= half && s[j] >= half) {
                right = d[j] + (d[j + 1] - d[j]) * (s[j] - half) / (s[j] - s[j + 1]);
                break;
            }
            if (s[j + 1] > s[j]) break;
        }
        peak.fwhm = right - left; // NaN when either crossing is missing
        peaks.push_back(peak);
    }
    return peaks;
}

} // namespace coopem
