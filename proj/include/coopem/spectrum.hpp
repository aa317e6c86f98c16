#ifndef COOPEM_SPECTRUM_HPP
#define COOPEM_SPECTRUM_HPP

#include <complex>
#include <vector>

#include "coopem/dynamics.hpp"
#include "coopem/geometry.hpp"
#include "coopem/modes.hpp"

namespace coopem {

// Detunings delta_k = omega_k - omega_eg in units of gamma_eg, strictly ascending.
class DetuningGrid {
public:
    explicit DetuningGrid(std::vector<double> values);
    static DetuningGrid linspace(double lo, double hi, int points);

    const std::vector<double>& values() const { return values_; }
    int size() const { return static_cast<int>(values_.size()); }

private:
    std::vector<double> values_;
};

enum class Normalization { none, peak_one };

struct SpectrumSeries {
    DetuningGrid grid;
    std::vector<double> values; // >= 0, arbitrary units
    Normalization normalization = Normalization::none;
};

// Unit detector direction.
class DetectorDirection {
public:
    explicit DetectorDirection(Vec3 v); // requires |v| = 1 within 1e-12
    static DetectorDirection from_angles(double theta, double phi);

    Vec3 unit() const { return unit_; }

private:
    Vec3 unit_;
};

// Per-atom lineshape f_n(delta) = sum_m a_m b_n^(m) / (Gamma_m - i*delta).
std::complex<double> mode_lineshape(const ModeSet& modes, const ModeDecomposition& decomp,
                                    int atom, double delta);

// Angular pair weight T_mn = integral over detector directions of
// [R x (d x R)]^2 e^{i k0 R.r_mn}: equals (8*pi/3) * D(x_mn, theta_mn) for
// distinct atoms and 8*pi/3 on the diagonal. theta_mn coincides with the
// stored pair angle eta_mn under the shared-dipole assumption.
double pair_weight(double x, double theta); // distinct atoms, x > 0
double pair_weight_same_atom();             // 8*pi/3

// Angle-integrated spectrum S(delta) = sum_{n,m} f_n f_m^* T_mn. The result
// is checked real within 1e-10 and non-negative within -1e-9 of the peak
// (consistency_error otherwise), then clamped to [0, inf).
SpectrumSeries total_spectrum(const AtomConfig& config, const ModeSet& modes,
                              const ModeDecomposition& decomp, const DetuningGrid& grid);

// Spectrum seen from one direction:
// S_R(delta) = (1 - (R.d)^2) |sum_n e^{-i k0 R.r_n} f_n(delta)|^2, k0 = 2*pi
// (phase factors at the resonant wavenumber; narrow-line approximation).
SpectrumSeries directional_spectrum(const AtomConfig& config, const ModeSet& modes,
                                    const ModeDecomposition& decomp,
                                    const DetectorDirection& direction,
                                    const DetuningGrid& grid);

// Independent route to the total spectrum: sphere quadrature of the
// directional spectrum. Converges to total_spectrum as order grows; order 20
// is ample for sub-wavelength arrays. Requires order >= 6.
SpectrumSeries quadrature_total_spectrum(const AtomConfig& config, const ModeSet& modes,
                                         const ModeDecomposition& decomp,
                                         const DetuningGrid& grid, int order);

SpectrumSeries normalize_peak(SpectrumSeries series);

struct Peak {
    double position = 0.0;
    double height = 0.0;
    double fwhm = 0.0; // NaN when a half-height crossing is outside the grid
};

// Local maxima by three-point comparison, positions refined by parabolic
// interpolation, FWHM from linearly interpolated half-height crossings.
// Flat series yield no peaks.
std::vector<Peak> find_peaks(const SpectrumSeries& series);

} // namespace coopem

#endif
