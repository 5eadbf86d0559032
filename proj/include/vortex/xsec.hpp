#pragma once

#include <vector>

#include "vortex/config.hpp"

namespace vortex {

// Smoothed delta Delta_y(phi) = sin^2(y phi) / (4 pi y sin^2(phi/2));
// Delta_y(0) = y/pi by the analytic limit.
double smoothed_delta(double y, double phi);

// Reflection cross section dsigma2/(dz dphi) = |sin(phi/2)|/2, units r_c.
double dsigma_reflection(const ScatterConfig& cfg, double phi);

// Diffraction cross section dsigma1/(dz dphi) = 4 Delta_{s/2}(phi)
// cos^2(s phi/2 + mu pi), units r_c.
double dsigma_diffraction(const ScatterConfig& cfg, double phi);

// Idealized point-vortex cross section, |f0|^2; phi != 0.
double dsigma_ab_point(const ScatterConfig& cfg, double phi);

struct CrossSectionTable {
    std::vector<double> angles;
    std::vector<double> dsigma1;
    std::vector<double> dsigma2;
    std::vector<double> dsigma_ab;
    std::vector<double> dsigma_total;  // dsigma1 + dsigma2, interference dropped
};
CrossSectionTable make_cross_section_table(const ScatterConfig& cfg,
                                           const std::vector<double>& angles);

// Normalized diffraction-window curve: abscissa x = phi s / (2 pi), ordinate
// (dsigma1 + dsigma2) / (4 s/(2 pi)), total cross section per unit length 4 r_c.
// Requires s/(2 pi) >= 50 (shape is s-independent there).
struct Figure1Point {
    double abscissa;
    double ordinate;
};
std::vector<Figure1Point> figure1_curve(const ScatterConfig& cfg,
                                        const std::vector<double>& abscissa);

// Area of the normalized curve over |phi| < phi_halfwidth, i.e.
// (1/4) integral (dsigma1 + dsigma2) dphi, by adaptive quadrature.
double figure1_peak_area(const ScatterConfig& cfg, double phi_halfwidth,
                         double abs_tol = 1e-9);

struct ObservabilityWindows {
    double phi_class_min;     // classical effect unobservable below this
    double phi_diff_max;      // diffraction fringes unobservable above this
    double background_level;  // |f3|^2 background scale s^{-1/3}
};
ObservabilityWindows observability_windows(const ScatterConfig& cfg);

}  // namespace vortex
