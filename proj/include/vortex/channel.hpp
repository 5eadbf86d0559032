#pragma once

#include <complex>
#include <vector>

#include "vortex/config.hpp"

namespace vortex {

// Dimensionless radial momentum P_n(r)/p = sqrt(1 - nu^2/(s x)^2) for
// x >= nu/s.  Throws std::domain_error below the turning point.
double radial_momentum(const ScatterConfig& cfg, const Channel& ch, double x);

// Dimensionless evanescent momentum Pi_n(r)/p = sqrt(nu^2/(s x)^2 - 1) for
// 0 < x <= nu/s.
double evanescent_momentum(const ScatterConfig& cfg, const Channel& ch, double x);

// xi_n(s) = sqrt(s^2-nu^2) - nu*arccos(nu/s), the radial action from the
// turning point to the boundary.  Propagating channels only.
double action_xi(const ScatterConfig& cfg, const Channel& ch);
double action_xi_nu(double s, double nu);

// Integral of Pi_n from r_t down to r_c: sqrt(nu^2-s^2) - nu*arccosh(nu/s),
// always <= 0.  Evanescent channels only.
double evanescent_action(const ScatterConfig& cfg, const Channel& ch);
double evanescent_action_nu(double s, double nu);

// Boundary phase omega_n(s, rho).  Evaluated as a two-argument arctangent of
// (sin(rho pi) * sqrt(s^2-nu^2), cos(rho pi) - sin(rho pi) * s^2/(2(s^2-nu^2)))
// so Dirichlet gives exactly zero.  The branch is the atan2 one, continuous in
// nu across the denominator's zero; only exp(-2i omega) is physical and it is
// insensitive to the branch choice.
struct OmegaResult {
    double value = 0.0;
    bool singular = false;  // nu == s: denominator of the inner fraction diverges
};
OmegaResult omega(const ScatterConfig& cfg, const Channel& ch);
OmegaResult omega_nu(double s, double nu, const RobinBc& bc);

struct ReflectionCoeff {
    std::complex<double> value;
};

// Reflection coefficient C_n.  Propagating: exp(-2i(xi+omega)), unit modulus.
// Evanescent: e^{2E} / [D + (i/2) e^{2E}] with E = evanescent_action and D the
// real Robin quotient.  At nu == s exactly the evanescent-side limit
// 1/(1 + i/2) = 0.8 - 0.4i is used (bounded convention for a measure-zero
// channel; the two one-sided WKB limits differ there).
ReflectionCoeff reflection_coeff(const ScatterConfig& cfg, const Channel& ch);
std::complex<double> reflection_coeff_nu(double s, double nu, const RobinBc& bc);

// WKB phase shift delta_n = mu*sgn(n-mu)*pi/2 - xi_n - pi/4 (propagating).
double wkb_phase_shift(const ScatterConfig& cfg, const Channel& ch);
// Continuous-n extension used for finite-difference derivatives.
double wkb_phase_shift_at(const ScatterConfig& cfg, double n_continuous);

// d/dx Sigma^(l) for l = 0..l_max (l_max <= 4) from the order-by-order WKB
// recursion, evaluated by truncated Taylor-series arithmetic around x.
// Diagnostic only; the sign convention is the outgoing (+) branch, so
// l = 0 returns +P_n.  Requires x inside the oscillatory region with the
// turning point at least 1e-3 away.
std::vector<double> wkb_series_terms(const ScatterConfig& cfg, const Channel& ch,
                                     double x, int l_max);

// Ratio of the quasiclassicality criterion: s^2 x^2 / |s^2 x^2 - nu^2|^{3/2}.
double wkb_validity_ratio(double s, double nu, double x);
inline bool is_quasiclassical(double s, double nu, double x) {
    return wkb_validity_ratio(s, nu, x) < 0.1;
}

}  // namespace vortex
