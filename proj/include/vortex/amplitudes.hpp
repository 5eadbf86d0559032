#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "vortex/config.hpp"

namespace vortex {

// Plan for the partial-wave sums.  The propagating block covers every
// |n - mu| <= s exactly; evanescent tails stop once the per-term modulus has
// stayed below tail_tol for tail_confirm consecutive terms.
struct SumPlan {
    long long n_min = 0;
    long long n_max = -1;
    double tail_tol = 1e-14;
    int tail_confirm = 3;
    bool compensated = true;
};

SumPlan propagating_plan(const ScatterConfig& cfg);

// Propagating indices ordered by ascending |n - mu| (ties: smaller n first).
std::vector<long long> ordered_propagating_indices(const ScatterConfig& cfg);

// Idealized point-vortex amplitude f0 (units sqrt(r_c)); phi != 0.
std::complex<double> f0_amplitude(const ScatterConfig& cfg, double phi);

// Distortion factor e^{i mu (phi - sgn(phi) pi)} of the incident wave.
std::complex<double> incident_wave_phase(const ScatterConfig& cfg, double phi);

// Diffraction amplitude f1: exact finite sum over the propagating block.
std::complex<double> f1_direct(const ScatterConfig& cfg, double phi);

// Closed form of f1 as two geometric progressions.  The integer bookkeeping
// selects one of three cases; `branch` reports which one fired
// (0: equal halves, 1: lower half longer, 2: upper half longer).
struct F1Closed {
    std::complex<double> value;
    int branch = 0;
};
F1Closed f1_closed(const ScatterConfig& cfg, double phi);

// Reflection amplitude f2: exact sum with per-channel WKB reflection
// coefficients / stationary-phase closed form (phi != 0 for the latter).
std::complex<double> f2_direct(const ScatterConfig& cfg, double phi);
std::complex<double> f2_closed(const ScatterConfig& cfg, double phi);

// Evanescent-tail amplitude f3, summed in ascending nu until the tail rule
// fires.  Throws if 10^6 terms fail to converge (cannot happen for s >= 1e-3).
std::complex<double> f3_direct(const ScatterConfig& cfg, double phi,
                               const SumPlan& plan = SumPlan{});

// Forward-direction estimates of f3: adaptive quadrature of the two
// two-sided-tail integrals I1, I2 plus their closed-form Laplace estimates in
// the two Robin regimes, and the assembled f3(0).
struct ForwardF3 {
    double i1_quad = 0.0;
    double i2_quad = 0.0;
    double i1_laplace_large_cot = 0.0;  // Gamma(2/3) (12 s^2)^{-1/3}
    double i2_laplace_large_cot = 0.0;  // Gamma(2/3) (6 s^2)^{-1/3} / 4
    double i1_laplace_small_cot = 0.0;  // -(1/3) (2s)^{-2/3}
    double i2_laplace_small_cot = 0.0;  // (sqrt(pi)/3) (2/s^2)^{1/3}
    std::complex<double> f3_forward;    // -sqrt(2/pi) sqrt(s) cos(mu pi) (I1 - i I2)
    double quad_error = 0.0;
    bool converged = true;
};
ForwardF3 f3_forward_estimates(const ScatterConfig& cfg);

// Poisson-resummed stationary-phase evaluation of sum_{n in [-s_-, s_+]}
// e^{i eta(n)}.  The caller supplies eta and its first two derivatives
// (piecewise-smooth is fine; roots of eta' - 2 pi l are located by a scan
// plus bisection, so an isolated jump in eta' is tolerated).
struct PhaseFunction {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    std::function<double(double)> deriv2;
};

struct PoissonResult {
    std::complex<double> value;
    struct StationaryPoint {
        double n;
        int l;
        double second_deriv;
    };
    std::vector<StationaryPoint> points;
    bool endpoint_flag = false;  // a stationary point within 1e-6*(range) of an endpoint
};

// Throws std::domain_error if a concavity probe finds eta'' >= 0.
PoissonResult poisson_stationary_sum(const PhaseFunction& eta, double s_minus,
                                     double s_plus);

}  // namespace vortex
