#pragma once

#include <complex>
#include <vector>

#include "vortex/config.hpp"

namespace vortex {

// Exact (non-WKB) solution of the radial equation
//   (1/x)(x u')' + (s^2 - nu^2/x^2) u = 0
// with the Robin condition sin(rho pi) x u' + cos(rho pi) u = 0 at x = 1,
// integrated on w = sqrt(x) u with an adaptive embedded Runge-Kutta pair.
// The scattering coefficient S_n is the ratio of outgoing to incoming
// asymptotic waves, normalized so a free channel gives S_n = 1.

struct ExactChannelSolution {
    long long n = 0;
    double nu = 0.0;
    std::complex<double> S;
    double delta = 0.0;            // S = e^{2 i delta}
    double unitarity_defect = 0.0; // | |S| - 1 |
    double match_residual = 0.0;   // spread of the extrapolated match phases
    long long steps = 0;           // accepted integrator steps
};

struct OracleOptions {
    double match_radius_factor = 20.0;  // x_m = factor * max(1, nu/s), >= 20
    double min_match_phase = 40.0;      // additionally require s * x_m >= this
    double rel_tol = 1e-12;
    int threads = 0;                    // 0: hardware concurrency
};

ExactChannelSolution solve_channel(const ScatterConfig& cfg, long long n,
                                   const OracleOptions& opts = {});

// All channels with |n - mu| <= nu_max, in ascending n (parallel solves,
// deterministic per-index results).
std::vector<ExactChannelSolution> solve_channels(const ScatterConfig& cfg,
                                                 double nu_max,
                                                 const OracleOptions& opts = {});

// Exact total amplitude f0 + fc at angle phi from precomputed channel
// solutions (fixed ascending-nu compensated resummation).
struct ExactAmplitude {
    std::complex<double> value;
    bool truncation_warning = false;  // outermost decade contributed > 1e-8
};
ExactAmplitude exact_amplitude_from(const ScatterConfig& cfg,
                                    const std::vector<ExactChannelSolution>& channels,
                                    double phi);

// Convenience wrapper: solves channels up to nu_max and resums.
// Requires nu_max >= s + 10 s^{1/3} so the transition region is covered.
ExactAmplitude exact_amplitude(const ScatterConfig& cfg, double phi, double nu_max,
                               const OracleOptions& opts = {});

// Per-channel WKB reflection-phase errors |arg S_exact - arg(-i C_n)| over
// the propagating block nu <= nu_cut_frac * s.
struct ChannelPhaseError {
    long long n;
    double nu;
    double error;
};
struct WkbComparison {
    std::vector<ChannelPhaseError> channels;
    double max_error = 0.0;
    long long argmax_n = 0;
    double mean_error = 0.0;
};
WkbComparison compare_wkb(const ScatterConfig& cfg, double nu_cut_frac = 0.9,
                          const OracleOptions& opts = {});

}  // namespace vortex
