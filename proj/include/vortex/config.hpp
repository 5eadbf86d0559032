#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace vortex {

// Everything downstream works in reduced units: hbar = 1, r_c = 1, so the
// radial momentum is p = s and lengths are measured in units of the tube
// radius.  Amplitudes come out in units of sqrt(r_c), cross sections in r_c.

enum class Regime { Propagating, Evanescent };

// Robin boundary parameter rho in [0,1), stored as (sin(rho pi), cos(rho pi))
// so that the Dirichlet limit cot(rho pi) -> infinity never appears in a
// denominator.  rho = 0 is Dirichlet, rho = 1/2 is Neumann.
struct RobinBc {
    double sin_rho_pi = 0.0;
    double cos_rho_pi = 1.0;

    static RobinBc from_rho(double rho) {
        if (!(rho >= 0.0 && rho < 1.0))
            throw std::invalid_argument("RobinBc: rho must lie in [0,1)");
        if (rho == 0.0) return {0.0, 1.0};
        if (rho == 0.5) return {1.0, 0.0};
        return {std::sin(M_PI * rho), std::cos(M_PI * rho)};
    }
    static RobinBc dirichlet() { return {0.0, 1.0}; }
    static RobinBc neumann() { return {1.0, 0.0}; }

    bool is_dirichlet() const { return sin_rho_pi == 0.0; }
    // cot(rho pi) scaled out of all formulas; kept only for diagnostics.
    double cot() const { return cos_rho_pi / sin_rho_pi; }
};

struct ScatterConfig {
    double s;             // size parameter p r_c / hbar
    double mu;            // reduced flux e Phi / (2 pi hbar c)
    RobinBc robin;
    long long mu_floor;   // [[mu]], integer part (floor)
    double mu_frac;       // mu - [[mu]], in [0,1)

    ScatterConfig(double s_, double mu_, RobinBc bc = RobinBc::dirichlet())
        : s(s_), mu(mu_), robin(bc) {
        if (!(s > 0.0) || !std::isfinite(s))
            throw std::invalid_argument("ScatterConfig: s must be positive");
        if (!std::isfinite(mu))
            throw std::invalid_argument("ScatterConfig: mu must be finite");
        mu_floor = static_cast<long long>(std::floor(mu));
        mu_frac = mu - static_cast<double>(mu_floor);
    }
};

// One partial wave.  The tie nu == s counts as propagating; its reflection
// coefficient is defined by the evanescent-side limit (see reflection_coeff).
struct Channel {
    long long n;
    double nu;      // |n - mu|
    Regime regime;
    double xt;      // turning point nu/s in units of r_c
};

inline Channel make_channel(const ScatterConfig& cfg, long long n) {
    Channel ch;
    ch.n = n;
    ch.nu = std::fabs(static_cast<double>(n) - cfg.mu);
    ch.regime = (ch.nu <= cfg.s) ? Regime::Propagating : Regime::Evanescent;
    ch.xt = ch.nu / cfg.s;
    return ch;
}

// sgn with sgn(0) = +1, matching the integer-part convention used for the
// flux factors (only reached when mu is an integer and n == mu).
inline double sign_plus(double x) { return x >= 0.0 ? 1.0 : -1.0; }

}  // namespace vortex
