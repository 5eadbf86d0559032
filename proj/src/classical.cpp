#include "vortex/classical.hpp"

#include <cmath>
#include <stdexcept>

#include "vortex/channel.hpp"

namespace vortex {

namespace {

void require_impact(double b) {
    if (!(std::fabs(b) < 1.0))
        throw std::domain_error("classical: |b| must be < 1");
}

}  // namespace

double incidence_angle(double b) {
    require_impact(b);
    return std::asin(b);
}

double deflection_angle(double b) {
    require_impact(b);
    return 2.0 * sign_plus(b) * std::acos(std::fabs(b));
}

double impact_for_deflection(double phi) {
    return sign_plus(phi) * std::cos(0.5 * phi);
}

double classical_cross_section(double phi) {
    return 0.5 * std::fabs(std::sin(0.5 * phi));
}

ClassicalOrbit trajectory(double b, double mu_prime, int n_samples, double r_max) {
    if (n_samples < 2) throw std::invalid_argument("trajectory: n_samples >= 2");
    const double p = 1.0;
    ClassicalOrbit orb;
    orb.b = b;
    orb.mu_prime = mu_prime;
    orb.alpha = mu_prime - b * p;
    orb.p = p;
    orb.miss = !(std::fabs(b) < 1.0);

    const double r_min = orb.miss ? std::fabs(b) : 1.0;
    const double theta_inf = M_PI;
    const double theta_rc = theta_inf + std::asin(orb.miss ? sign_plus(b) : b);

    orb.samples.reserve(2 * n_samples - 1);
    // incoming branch, r_max down to r_min; straight line until contact
    for (int i = 0; i < n_samples; ++i) {
        const double r = r_max + (r_min - r_max) * static_cast<double>(i) / (n_samples - 1);
        OrbitSample smp;
        smp.r = r;
        smp.theta = theta_inf + std::asin(b / r);
        const double rad = std::sqrt(std::max(r * r - b * b, 0.0));
        smp.t = -rad / p;
        smp.z = 0.0;
        smp.p_r = -p * rad / r;
        orb.samples.push_back(smp);
    }
    // outgoing branch, mirror image about the reflection point
    for (int i = n_samples - 2; i >= 0; --i) {
        OrbitSample smp = orb.samples[static_cast<size_t>(i)];
        smp.theta = 2.0 * theta_rc - smp.theta;
        smp.t = -smp.t;
        smp.p_r = -smp.p_r;
        orb.samples.push_back(smp);
    }
    orb.deflection = orb.miss ? 0.0 : deflection_angle(b);
    return orb;
}

WkbClassicalBridge wkb_classical_bridge(const ScatterConfig& cfg, long long n) {
    const double d = static_cast<double>(n) - cfg.mu;
    const double nu = std::fabs(d);
    if (nu > cfg.s)
        throw std::domain_error("wkb_classical_bridge: evanescent channel");

    double h = 1e-6 * std::max(1.0, nu);
    const double room = 0.5 * (cfg.s - nu);
    if (room < 1e-11 * cfg.s)
        throw std::domain_error("wkb_classical_bridge: step underflow near nu = s");
    h = std::min(h, room);

    const double nn = static_cast<double>(n);
    double fd;
    if (d == 0.0) {
        // delta has the sgn kink at n = mu; one-sided derivative, + convention
        fd = (wkb_phase_shift_at(cfg, nn + h) - wkb_phase_shift_at(cfg, nn)) / h;
    } else {
        h = std::min(h, 0.5 * nu);  // keep both points on one side of n = mu
        fd = (wkb_phase_shift_at(cfg, nn + h) - wkb_phase_shift_at(cfg, nn - h)) /
             (2.0 * h);
    }

    WkbClassicalBridge out;
    out.fd_step = h;
    out.reflection_angle = fd - 0.5 * sign_plus(d) * M_PI;
    out.impact_parameter = -d / cfg.s;
    out.mismatch = std::fabs(out.reflection_angle - std::asin(out.impact_parameter));
    return out;
}

}  // namespace vortex
