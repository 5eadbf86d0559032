#pragma once

#include <vector>

#include "vortex/config.hpp"

namespace vortex {

// Classical scattering off the impenetrable tube (units r_c = 1, p = 1,
// m = 1, planar motion p_z = 0).  The flux coupling mu' enters only the
// canonical angular momentum alpha = mu' - b p; the kinematics depend on the
// mechanical momentum alpha - mu' = -b p alone, so every observable is
// flux-independent.

struct OrbitSample {
    double r;
    double theta;
    double t;       // time, reflection at t = 0
    double z;       // p_z = 0, kept for the record layout
    double p_r;     // radial momentum along the branch
};

struct ClassicalOrbit {
    double b = 0.0;         // impact parameter, units r_c
    double alpha = 0.0;     // canonical angular momentum mu' - b p
    double mu_prime = 0.0;  // classical flux coupling
    double p = 1.0;
    bool miss = false;      // |b| >= 1: straight line, no collision
    std::vector<OrbitSample> samples;
    double deflection = 0.0;
};

// Closed-form trajectory sampled on both branches (2*n_samples - 1 points,
// incoming from theta_infinity = pi).  |b| >= 1 sets the miss flag and
// returns the undeflected straight line.
ClassicalOrbit trajectory(double b, double mu_prime, int n_samples,
                          double r_max = 10.0);

// Incidence angle theta_{r_c} - theta_infinity = arcsin(b); |b| < 1.
double incidence_angle(double b);

// Deflection angle phi = 2 sgn(b) arccos(|b|); |b| < 1.
double deflection_angle(double b);

// Inverse of the deflection map: b = sgn(phi) cos(phi/2).
double impact_for_deflection(double phi);

// Classical differential cross section -db/dphi = |sin(phi/2)|/2, units r_c.
double classical_cross_section(double phi);

// Finite-difference bridge between the WKB phase shift and the classical
// reflection geometry: returns d(delta)/dn - sgn(n-mu) pi/2 (which must equal
// arcsin(b)) and b = -(n-mu)/s.
struct WkbClassicalBridge {
    double reflection_angle;
    double impact_parameter;
    double fd_step;
    double mismatch;  // |reflection_angle - incidence_angle(impact_parameter)|
};
WkbClassicalBridge wkb_classical_bridge(const ScatterConfig& cfg, long long n);

}  // namespace vortex
