#pragma once

#include <functional>

namespace vortex {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;       // accumulated Kronrod error estimate
    int panels = 0;
    bool converged = true;
};

// Adaptive Gauss(7)-Kronrod(15) bisection to an absolute/relative tolerance.
// Deterministic: fixed work-list order, no parallelism.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10, double rel_tol = 1e-12,
                     int max_panels = 200000);

}  // namespace vortex
