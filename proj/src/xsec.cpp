#include "vortex/xsec.hpp"

#include <cmath>
#include <stdexcept>

#include "vortex/quadrature.hpp"

namespace vortex {

double smoothed_delta(double y, double phi) {
    if (!(y > 0.0)) throw std::invalid_argument("smoothed_delta: y must be positive");
    if (phi == 0.0) return y / M_PI;
    const double r = std::sin(y * phi) / std::sin(0.5 * phi);
    return r * r / (4.0 * M_PI * y);
}

double dsigma_reflection(const ScatterConfig&, double phi) {
    return 0.5 * std::fabs(std::sin(0.5 * phi));
}

double dsigma_diffraction(const ScatterConfig& cfg, double phi) {
    const double c = std::cos(0.5 * cfg.s * phi + cfg.mu * M_PI);
    return 4.0 * smoothed_delta(0.5 * cfg.s, phi) * c * c;
}

double dsigma_ab_point(const ScatterConfig& cfg, double phi) {
    if (phi == 0.0) throw std::domain_error("dsigma_ab_point: phi = 0");
    const double sn = std::sin(cfg.mu * M_PI);
    const double sp = std::sin(0.5 * phi);
    return sn * sn / (2.0 * M_PI * cfg.s * sp * sp);
}

CrossSectionTable make_cross_section_table(const ScatterConfig& cfg,
                                           const std::vector<double>& angles) {
    CrossSectionTable t;
    t.angles = angles;
    t.dsigma1.reserve(angles.size());
    t.dsigma2.reserve(angles.size());
    t.dsigma_ab.reserve(angles.size());
    t.dsigma_total.reserve(angles.size());
    for (double phi : angles) {
        const double d1 = dsigma_diffraction(cfg, phi);
        const double d2 = dsigma_reflection(cfg, phi);
        t.dsigma1.push_back(d1);
        t.dsigma2.push_back(d2);
        t.dsigma_ab.push_back(phi == 0.0 ? std::numeric_limits<double>::infinity()
                                         : dsigma_ab_point(cfg, phi));
        t.dsigma_total.push_back(d1 + d2);
    }
    return t;
}

std::vector<Figure1Point> figure1_curve(const ScatterConfig& cfg,
                                        const std::vector<double>& abscissa) {
    if (cfg.s / (2.0 * M_PI) < 50.0)
        throw std::domain_error("figure1_curve: requires s/(2 pi) >= 50");
    const double norm = 4.0 * cfg.s / (2.0 * M_PI);
    std::vector<Figure1Point> out;
    out.reserve(abscissa.size());
    for (double x : abscissa) {
        const double phi = x * 2.0 * M_PI / cfg.s;
        const double val =
            (dsigma_diffraction(cfg, phi) + dsigma_reflection(cfg, phi)) / norm;
        out.push_back({x, val});
    }
    return out;
}

double figure1_peak_area(const ScatterConfig& cfg, double phi_halfwidth, double abs_tol) {
    if (cfg.s / (2.0 * M_PI) < 50.0)
        throw std::domain_error("figure1_peak_area: requires s/(2 pi) >= 50");
    auto f = [&](double phi) {
        return 0.25 * (dsigma_diffraction(cfg, phi) + dsigma_reflection(cfg, phi));
    };
    // reflection kink at phi = 0: integrate halves separately
    QuadResult left = integrate(f, -phi_halfwidth, 0.0, 0.5 * abs_tol, 1e-12);
    QuadResult right = integrate(f, 0.0, phi_halfwidth, 0.5 * abs_tol, 1e-12);
    if (!left.converged || !right.converged)
        throw std::runtime_error("figure1_peak_area: quadrature did not converge");
    return left.value + right.value;
}

ObservabilityWindows observability_windows(const ScatterConfig& cfg) {
    if (!(cfg.s > 10.0 * M_PI))
        throw std::domain_error("observability_windows: requires s > 10 pi");
    ObservabilityWindows w;
    w.phi_class_min = 10.0 * M_PI / cfg.s;
    w.phi_diff_max = 2.0 * std::asin(std::cbrt(10.0 / (M_PI * cfg.s)));
    w.background_level = std::cbrt(1.0 / cfg.s);
    return w;
}

}  // namespace vortex
