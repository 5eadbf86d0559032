#include "vortex/channel.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace vortex {

namespace {
constexpr double kTurningSlack = 1e-14;
}

double radial_momentum(const ScatterConfig& cfg, const Channel& ch, double x) {
    if (x < ch.xt - kTurningSlack)
        throw std::domain_error("radial_momentum: x below turning point");
    const double t = ch.nu / (cfg.s * x);
    const double v = 1.0 - t * t;
    return std::sqrt(v > 0.0 ? v : 0.0);
}

double evanescent_momentum(const ScatterConfig& cfg, const Channel& ch, double x) {
    if (x <= 0.0)
        throw std::domain_error("evanescent_momentum: x must be positive");
    if (x > ch.xt + kTurningSlack || ch.nu == 0.0)
        throw std::domain_error("evanescent_momentum: x above turning point");
    const double t = ch.nu / (cfg.s * x);
    const double v = t * t - 1.0;
    return std::sqrt(v > 0.0 ? v : 0.0);
}

double action_xi_nu(double s, double nu) {
    if (nu > s) throw std::domain_error("action_xi: evanescent channel");
    const double arg = std::min(nu / s, 1.0);
    const double rad = s * s - nu * nu;
    return std::sqrt(rad > 0.0 ? rad : 0.0) - nu * std::acos(arg);
}

double action_xi(const ScatterConfig& cfg, const Channel& ch) {
    if (ch.regime != Regime::Propagating)
        throw std::domain_error("action_xi: evanescent channel");
    return action_xi_nu(cfg.s, ch.nu);
}

double evanescent_action_nu(double s, double nu) {
    if (nu <= s) throw std::domain_error("evanescent_action: propagating channel");
    return std::sqrt(nu * nu - s * s) - nu * std::acosh(nu / s);
}

double evanescent_action(const ScatterConfig& cfg, const Channel& ch) {
    if (ch.regime != Regime::Evanescent)
        throw std::domain_error("evanescent_action: propagating channel");
    return evanescent_action_nu(cfg.s, ch.nu);
}

OmegaResult omega_nu(double s, double nu, const RobinBc& bc) {
    OmegaResult r;
    const double rad = s * s - nu * nu;
    if (rad <= 0.0) {
        r.singular = true;
        return r;
    }
    const double num = bc.sin_rho_pi * std::sqrt(rad);
    const double den = bc.cos_rho_pi - 0.5 * bc.sin_rho_pi * s * s / rad;
    r.value = std::atan2(num, den);
    return r;
}

OmegaResult omega(const ScatterConfig& cfg, const Channel& ch) {
    if (ch.regime != Regime::Propagating)
        throw std::domain_error("omega: evanescent channel");
    return omega_nu(cfg.s, ch.nu, cfg.robin);
}

std::complex<double> reflection_coeff_nu(double s, double nu, const RobinBc& bc) {
    if (nu < s) {
        const double phase = -2.0 * (action_xi_nu(s, nu) + omega_nu(s, nu, bc).value);
        return std::polar(1.0, phase);
    }
    if (nu == s) {
        // evanescent-side limit: E -> 0, D -> 1
        return 1.0 / std::complex<double>(1.0, 0.5);
    }
    const double E = evanescent_action_nu(s, nu);
    const double e2 = std::exp(2.0 * E);  // <= 1, underflows harmlessly to 0
    const double B = std::sqrt(nu * nu - s * s);
    const double G = 0.5 * s * s / (nu * nu - s * s);
    const double D = (bc.cos_rho_pi + bc.sin_rho_pi * (G - B)) /
                     (bc.cos_rho_pi + bc.sin_rho_pi * (G + B));
    return e2 / std::complex<double>(D, 0.5 * e2);
}

ReflectionCoeff reflection_coeff(const ScatterConfig& cfg, const Channel& ch) {
    return {reflection_coeff_nu(cfg.s, ch.nu, cfg.robin)};
}

double wkb_phase_shift_at(const ScatterConfig& cfg, double n_continuous) {
    const double d = n_continuous - cfg.mu;
    const double nu = std::fabs(d);
    if (nu > cfg.s)
        throw std::domain_error("wkb_phase_shift: evanescent channel");
    return 0.5 * cfg.mu * sign_plus(d) * M_PI - action_xi_nu(cfg.s, nu) - 0.25 * M_PI;
}

double wkb_phase_shift(const ScatterConfig& cfg, const Channel& ch) {
    if (ch.regime != Regime::Propagating)
        throw std::domain_error("wkb_phase_shift: evanescent channel");
    return wkb_phase_shift_at(cfg, static_cast<double>(ch.n));
}

double wkb_validity_ratio(double s, double nu, double x) {
    const double a = s * s * x * x;
    const double d = std::fabs(a - nu * nu);
    return a / (d * std::sqrt(d));
}

namespace {

// Fixed-length truncated Taylor series in (x - x0); enough orders for the
// l <= 4 recursion, which consumes one order per differentiation.
constexpr int kOrd = 8;

struct Series {
    std::array<double, kOrd> c{};

    static Series constant(double v) {
        Series s;
        s.c[0] = v;
        return s;
    }
    Series operator+(const Series& o) const {
        Series r;
        for (int i = 0; i < kOrd; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Series operator-(const Series& o) const {
        Series r;
        for (int i = 0; i < kOrd; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    Series operator*(const Series& o) const {
        Series r;
        for (int i = 0; i < kOrd; ++i)
            for (int j = 0; i + j < kOrd; ++j) r.c[i + j] += c[i] * o.c[j];
        return r;
    }
    Series operator*(double v) const {
        Series r;
        for (int i = 0; i < kOrd; ++i) r.c[i] = c[i] * v;
        return r;
    }
    Series recip() const {
        Series r;
        r.c[0] = 1.0 / c[0];
        for (int k = 1; k < kOrd; ++k) {
            double acc = 0.0;
            for (int j = 1; j <= k; ++j) acc += c[j] * r.c[k - j];
            r.c[k] = -acc / c[0];
        }
        return r;
    }
    Series sqrt_() const {
        Series r;
        r.c[0] = std::sqrt(c[0]);
        for (int k = 1; k < kOrd; ++k) {
            double acc = 0.0;
            for (int j = 1; j < k; ++j) acc += r.c[j] * r.c[k - j];
            r.c[k] = (c[k] - acc) / (2.0 * r.c[0]);
        }
        return r;
    }
    Series deriv() const {
        Series r;
        for (int i = 0; i + 1 < kOrd; ++i) r.c[i] = (i + 1) * c[i + 1];
        return r;
    }
};

}  // namespace

std::vector<double> wkb_series_terms(const ScatterConfig& cfg, const Channel& ch,
                                     double x, int l_max) {
    if (l_max < 0 || l_max > 4)
        throw std::invalid_argument("wkb_series_terms: l_max must be in [0,4]");
    if (x <= ch.xt + 1e-3)
        throw std::domain_error("wkb_series_terms: too close to the turning point");

    const double s = cfg.s;
    // x(t) = x0 + t, 1/x as a geometric series
    Series xs;
    xs.c[0] = x;
    xs.c[1] = 1.0;
    Series inv_x = xs.recip();
    Series p2 = Series::constant(s * s) - inv_x * inv_x * (ch.nu * ch.nu);
    if (p2.c[0] <= 0.0)
        throw std::domain_error("wkb_series_terms: x not in the oscillatory region");

    // D[l] = d/dx Sigma^(l) as series; outgoing (+) branch for l = 0.
    std::vector<Series> D;
    D.push_back(p2.sqrt_());
    Series inv_2D0 = (D[0] * 2.0).recip();
    auto radial_laplacian = [&](const Series& d) {
        return d.deriv() + d * inv_x;  // Delta_r f given f' as a series
    };
    for (int l = 1; l <= l_max; ++l) {
        Series rhs = radial_laplacian(D[l - 1]) * (-s);
        if (l % 2 == 0) {
            const int half = l / 2;
            for (int lp = 1; lp <= half - 1; ++lp)
                rhs = rhs - D[lp] * D[l - lp] * 2.0;
            rhs = rhs - D[half] * D[half];
        } else {
            const int half = (l - 1) / 2;
            for (int lp = 1; lp <= half; ++lp)
                rhs = rhs - D[lp] * D[l - lp] * 2.0;
        }
        D.push_back(rhs * inv_2D0);
    }
    std::vector<double> out(l_max + 1);
    for (int l = 0; l <= l_max; ++l) out[l] = D[l].c[0];
    return out;
}

}  // namespace vortex
