#include "vortex/amplitudes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vortex/channel.hpp"
#include "vortex/quadrature.hpp"
#include "vortex/summation.hpp"

namespace vortex {

namespace {
const std::complex<double> kI(0.0, 1.0);

inline double prefactor(double s) { return 1.0 / std::sqrt(2.0 * M_PI * s); }

// sum_{n=a}^{b} e^{i n phi}
std::complex<double> geometric_block(long long a, long long b, double phi) {
    const long long cnt = b - a + 1;
    if (cnt <= 0) return {0.0, 0.0};
    if (phi == 0.0) return {static_cast<double>(cnt), 0.0};
    const double centre = 0.5 * static_cast<double>(a + b) * phi;
    return std::polar(1.0, centre) *
           (std::sin(0.5 * static_cast<double>(cnt) * phi) / std::sin(0.5 * phi));
}

}  // namespace

SumPlan propagating_plan(const ScatterConfig& cfg) {
    SumPlan p;
    p.n_min = -static_cast<long long>(std::floor(cfg.s - cfg.mu));
    p.n_max = static_cast<long long>(std::floor(cfg.s + cfg.mu));
    return p;
}

std::vector<long long> ordered_propagating_indices(const ScatterConfig& cfg) {
    const SumPlan plan = propagating_plan(cfg);
    std::vector<long long> out;
    out.reserve(static_cast<size_t>(plan.n_max - plan.n_min + 1));
    // two-pointer merge outward from mu, ascending nu, smaller n first on ties
    long long lo = cfg.mu_floor;
    long long hi = cfg.mu_floor + 1;
    while (lo >= plan.n_min || hi <= plan.n_max) {
        const double nu_lo = lo >= plan.n_min ? cfg.mu - static_cast<double>(lo) : -1.0;
        const double nu_hi = hi <= plan.n_max ? static_cast<double>(hi) - cfg.mu : -1.0;
        const bool take_lo = (nu_hi < 0.0) || (nu_lo >= 0.0 && nu_lo <= nu_hi);
        if (take_lo) {
            out.push_back(lo);
            --lo;
        } else {
            out.push_back(hi);
            ++hi;
        }
    }
    return out;
}

std::complex<double> f0_amplitude(const ScatterConfig& cfg, double phi) {
    if (phi == 0.0) throw std::domain_error("f0_amplitude: phi = 0");
    return kI * std::sin(cfg.mu * M_PI) * prefactor(cfg.s) *
           std::polar(1.0, (static_cast<double>(cfg.mu_floor) + 0.5) * phi) /
           std::sin(0.5 * phi);
}

std::complex<double> incident_wave_phase(const ScatterConfig& cfg, double phi) {
    return std::polar(1.0, cfg.mu * (phi - sign_plus(phi) * M_PI));
}

std::complex<double> f1_direct(const ScatterConfig& cfg, double phi) {
    ComplexSum acc;
    for (long long n : ordered_propagating_indices(cfg)) {
        const double nu = std::fabs(static_cast<double>(n) - cfg.mu);
        const double theta = static_cast<double>(n) * phi +
                             (std::fabs(static_cast<double>(n)) - nu) * M_PI;
        acc.add(std::polar(1.0, theta));
    }
    return kI * prefactor(cfg.s) * acc.value();
}

F1Closed f1_closed(const ScatterConfig& cfg, double phi) {
    const long long m = cfg.mu_floor;
    const long long sp = static_cast<long long>(std::floor(cfg.s + cfg.mu));
    const long long sm = static_cast<long long>(std::floor(cfg.s - cfg.mu));
    const long long lower = m + sm + 1;  // count of n in [-sm, m]
    const long long upper = sp - m;      // count of n in [m+1, sp]

    F1Closed out;
    if (lower == upper)
        out.branch = 0;
    else if (lower == upper + 1)
        out.branch = 1;
    else if (upper == lower + 1)
        out.branch = 2;
    else
        throw std::logic_error("f1_closed: integer-part bookkeeping violated");

    const std::complex<double> em = std::polar(1.0, -cfg.mu * M_PI);
    const std::complex<double> ep = std::polar(1.0, cfg.mu * M_PI);
    out.value = kI * prefactor(cfg.s) *
                (em * geometric_block(-sm, m, phi) + ep * geometric_block(m + 1, sp, phi));
    return out;
}

std::complex<double> f2_direct(const ScatterConfig& cfg, double phi) {
    ComplexSum acc;
    for (long long n : ordered_propagating_indices(cfg)) {
        const Channel ch = make_channel(cfg, n);
        const std::complex<double> c = reflection_coeff(cfg, ch).value;
        const double theta = static_cast<double>(n) * phi +
                             cfg.mu * sign_plus(static_cast<double>(n) - cfg.mu) * M_PI;
        acc.add(std::polar(1.0, theta) * c);
    }
    return -prefactor(cfg.s) * acc.value();
}

std::complex<double> f2_closed(const ScatterConfig& cfg, double phi) {
    if (phi == 0.0) throw std::domain_error("f2_closed: phi = 0");
    const double a = std::fabs(std::sin(0.5 * phi));
    const double sin2 = std::sin(0.5 * phi) * std::sin(0.5 * phi);
    // same two-argument arctangent convention as omega, evaluated at the
    // stationary channel nu0 = s cos(phi/2)
    const double w = std::atan2(2.0 * cfg.robin.sin_rho_pi * cfg.s * a * sin2,
                                2.0 * cfg.robin.cos_rho_pi * sin2 - cfg.robin.sin_rho_pi);
    const double theta = -2.0 * cfg.s * a + cfg.mu * (phi - sign_plus(phi) * M_PI) -
                         0.25 * M_PI - 2.0 * w;
    return -std::sqrt(0.5 * a) * std::polar(1.0, theta);
}

std::complex<double> f3_direct(const ScatterConfig& cfg, double phi, const SumPlan& plan) {
    const double pref = prefactor(cfg.s);
    long long hi = static_cast<long long>(std::floor(cfg.s + cfg.mu)) + 1;
    long long lo = -static_cast<long long>(std::floor(cfg.s - cfg.mu)) - 1;
    ComplexSum acc;
    int consec = 0;
    long long count = 0;
    while (consec < plan.tail_confirm) {
        const double nu_hi = static_cast<double>(hi) - cfg.mu;
        const double nu_lo = cfg.mu - static_cast<double>(lo);
        long long n;
        double nu;
        if (nu_hi <= nu_lo) {
            n = hi++;
            nu = nu_hi;
        } else {
            n = lo--;
            nu = nu_lo;
        }
        const std::complex<double> c = reflection_coeff_nu(cfg.s, nu, cfg.robin);
        const double theta = static_cast<double>(n) * phi +
                             cfg.mu * sign_plus(static_cast<double>(n) - cfg.mu) * M_PI;
        acc.add(std::polar(1.0, theta) * c);
        consec = (std::abs(c) * pref < plan.tail_tol) ? consec + 1 : 0;
        if (++count > 1000000)
            throw std::runtime_error("f3_direct: evanescent tail failed to converge");
    }
    return -pref * acc.value();
}

namespace {

// v*arccosh(v) - sqrt(v^2-1) at v = 1 + u; series near the turning point to
// avoid cancellation.
double tail_exponent(double u) {
    if (u < 3e-3)
        return (2.0 * std::sqrt(2.0) / 3.0) * u * std::sqrt(u) *
               (1.0 - u / 20.0 + 9.0 * u * u / 1120.0);
    const double v = 1.0 + u;
    return v * std::acosh(v) - std::sqrt(v * v - 1.0);
}

// Robin quotient of the tail integrand, scaled by w2 = v^2 - 1 to keep the
// Dirichlet limit and the v -> 1 endpoint finite.
double tail_quotient(double u, double s, const RobinBc& bc) {
    const double w2 = u * (u + 2.0);
    if (w2 == 0.0) return 1.0;
    const double w32 = w2 * std::sqrt(w2);
    const double num = bc.cos_rho_pi * w2 + bc.sin_rho_pi * (0.5 - s * w32);
    const double den = bc.cos_rho_pi * w2 + bc.sin_rho_pi * (0.5 + s * w32);
    if (den == 0.0) return 1.0;
    return num / den;
}

}  // namespace

ForwardF3 f3_forward_estimates(const ScatterConfig& cfg) {
    if (cfg.s < 10.0)
        throw std::domain_error("f3_forward_estimates: requires s >= 10");
    const double s = cfg.s;
    const RobinBc bc = cfg.robin;

    // v = 1 + t/(1-t); integrands die once 2 s g(v) ~ 60
    auto u_of_t = [](double t) { return t / (1.0 - t); };
    auto i1_t = [&](double t) {
        if (t >= 1.0) return 0.0;
        const double u = u_of_t(t);
        const double jac = 1.0 / ((1.0 - t) * (1.0 - t));
        const double q = tail_quotient(u, s, bc);
        const double twog = 2.0 * s * tail_exponent(u);
        if (twog > 350.0) return 0.0;
        return jac * 4.0 * q / (std::exp(-twog) + 4.0 * std::exp(twog) * q * q);
    };
    auto i2_t = [&](double t) {
        if (t >= 1.0) return 0.0;
        const double u = u_of_t(t);
        const double jac = 1.0 / ((1.0 - t) * (1.0 - t));
        const double q = tail_quotient(u, s, bc);
        const double fourg = 4.0 * s * tail_exponent(u);
        if (fourg > 700.0) return 0.0;
        return jac * 2.0 / (1.0 + std::exp(fourg) * 4.0 * q * q);
    };

    // split at the Laplace scale u ~ s^{-2/3}
    const double uL = std::pow(s, -2.0 / 3.0);
    const double t1 = uL / (1.0 + uL);
    const double t2 = 16.0 * uL / (1.0 + 16.0 * uL);

    ForwardF3 out;
    const double atol = 1e-14;
    QuadResult q1a = integrate(i1_t, 0.0, t1, atol, 1e-10);
    QuadResult q1b = integrate(i1_t, t1, t2, atol, 1e-10);
    QuadResult q1c = integrate(i1_t, t2, 1.0, atol, 1e-10);
    QuadResult q2a = integrate(i2_t, 0.0, t1, atol, 1e-10);
    QuadResult q2b = integrate(i2_t, t1, t2, atol, 1e-10);
    QuadResult q2c = integrate(i2_t, t2, 1.0, atol, 1e-10);
    out.i1_quad = q1a.value + q1b.value + q1c.value;
    out.i2_quad = q2a.value + q2b.value + q2c.value;
    out.quad_error = q1a.error + q1b.error + q1c.error + q2a.error + q2b.error + q2c.error;
    out.converged = q1a.converged && q1b.converged && q1c.converged && q2a.converged &&
                    q2b.converged && q2c.converged;
    if (!out.converged || out.quad_error > 1e-9 * std::max(std::fabs(out.i1_quad),
                                                           std::fabs(out.i2_quad)))
        out.converged = false;

    const double g23 = std::tgamma(2.0 / 3.0);
    out.i1_laplace_large_cot = g23 * std::pow(12.0 * s * s, -1.0 / 3.0);
    out.i2_laplace_large_cot = 0.25 * g23 * std::pow(6.0 * s * s, -1.0 / 3.0);
    out.i1_laplace_small_cot = -(1.0 / 3.0) * std::pow(2.0 * s, -2.0 / 3.0);
    out.i2_laplace_small_cot = (std::sqrt(M_PI) / 3.0) * std::pow(2.0 / (s * s), 1.0 / 3.0);
    out.f3_forward = -std::sqrt(2.0 / M_PI) * std::sqrt(s) * std::cos(cfg.mu * M_PI) *
                     std::complex<double>(out.i1_quad, -out.i2_quad);
    return out;
}

PoissonResult poisson_stationary_sum(const PhaseFunction& eta, double s_minus,
                                     double s_plus) {
    const double lo = -s_minus;
    const double hi = s_plus;
    if (!(hi > lo)) throw std::invalid_argument("poisson_stationary_sum: empty range");

    for (int i = 0; i < 32; ++i) {
        const double n = lo + (hi - lo) * (i + 0.5) / 32.0;
        if (!(eta.deriv2(n) < 0.0))
            throw std::domain_error("poisson_stationary_sum: concavity violated");
    }

    PoissonResult out;
    out.value = 0.5 * std::polar(1.0, eta.value(hi)) + 0.5 * std::polar(1.0, eta.value(lo));

    const int cells = 2048;
    std::vector<double> grid(cells + 1), dval(cells + 1);
    for (int i = 0; i <= cells; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / cells;
        dval[i] = eta.deriv(grid[i]);
    }
    const double dmin = *std::min_element(dval.begin(), dval.end());
    const double dmax = *std::max_element(dval.begin(), dval.end());
    const int lmin = static_cast<int>(std::floor(dmin / (2.0 * M_PI))) - 1;
    const int lmax = static_cast<int>(std::ceil(dmax / (2.0 * M_PI))) + 1;

    for (int l = lmin; l <= lmax; ++l) {
        const double target = 2.0 * M_PI * l;
        for (int i = 0; i < cells; ++i) {
            double fa = dval[i] - target;
            double fb = dval[i + 1] - target;
            // sign convention sign(0) = +, so a root on a grid node counts once
            const bool sa = fa >= 0.0;
            const bool sb = fb >= 0.0;
            if (sa == sb) continue;
            double a = grid[i], b = grid[i + 1];
            for (int it = 0; it < 120; ++it) {
                const double c = 0.5 * (a + b);
                const double fc = eta.deriv(c) - target;
                if ((fc >= 0.0) == sa) {
                    a = c;
                    fa = fc;
                } else {
                    b = c;
                    fb = fc;
                }
            }
            const double nj = 0.5 * (a + b);
            if (std::fabs(eta.deriv(nj) - target) > 1e-6) continue;  // jump, not a root
            bool dup = false;
            for (const auto& p : out.points)
                if (p.l == l && std::fabs(p.n - nj) < 1e-9 * (hi - lo)) dup = true;
            if (dup) continue;
            const double d2 = eta.deriv2(nj);
            out.points.push_back({nj, l, d2});
            if (std::min(nj - lo, hi - nj) < 1e-6 * (hi - lo)) out.endpoint_flag = true;
            out.value += std::polar(1.0, eta.value(nj) - target * nj) *
                         std::sqrt(2.0 * M_PI / (-d2)) * std::polar(1.0, -0.25 * M_PI);
        }
    }
    return out;
}

}  // namespace vortex
