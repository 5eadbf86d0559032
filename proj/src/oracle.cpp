#include "vortex/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "vortex/amplitudes.hpp"
#include "vortex/channel.hpp"
#include "vortex/summation.hpp"

namespace vortex {

namespace {

const std::complex<double> kI(0.0, 1.0);

// Dormand-Prince 5(4) with PI-free standard controller, FSAL.
struct Dopri5 {
    double s2;  // s^2
    double m;   // nu^2 - 1/4
    double rtol;
    double rate;  // characteristic frequency for the error scale
    long long accepted = 0;

    void rhs(double x, const double y[2], double f[2]) const {
        f[0] = y[1];
        f[1] = -(s2 - m / (x * x)) * y[0];
    }

    // integrate y from x to x_end (x_end > x), h persists across calls
    void integrate_to(double& x, double y[2], double& h, double x_end) {
        static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static const double a21 = 1.0 / 5;
        static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
        static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static const double e1 = 35.0 / 384 - 5179.0 / 57600,
                            e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

        double k1[2], k2[2], k3[2], k4[2], k5[2], k6[2], k7[2], yt[2], y5[2];
        rhs(x, y, k1);
        while (x < x_end) {
            if (h > x_end - x) h = x_end - x;
            const double hh = h;
            for (int i = 0; i < 2; ++i) yt[i] = y[i] + hh * a21 * k1[i];
            rhs(x + c2 * hh, yt, k2);
            for (int i = 0; i < 2; ++i) yt[i] = y[i] + hh * (a31 * k1[i] + a32 * k2[i]);
            rhs(x + c3 * hh, yt, k3);
            for (int i = 0; i < 2; ++i)
                yt[i] = y[i] + hh * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            rhs(x + c4 * hh, yt, k4);
            for (int i = 0; i < 2; ++i)
                yt[i] = y[i] + hh * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            rhs(x + c5 * hh, yt, k5);
            for (int i = 0; i < 2; ++i)
                yt[i] = y[i] + hh * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                     a64 * k4[i] + a65 * k5[i]);
            rhs(x + hh, yt, k6);
            for (int i = 0; i < 2; ++i)
                y5[i] = y[i] + hh * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                     b6 * k6[i]);
            rhs(x + hh, y5, k7);

            const double err0 = hh * (e1 * k1[0] + e3 * k3[0] + e4 * k4[0] +
                                      e5 * k5[0] + e6 * k6[0] + e7 * k7[0]);
            const double err1 = hh * (e1 * k1[1] + e3 * k3[1] + e4 * k4[1] +
                                      e5 * k5[1] + e6 * k6[1] + e7 * k7[1]);
            const double aw = std::max(std::fabs(y[0]), std::fabs(y5[0]));
            const double adw = std::max(std::fabs(y[1]), std::fabs(y5[1]));
            const double sc0 = 1e-300 + rtol * std::max(aw, adw / rate);
            const double sc1 = 1e-300 + rtol * std::max(adw, aw * rate);
            const double en = std::sqrt(0.5 * ((err0 / sc0) * (err0 / sc0) +
                                               (err1 / sc1) * (err1 / sc1)));
            if (en <= 1.0) {
                x += hh;
                y[0] = y5[0];
                y[1] = y5[1];
                k1[0] = k7[0];
                k1[1] = k7[1];
                ++accepted;
                const double fac = std::min(5.0, std::max(0.2, 0.9 * std::pow(
                    en > 1e-30 ? en : 1e-30, -0.2)));
                h = hh * fac;
            } else {
                h = hh * std::max(0.2, 0.9 * std::pow(en, -0.2));
            }
            if (!(h > 1e-14 * std::max(1.0, x)))
                throw std::runtime_error("oracle: integrator step underflow");
        }
    }
};

// Liouville-Green basis phase: the exact antiderivative of
// k(x) = sqrt(s^2 - m/x^2); reproduces the standard large-argument phase
// s x - nu pi/2 - pi/4 including the (4 nu^2 - 1)/(8 s x) correction.
double lg_phase(double s, double m, double x) {
    const double core = std::sqrt(s * s * x * x - m);
    if (m >= 0.0) {
        const double rm = std::sqrt(m);
        return core + rm * std::asin(rm / (s * x));
    }
    const double q = std::sqrt(-m);
    return core - q * std::asinh(q / (s * x));
}

std::complex<double> extract_S(double s, double nu, double x, double w, double wp) {
    const double m = nu * nu - 0.25;
    const double k2 = s * s - m / (x * x);
    const double k = std::sqrt(k2);
    const double theta = lg_phase(s, m, x) - 0.5 * nu * M_PI - 0.25 * M_PI;
    const double kp = m / (x * x * x * k);
    const std::complex<double> hp_ = std::polar(1.0 / std::sqrt(k), theta);
    const std::complex<double> dhp = hp_ * std::complex<double>(-0.5 * kp / k, k);
    // w real: B = conj(A), so |S| = 1 up to rounding
    const std::complex<double> A = (w * std::conj(dhp) - wp * std::conj(hp_)) / (-2.0 * kI);
    const std::complex<double> B = (wp * hp_ - w * dhp) / (-2.0 * kI);
    return A / B;
}

}  // namespace

ExactChannelSolution solve_channel(const ScatterConfig& cfg, long long n,
                                   const OracleOptions& opts) {
    if (opts.match_radius_factor < 6.0)
        throw std::invalid_argument("solve_channel: match_radius_factor too small");
    const double s = cfg.s;
    const double nu = std::fabs(static_cast<double>(n) - cfg.mu);
    const double m = nu * nu - 0.25;

    ExactChannelSolution sol;
    sol.n = n;
    sol.nu = nu;

    const double x1 = std::max(opts.match_radius_factor * std::max(1.0, nu / s),
                               opts.min_match_phase / s);
    const double xr[3] = {x1, 1.5 * x1, 2.25 * x1};

    Dopri5 integ;
    integ.s2 = s * s;
    integ.m = m;
    integ.rtol = opts.rel_tol;
    integ.rate = std::max(s, std::sqrt(std::fabs(m)));

    double x = 1.0;
    double y[2] = {cfg.robin.sin_rho_pi, 0.5 * cfg.robin.sin_rho_pi - cfg.robin.cos_rho_pi};
    double h = 1e-3 / integ.rate;

    double theta[3];
    std::complex<double> S3;
    for (int i = 0; i < 3; ++i) {
        integ.integrate_to(x, y, h, xr[i]);
        const std::complex<double> S = extract_S(s, nu, x, y[0], y[1]);
        theta[i] = std::arg(S);
        if (i == 2) S3 = S;
    }
    // unwrap against the first phase; basis differences are tiny
    theta[1] = theta[0] + std::remainder(theta[1] - theta[0], 2.0 * M_PI);
    theta[2] = theta[1] + std::remainder(theta[2] - theta[1], 2.0 * M_PI);

    // the basis truncation error in the extracted phase falls off as
    // c3/x^3 + c4/x^4; fit theta_inf + c3 u^3 + c4 u^4 through the three
    // radii and keep the outer-pair x^-3 extrapolant as a cross-check
    const double t12 = (xr[2] * xr[2] * xr[2] * theta[2] - xr[1] * xr[1] * xr[1] * theta[1]) /
                       (xr[2] * xr[2] * xr[2] - xr[1] * xr[1] * xr[1]);
    double a[3][4];
    for (int i = 0; i < 3; ++i) {
        const double u = 1.0 / xr[i];
        a[i][0] = 1.0;
        a[i][1] = u * u * u;
        a[i][2] = u * u * u * u;
        a[i][3] = theta[i];
    }
    for (int col = 2; col >= 1; --col) {
        for (int i = 0; i < col; ++i) {
            const double f = a[i][col] / a[col][col];
            for (int j = 0; j < 4; ++j) a[i][j] -= f * a[col][j];
        }
    }
    const double t_fit = a[0][3] / a[0][0];

    sol.S = std::polar(std::abs(S3), t_fit);
    sol.delta = 0.5 * std::remainder(t_fit, 2.0 * M_PI);
    sol.unitarity_defect = std::fabs(std::abs(S3) - 1.0);
    sol.match_residual = std::fabs(t_fit - t12);
    sol.steps = integ.accepted;
    return sol;
}

std::vector<ExactChannelSolution> solve_channels(const ScatterConfig& cfg, double nu_max,
                                                 const OracleOptions& opts) {
    const long long n_lo = static_cast<long long>(std::ceil(cfg.mu - nu_max));
    const long long n_hi = static_cast<long long>(std::floor(cfg.mu + nu_max));
    const size_t count = static_cast<size_t>(n_hi - n_lo + 1);
    std::vector<ExactChannelSolution> out(count);

    unsigned nthreads = opts.threads > 0 ? static_cast<unsigned>(opts.threads)
                                         : std::thread::hardware_concurrency();
    nthreads = std::max(1u, std::min(nthreads, 16u));
    if (nthreads == 1 || count < 4) {
        for (size_t i = 0; i < count; ++i)
            out[i] = solve_channel(cfg, n_lo + static_cast<long long>(i), opts);
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::atomic<bool> failed{false};
    for (unsigned t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    out[i] = solve_channel(cfg, n_lo + static_cast<long long>(i), opts);
                } catch (...) {
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load()) throw std::runtime_error("solve_channels: a channel solve failed");
    return out;
}

ExactAmplitude exact_amplitude_from(const ScatterConfig& cfg,
                                    const std::vector<ExactChannelSolution>& channels,
                                    double phi) {
    if (phi == 0.0) throw std::domain_error("exact_amplitude: phi = 0");
    // ascending nu, smaller n first on ties
    std::vector<size_t> order(channels.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (channels[a].nu != channels[b].nu) return channels[a].nu < channels[b].nu;
        return channels[a].n < channels[b].n;
    });

    double nu_max = 0.0;
    for (const auto& c : channels) nu_max = std::max(nu_max, c.nu);

    const double pref = 1.0 / std::sqrt(2.0 * M_PI * cfg.s);
    ComplexSum acc;
    ComplexSum outer;  // contribution of the outermost decade in nu
    for (size_t idx : order) {
        const auto& c = channels[idx];
        const double theta = static_cast<double>(c.n) * phi +
                             (std::fabs(static_cast<double>(c.n)) - c.nu) * M_PI;
        const std::complex<double> term = std::polar(1.0, theta) * (c.S - 1.0);
        acc.add(term);
        if (c.nu > 0.9 * nu_max) outer.add(term);
    }
    ExactAmplitude out;
    const std::complex<double> fc = -kI * pref * acc.value();
    out.value = f0_amplitude(cfg, phi) + fc;
    out.truncation_warning =
        std::abs(outer.value()) * pref > 1e-8 * std::max(1e-300, std::abs(out.value));
    return out;
}

ExactAmplitude exact_amplitude(const ScatterConfig& cfg, double phi, double nu_max,
                               const OracleOptions& opts) {
    const double cover = cfg.s + 10.0 * std::cbrt(cfg.s);
    if (nu_max < cover)
        throw std::invalid_argument("exact_amplitude: nu_max must cover s + 10 s^(1/3)");
    return exact_amplitude_from(cfg, solve_channels(cfg, nu_max, opts), phi);
}

WkbComparison compare_wkb(const ScatterConfig& cfg, double nu_cut_frac,
                          const OracleOptions& opts) {
    WkbComparison cmp;
    const double nu_cut = nu_cut_frac * cfg.s;
    std::vector<ExactChannelSolution> sols = solve_channels(cfg, nu_cut, opts);
    double sum = 0.0;
    for (const auto& sol : sols) {
        const std::complex<double> wkb =
            -kI * reflection_coeff_nu(cfg.s, sol.nu, cfg.robin);
        const double err =
            std::fabs(std::remainder(std::arg(sol.S) - std::arg(wkb), 2.0 * M_PI));
        cmp.channels.push_back({sol.n, sol.nu, err});
        sum += err;
        if (err > cmp.max_error) {
            cmp.max_error = err;
            cmp.argmax_n = sol.n;
        }
    }
    cmp.mean_error = cmp.channels.empty() ? 0.0 : sum / cmp.channels.size();
    return cmp;
}

}  // namespace vortex
