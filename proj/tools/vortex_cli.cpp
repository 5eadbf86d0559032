// vortex-scatter: command-line front end for the vortex scattering library.
// All numeric output is deterministic: fixed 17-significant-digit formatting,
// '\n' line endings, fixed evaluation order.

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vortex/amplitudes.hpp"
#include "vortex/channel.hpp"
#include "vortex/classical.hpp"
#include "vortex/oracle.hpp"
#include "vortex/quadrature.hpp"
#include "vortex/xsec.hpp"

namespace {

using namespace vortex;

std::string num17(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

struct CommonSpec {
    double s = 2.0 * M_PI * 100.0;
    double mu = 0.0;
    double rho = 0.0;
    double energy_ev = 0.0;
    double radius_um = 0.0;
    double phi_min = -3.13;
    double phi_max = 3.13;
    int phi_count = 1001;
    std::string out;
    std::string method = "direct";
    double tail_tol = 1e-14;
    double oracle_tol = 1e-11;

    // electron constants for the physical-unit conversion (SI)
    static constexpr double kElectronMassKg = 9.1093837015e-31;
    static constexpr double kElectronVoltJ = 1.602176634e-19;
    static constexpr double kHbarJs = 1.054571817e-34;

    ScatterConfig make_config() const {
        double s_eff = s;
        if (energy_ev > 0.0 || radius_um > 0.0) {
            if (!(energy_ev > 0.0) || !(radius_um > 0.0))
                throw CLI::ValidationError(
                    "--energy-ev and --radius-um must be given together");
            const double p = std::sqrt(2.0 * kElectronMassKg * energy_ev * kElectronVoltJ);
            s_eff = p * radius_um * 1e-6 / kHbarJs;
        }
        if (!(rho >= 0.0 && rho < 1.0))
            throw CLI::ValidationError("--rho must lie in [0, 1)");
        if (!(s_eff > 0.0)) throw CLI::ValidationError("--s must be positive");
        return ScatterConfig(s_eff, mu, RobinBc::from_rho(rho));
    }

    std::vector<double> make_grid() const {
        if (phi_count < 2) throw CLI::ValidationError("--phi-count must be >= 2");
        if (!(phi_min < phi_max) || !(phi_min > -M_PI) || !(phi_max < M_PI))
            throw CLI::ValidationError("angle grid must be strictly inside (-pi, pi)");
        std::vector<double> grid(static_cast<size_t>(phi_count));
        for (int i = 0; i < phi_count; ++i)
            grid[static_cast<size_t>(i)] =
                phi_min + (phi_max - phi_min) * static_cast<double>(i) / (phi_count - 1);
        return grid;
    }

    void validate_tols() const {
        if (!(tail_tol > 0.0) || !(oracle_tol > 0.0))
            throw CLI::ValidationError("tolerances must be positive");
    }

    std::string runspec(const std::string& cmd, const ScatterConfig& cfg) const {
        std::string line = "# vortex-scatter " + cmd + " s=" + num17(cfg.s) +
                           " mu=" + num17(cfg.mu) + " rho=" + num17(rho) +
                           " phi-min=" + num17(phi_min) + " phi-max=" + num17(phi_max) +
                           " phi-count=" + std::to_string(phi_count) + " method=" + method +
                           " tail-tol=" + num17(tail_tol) +
                           " oracle-tol=" + num17(oracle_tol);
        return line;
    }
};

void write_out(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output path: " + path);
    f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

void add_common(CLI::App* cmd, CommonSpec& spec) {
    cmd->add_option("--s", spec.s, "size parameter p r_c / hbar");
    cmd->add_option("--mu", spec.mu, "reduced flux e Phi / (2 pi hbar c)");
    cmd->add_option("--rho", spec.rho, "Robin parameter in [0,1); 0 Dirichlet, 0.5 Neumann");
    cmd->add_option("--energy-ev", spec.energy_ev,
                    "electron kinetic energy in eV (with --radius-um, overrides --s)");
    cmd->add_option("--radius-um", spec.radius_um, "vortex radius in micrometres");
    cmd->add_option("--phi-min", spec.phi_min, "grid start, exclusive of -pi");
    cmd->add_option("--phi-max", spec.phi_max, "grid end, exclusive of pi");
    cmd->add_option("--phi-count", spec.phi_count, "number of grid angles (>= 2)");
    cmd->add_option("--out", spec.out, "output path (default: stdout)");
    cmd->add_option("--method", spec.method, "direct|closed for f1/f2")
        ->check(CLI::IsMember({"direct", "closed"}));
    cmd->add_option("--tail-tol", spec.tail_tol, "evanescent tail stop tolerance");
    cmd->add_option("--oracle-tol", spec.oracle_tol, "oracle integrator tolerance");
}

// ---------------------------------------------------------------- xsec ----

int cmd_xsec(const CommonSpec& spec) {
    spec.validate_tols();
    const ScatterConfig cfg = spec.make_config();
    const std::vector<double> grid = spec.make_grid();
    const CrossSectionTable t = make_cross_section_table(cfg, grid);
    std::string out = spec.runspec("xsec", cfg) + "\n";
    out += "phi,dsigma1,dsigma2,dsigma_total,dsigma_ab_point\n";
    for (size_t i = 0; i < grid.size(); ++i) {
        out += num17(t.angles[i]) + ',' + num17(t.dsigma1[i]) + ',' + num17(t.dsigma2[i]) +
               ',' + num17(t.dsigma_total[i]) + ',' + num17(t.dsigma_ab[i]) + '\n';
    }
    write_out(spec.out, out);
    return 0;
}

// -------------------------------------------------------------- figure1 ----

int cmd_figure1(const CommonSpec& spec) {
    spec.validate_tols();
    const ScatterConfig cfg = spec.make_config();
    if (cfg.s / (2.0 * M_PI) < 50.0)
        throw CLI::ValidationError("figure1 requires s/(2 pi) >= 50");
    ScatterConfig ci(cfg.s, 0.0, cfg.robin);
    ScatterConfig ch(cfg.s, 0.5, cfg.robin);

    const int count = spec.phi_count;
    std::vector<double> xs(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        xs[static_cast<size_t>(i)] = -3.0 + 6.0 * static_cast<double>(i) / (count - 1);
    const auto curve_i = figure1_curve(ci, xs);
    const auto curve_h = figure1_curve(ch, xs);

    std::string out = spec.runspec("figure1", cfg) + "\n";
    out += "# abscissa: phi*s/(2*pi) on [-3,3]; ordinate: (dsigma1+dsigma2)/(4*s/(2*pi)),"
           " i.e. (dsigma/dz dphi) / ((p r_c/h) dsigma/dz) with dsigma/dz = 4 r_c\n";
    out += "x,ordinate_integer_flux,ordinate_half_integer_flux\n";
    for (int i = 0; i < count; ++i)
        out += num17(xs[static_cast<size_t>(i)]) + ',' +
               num17(curve_i[static_cast<size_t>(i)].ordinate) + ',' +
               num17(curve_h[static_cast<size_t>(i)].ordinate) + '\n';
    write_out(spec.out, out);

    const double a_int = figure1_peak_area(ci, M_PI / cfg.s, 1e-9);
    const double a_half = figure1_peak_area(ch, 2.0 * M_PI / cfg.s, 1e-9);
    std::printf("central peak |phi| < pi/s (integer flux): area = %s (quad tol 1e-9)\n",
                num17(a_int).c_str());
    std::printf("two peaks |phi| < 2 pi/s (half-integer flux): area = %s (quad tol 1e-9)\n",
                num17(a_half).c_str());
    return 0;
}

// --------------------------------------------------------- phase-shifts ----

int cmd_phase_shifts(const CommonSpec& spec) {
    spec.validate_tols();
    const ScatterConfig cfg = spec.make_config();
    std::string out = spec.runspec("phase-shifts", cfg) + "\n";
    out += "n,nu,regime,delta_wkb,re_Cn,im_Cn,abs_Cn\n";

    // propagating block plus evanescent rows until the tail rule fires
    SumPlan plan = propagating_plan(cfg);
    plan.tail_tol = spec.tail_tol;
    std::vector<long long> rows;
    for (long long n = plan.n_min; n <= plan.n_max; ++n) rows.push_back(n);
    const double pref = 1.0 / std::sqrt(2.0 * M_PI * cfg.s);
    for (int side = 0; side < 2; ++side) {
        int consec = 0;
        long long n = side == 0 ? plan.n_max + 1 : plan.n_min - 1;
        while (consec < plan.tail_confirm) {
            rows.push_back(n);
            const Channel c = make_channel(cfg, n);
            const double a = std::abs(reflection_coeff(cfg, c).value);
            consec = (a * pref < plan.tail_tol) ? consec + 1 : 0;
            n += side == 0 ? 1 : -1;
        }
    }
    std::sort(rows.begin(), rows.end());
    for (long long n : rows) {
        const Channel c = make_channel(cfg, n);
        const std::complex<double> r = reflection_coeff(cfg, c).value;
        const bool prop = c.regime == Regime::Propagating;
        const double delta = (prop && c.nu < cfg.s) ? wkb_phase_shift(cfg, c)
                                                    : std::nan("");
        out += std::to_string(n) + ',' + num17(c.nu) + ',' +
               (prop ? "propagating" : "evanescent") + ',' + num17(delta) + ',' +
               num17(r.real()) + ',' + num17(r.imag()) + ',' + num17(std::abs(r)) + '\n';
    }
    write_out(spec.out, out);
    return 0;
}

// -------------------------------------------------------- oracle-compare ----

int cmd_oracle_compare(const CommonSpec& spec) {
    spec.validate_tols();
    const ScatterConfig cfg = spec.make_config();
    if (cfg.s < 50.0 || cfg.s > 500.0)
        throw CLI::ValidationError("oracle-compare requires 50 <= s <= 500");
    OracleOptions opts;
    opts.rel_tol = spec.oracle_tol;

    const ScatterConfig cfg2(2.0 * cfg.s, cfg.mu, cfg.robin);
    const WkbComparison a = compare_wkb(cfg, 0.9, opts);
    const WkbComparison b = compare_wkb(cfg2, 0.9, opts);

    std::string out = spec.runspec("oracle-compare", cfg) + "\n";
    out += "s,n,nu,phase_error\n";
    for (const auto& ch : a.channels)
        out += num17(cfg.s) + ',' + std::to_string(ch.n) + ',' + num17(ch.nu) + ',' +
               num17(ch.error) + '\n';
    for (const auto& ch : b.channels)
        out += num17(cfg2.s) + ',' + std::to_string(ch.n) + ',' + num17(ch.nu) + ',' +
               num17(ch.error) + '\n';
    write_out(spec.out, out);

    // amplitude-level agreement over the reflection window
    const double numax = cfg.s + 10.0 * std::cbrt(cfg.s);
    const auto sols = solve_channels(cfg, numax, opts);
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < 201; ++i) {
        const double phi = 0.25 * M_PI + 0.5 * M_PI * i / 200.0;
        lhs += std::norm(exact_amplitude_from(cfg, sols, phi).value);
        rhs += dsigma_diffraction(cfg, phi) + dsigma_reflection(cfg, phi);
    }
    const double amp_dev = std::fabs(lhs - rhs) / rhs;

    const double ratio = b.max_error / a.max_error;
    std::printf("max phase error at s=%s: %s rad (channel n=%lld)\n", num17(cfg.s).c_str(),
                num17(a.max_error).c_str(), a.argmax_n);
    std::printf("max phase error at s=%s: %s rad (channel n=%lld)\n", num17(cfg2.s).c_str(),
                num17(b.max_error).c_str(), b.argmax_n);
    std::printf("error ratio (2s vs s): %s (O(1/s) convergence wants <= 0.7)\n",
                num17(ratio).c_str());
    std::printf("window-averaged |f_exact|^2 vs dsigma1+dsigma2: rel dev %s\n",
                num17(amp_dev).c_str());
    if (!(ratio <= 0.7)) {
        std::fprintf(stderr, "error: 1/s convergence assertion failed (ratio %s)\n",
                     num17(ratio).c_str());
        return 1;
    }
    return 0;
}

// ------------------------------------------------------------- classical ----

int cmd_classical(const CommonSpec& spec, double b_min, double b_max, int b_count,
                  double mu_prime, const std::string& traj_out) {
    spec.validate_tols();
    if (b_count < 1) throw CLI::ValidationError("--b-count must be >= 1");
    if (!(b_min > -1.0) || !(b_max < 1.0) || !(b_min <= b_max))
        throw CLI::ValidationError("impact-parameter grid must lie inside (-1, 1)");
    std::string out = "# vortex-scatter classical b-min=" + num17(b_min) +
                      " b-max=" + num17(b_max) + " b-count=" + std::to_string(b_count) +
                      " mu-prime=" + num17(mu_prime) + "\n";
    out += "b,deflection,cross_section\n";
    std::string traj;
    if (!traj_out.empty()) traj = "b,r,theta,t,z,p_r\n";
    for (int i = 0; i < b_count; ++i) {
        const double b =
            b_count == 1 ? b_min
                         : b_min + (b_max - b_min) * static_cast<double>(i) / (b_count - 1);
        const double phi = b == 0.0 ? M_PI : deflection_angle(b);
        out += num17(b) + ',' + num17(phi) + ',' + num17(classical_cross_section(phi)) + '\n';
        if (!traj_out.empty()) {
            const ClassicalOrbit orb = trajectory(b, mu_prime, 200);
            for (const auto& smp : orb.samples)
                traj += num17(b) + ',' + num17(smp.r) + ',' + num17(smp.theta) + ',' +
                        num17(smp.t) + ',' + num17(smp.z) + ',' + num17(smp.p_r) + '\n';
        }
    }
    write_out(spec.out, out);
    if (!traj_out.empty()) write_out(traj_out, traj);
    return 0;
}

// ------------------------------------------------------------------ amps ----

int cmd_amps(const CommonSpec& spec) {
    spec.validate_tols();
    const ScatterConfig cfg = spec.make_config();
    const std::vector<double> grid = spec.make_grid();
    const bool closed = spec.method == "closed";
    SumPlan plan;
    plan.tail_tol = spec.tail_tol;

    std::string out = spec.runspec("amps", cfg) + "\n";
    out += "phi,re_f0,im_f0,re_f1,im_f1,re_f2,im_f2,re_f3,im_f3\n";
    const double qnan = std::nan("");
    for (double phi : grid) {
        const std::complex<double> v0 =
            phi == 0.0 ? std::complex<double>(qnan, qnan) : f0_amplitude(cfg, phi);
        const std::complex<double> v1 = closed ? f1_closed(cfg, phi).value : f1_direct(cfg, phi);
        const std::complex<double> v2 = closed
                                            ? (phi == 0.0 ? std::complex<double>(qnan, qnan)
                                                          : f2_closed(cfg, phi))
                                            : f2_direct(cfg, phi);
        const std::complex<double> v3 = f3_direct(cfg, phi, plan);
        out += num17(phi) + ',' + num17(v0.real()) + ',' + num17(v0.imag()) + ',' +
               num17(v1.real()) + ',' + num17(v1.imag()) + ',' + num17(v2.real()) + ',' +
               num17(v2.imag()) + ',' + num17(v3.real()) + ',' + num17(v3.imag()) + '\n';
    }
    write_out(spec.out, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scattering of charged particles off an impenetrable magnetic vortex"};
    app.require_subcommand(1);
    app.set_config("--config", "", "line-oriented key=value file merged under flags");
    app.fallthrough();

    CommonSpec spec;
    double b_min = -0.99, b_max = 0.99;
    int b_count = 199;
    double mu_prime = 0.0;
    std::string traj_out;

    CLI::App* xsec = app.add_subcommand("xsec", "differential cross sections on an angle grid");
    add_common(xsec, spec);
    CLI::App* figure1 = app.add_subcommand(
        "figure1", "normalized diffraction-window curves and central-peak areas");
    add_common(figure1, spec);
    CLI::App* phase = app.add_subcommand("phase-shifts", "per-channel WKB phase data");
    add_common(phase, spec);
    CLI::App* oracle = app.add_subcommand(
        "oracle-compare", "WKB reflection phases against the exact radial solver");
    add_common(oracle, spec);
    CLI::App* classical = app.add_subcommand("classical", "classical deflection table");
    add_common(classical, spec);
    classical->add_option("--b-min", b_min, "impact parameter grid start, inside (-1,1)");
    classical->add_option("--b-max", b_max, "impact parameter grid end, inside (-1,1)");
    classical->add_option("--b-count", b_count, "number of impact parameters");
    classical->add_option("--mu-prime", mu_prime, "classical flux coupling (observables do not depend on it)");
    classical->add_option("--trajectories", traj_out, "also dump sampled orbits to this path");
    CLI::App* amps = app.add_subcommand("amps", "complex amplitude components f0..f3");
    add_common(amps, spec);

    CLI11_PARSE(app, argc, argv);

    try {
        if (xsec->parsed()) return cmd_xsec(spec);
        if (figure1->parsed()) return cmd_figure1(spec);
        if (phase->parsed()) return cmd_phase_shifts(spec);
        if (oracle->parsed()) return cmd_oracle_compare(spec);
        if (classical->parsed())
            return cmd_classical(spec, b_min, b_max, b_count, mu_prime, traj_out);
        if (amps->parsed()) return cmd_amps(spec);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
