#include "vortex/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace vortex {
namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
const double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, err;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double fsum = f(c - x) + f(c + x);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * h;
    const double diff = std::fabs((resk - resg) * h);
    double e = 200.0 * diff;
    e *= std::sqrt(e);
    p.err = std::min(diff, e);
    return p;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_panels) {
    QuadResult out;
    if (a == b) return out;
    std::vector<Panel> work;
    work.push_back(gk15(f, a, b));
    double done_value = 0.0;
    double done_err = 0.0;
    int panels = 1;
    while (!work.empty()) {
        Panel p = work.back();
        work.pop_back();
        const double frac = std::fabs(p.b - p.a) / std::fabs(b - a);
        const double tol = std::max(abs_tol * frac, rel_tol * std::fabs(p.value));
        if (p.err <= tol || frac < 1e-14) {
            done_value += p.value;
            done_err += p.err;
            continue;
        }
        if (panels >= max_panels) {
            out.converged = false;
            done_value += p.value;
            done_err += p.err;
            continue;
        }
        const double mid = 0.5 * (p.a + p.b);
        work.push_back(gk15(f, p.a, mid));
        work.push_back(gk15(f, mid, p.b));
        panels += 2;
    }
    out.value = done_value;
    out.error = done_err;
    out.panels = panels;
    return out;
}

}  // namespace vortex
