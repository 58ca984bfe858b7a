#include "windguide_checks/oracles.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace windguide::checks {

double fd_power_wrt_airspeed(double v0, double psi0, const guidance::InsituWind& w, double dt_bar,
                             const dynamics::NormContext& ctx, double step) {
    const double up = guidance::projected_power(v0, psi0, step, 0.0, w, dt_bar, ctx);
    const double dn = guidance::projected_power(v0, psi0, -step, 0.0, w, dt_bar, ctx);
    return (up - dn) / (2.0 * step);
}

double fd_power_wrt_heading(double v0, double psi0, const guidance::InsituWind& w, double dt_bar,
                            const dynamics::NormContext& ctx, double step) {
    const double up = guidance::projected_power(v0, psi0, 0.0, step, w, dt_bar, ctx);
    const double dn = guidance::projected_power(v0, psi0, 0.0, -step, w, dt_bar, ctx);
    return (up - dn) / (2.0 * step);
}

std::optional<FixedPointResult> fixed_point_position_change(double v0, double psi0, double dv, double dpsi,
                                                            const guidance::InsituWind& w, double dt_bar,
                                                            double tol, int max_iter) {
    const double v1 = v0 + dv, psi1 = psi0 + dpsi;
    const double start_x = v0 * std::sin(psi0) + w.w_x0;
    const double start_y = v0 * std::cos(psi0) + w.w_y0;
    double dx = 0.0, dy = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        const double end_wx = w.w_x0 + w.g_xx * dx + w.g_xy * dy + w.tp_x * dt_bar;
        const double end_wy = w.w_y0 + w.g_yx * dx + w.g_yy * dy + w.tp_y * dt_bar;
        const double nx = 0.5 * dt_bar * (start_x + v1 * std::sin(psi1) + end_wx);
        const double ny = 0.5 * dt_bar * (start_y + v1 * std::cos(psi1) + end_wy);
        if (!std::isfinite(nx) || !std::isfinite(ny)) return std::nullopt;
        const double change = std::max(std::abs(nx - dx), std::abs(ny - dy));
        dx = nx;
        dy = ny;
        if (change <= tol * std::max(1.0, std::max(std::abs(dx), std::abs(dy)))) return FixedPointResult{dx, dy, it};
    }
    return std::nullopt;
}

double trapezoid_iteration_radius(const guidance::InsituWind& w, double dt_bar) {
    const double s = 0.5 * dt_bar;
    const double a = s * w.g_xx, b = s * w.g_xy, c = s * w.g_yx, d = s * w.g_yy;
    const double tr = a + d, det = a * d - b * c;
    const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * det));
    return std::max(std::abs((tr + disc) / 2.0), std::abs((tr - disc) / 2.0));
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double numeric_loiter_speed(const dynamics::NormContext& ctx) {
    // steady level power written out here rather than via dynamics::level_flight_power
    auto power = [&](double v) {
        const double c_l = 1.0 / (ctx.rho_bar * v * v);
        return ctx.rho_bar * v * v * v * (ctx.c_d0 + ctx.k_induced * c_l * c_l);
    };
    // Golden section stalls near sqrt(machine epsilon) on a flat minimum; the power is convex in V,
    // so bisect on the sign of a Richardson-extrapolated central difference instead.
    auto slope = [&](double v) {
        const double h = 1e-2 * v;
        const double d1 = (power(v + h) - power(v - h)) / (2.0 * h);
        const double d2 = (power(v + h / 2) - power(v - h / 2)) / h;
        return (4.0 * d2 - d1) / 3.0;
    };
    double lo = 0.05, hi = 20.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double numeric_max_lift_to_drag(double c_d0, double k_induced) {
    auto neg_ld = [&](double c_l) { return -c_l / (c_d0 + k_induced * c_l * c_l); };
    const double best = golden_section_minimize(neg_ld, 1e-6, 10.0, 1e-12);
    return -neg_ld(best);
}

double log_linear_decay_rate(const std::vector<double>& t, const std::vector<double>& err) {
    const std::size_t n = t.size();
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = std::log(std::abs(err[i]));
        st += t[i];
        sy += y;
        stt += t[i] * t[i];
        sty += t[i] * y;
    }
    return (n * sty - st * sy) / (n * stt - st * st);
}

}  // namespace windguide::checks
