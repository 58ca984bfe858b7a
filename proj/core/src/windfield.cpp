#include "windguide/windfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace windguide::wind {

bool WindFieldSpec::magnitude_nonnegative() const {
    return std::abs(a_x) + std::abs(a_y) <= 1.0;
}

SinusoidalWindField::SinusoidalWindField(const WindFieldSpec& spec, double v_n)
    : spec_(spec),
      w_bar_m0_(spec.w_m0 / v_n),
      sin_psi_w_(std::sin(spec.psi_w)),
      cos_psi_w_(std::cos(spec.psi_w)) {
    if (!(v_n > 0.0)) throw std::invalid_argument("SinusoidalWindField: v_n must be positive");
}

double SinusoidalWindField::magnitude(const Position& p) const {
    return w_bar_m0_ * (1.0 + spec_.a_x * std::sin(spec_.omega_mx * p.x) +
                        spec_.a_y * std::sin(spec_.omega_my * p.y));
}

WindSample SinusoidalWindField::sample(const Position& p, double /*t_bar*/) const {
    const double wm = magnitude(p);
    const double dwm_dx = w_bar_m0_ * spec_.a_x * spec_.omega_mx * std::cos(spec_.omega_mx * p.x);
    const double dwm_dy = w_bar_m0_ * spec_.a_y * spec_.omega_my * std::cos(spec_.omega_my * p.y);

    WindSample s;
    s.w = {wm * sin_psi_w_, wm * cos_psi_w_, 0.0};
    s.grad[0] = {sin_psi_w_ * dwm_dx, sin_psi_w_ * dwm_dy, 0.0};
    s.grad[1] = {cos_psi_w_ * dwm_dx, cos_psi_w_ * dwm_dy, 0.0};
    // no vertical wind, no altitude dependence, stationary
    return s;
}

WindSample sample(const WindFieldSpec& spec, double v_n, const Position& p, double t_bar) {
    return SinusoidalWindField(spec, v_n).sample(p, t_bar);
}

double verify_gradients(const WindField& field, const Position& p, double t_bar, double fd_step) {
    if (!(fd_step > 0.0)) throw std::invalid_argument("verify_gradients: fd_step must be positive");
    const WindSample center = field.sample(p, t_bar);
    double worst = 0.0;
    for (int j = 0; j < 3; ++j) {
        Position plus = p;
        Position minus = p;
        double* cp = j == 0 ? &plus.x : j == 1 ? &plus.y : &plus.h;
        double* cm = j == 0 ? &minus.x : j == 1 ? &minus.y : &minus.h;
        *cp += fd_step;
        *cm -= fd_step;
        const WindSample sp = field.sample(plus, t_bar);
        const WindSample sm = field.sample(minus, t_bar);
        for (int i = 0; i < 3; ++i) {
            const double fd = (sp.w[i] - sm.w[i]) / (2.0 * fd_step);
            const double analytic = center.grad[i][j];
            worst = std::max(worst, std::abs(analytic - fd) / std::max(1.0, std::abs(analytic)));
        }
    }
    return worst;
}

}  // namespace windguide::wind
