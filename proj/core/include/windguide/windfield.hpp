#pragma once

#include <array>

namespace windguide::wind {

/// Normalized position (x east, y north, h up), in units of V_n^2/g.
struct Position {
    double x = 0.0;
    double y = 0.0;
    double h = 0.0;
};

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// In-situ wind information at one point, all normalized by V_n (components) and g (time partials).
///
/// grad[i][j] is the partial of component i (x, y, h) with respect to coordinate j (x, y, h).
struct WindSample {
    Vec3 w{};
    Mat3 grad{};
    Vec3 dt_partials{};

    double w_x() const { return w[0]; }
    double w_y() const { return w[1]; }
    double w_h() const { return w[2]; }
};

/// Any field that can supply components, spatial gradients and time partials.
class WindField {
public:
    virtual ~WindField() = default;
    virtual WindSample sample(const Position& p, double t_bar) const = 0;
};

/// Parameters of the sinusoidal magnitude model
///   W_m = W_m0 [1 + a_x sin(w_mx x) + a_y sin(w_my y)],  constant direction psi_w.
/// Spatial frequencies are in radians per normalized length unit.
struct WindFieldSpec {
    double w_m0 = 0.0;  ///< m/s
    double a_x = 0.0;
    double a_y = 0.0;
    double omega_mx = 0.0;
    double omega_my = 0.0;
    double psi_w = 0.0;  ///< rad, direction the wind blows toward, from north toward east

    /// |a_x| + |a_y| <= 1 keeps the magnitude nonnegative everywhere.
    bool magnitude_nonnegative() const;
};

class SinusoidalWindField final : public WindField {
public:
    /// v_n is the characteristic speed used to normalize w_m0.
    SinusoidalWindField(const WindFieldSpec& spec, double v_n);

    WindSample sample(const Position& p, double t_bar) const override;

    /// Normalized wind magnitude at a point.
    double magnitude(const Position& p) const;

    const WindFieldSpec& spec() const { return spec_; }

private:
    WindFieldSpec spec_;
    double w_bar_m0_;
    double sin_psi_w_;
    double cos_psi_w_;
};

/// Convenience wrapper around SinusoidalWindField::sample.
WindSample sample(const WindFieldSpec& spec, double v_n, const Position& p, double t_bar);

/// Max over the 9 gradient entries of |analytic - central difference| / max(1, |analytic|).
double verify_gradients(const WindField& field, const Position& p, double t_bar, double fd_step);

}  // namespace windguide::wind
