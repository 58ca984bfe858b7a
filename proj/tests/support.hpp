#pragma once

#include <cmath>
#include <numbers>

#include "windguide/dynamics.hpp"
#include "windguide/windfield.hpp"
#include "windguide_checks/property_suite.hpp"

namespace wgtest {

using namespace windguide;

inline constexpr double kDeg = std::numbers::pi / 180.0;

inline const dynamics::NormContext& ctx() { return checks::default_context(); }

/// Affine field W(p, t) = w0 + G p + tp t; its constant-gradient projection is exact.
class LinearWindField final : public wind::WindField {
public:
    wind::Vec3 w0{};
    wind::Mat3 grad{};
    wind::Vec3 tp{};

    wind::WindSample sample(const wind::Position& p, double t) const override {
        wind::WindSample s;
        const double x[3] = {p.x, p.y, p.h};
        for (int i = 0; i < 3; ++i) {
            s.w[i] = w0[i] + tp[i] * t;
            for (int j = 0; j < 3; ++j) s.w[i] += grad[i][j] * x[j];
        }
        s.grad = grad;
        s.dt_partials = tp;
        return s;
    }
};

inline wind::SinusoidalWindField calm_field() { return wind::SinusoidalWindField(wind::WindFieldSpec{}, 20.0); }

}  // namespace wgtest
