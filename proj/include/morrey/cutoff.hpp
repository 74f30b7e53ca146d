#pragma once

#include <cmath>

#include "morrey/errors.hpp"
#include "morrey/vec.hpp"

namespace morrey {

struct BumpValues {
    double value = 0.0;
    Vec3 grad{0, 0, 0};
    double laplacian = 0.0;
};

/// C^2 compactly supported bump a*(1 - |x-c|^2/R^2)^3 with closed-form
/// gradient and Laplacian. Shared by the cutoff family and the manufactured
/// solutions.
inline BumpValues eval_bump(const Vec3& center, double radius,
                            double amplitude, const Vec3& x) {
    BumpValues out;
    const Vec3 d = x - center;
    const double r2 = radius * radius;
    const double s = norm2(d) / r2;
    if (s >= 1.0) return out;
    const double one_s = 1.0 - s;
    out.value = amplitude * one_s * one_s * one_s;
    // grad = psi'(s) grad s, lap = psi''(s)|grad s|^2 + psi'(s) lap s with
    // grad s = 2(x-c)/R^2, |grad s|^2 = 4 s / R^2, lap s = 6 / R^2.
    const double dpsi_ds = -3.0 * amplitude * one_s * one_s;
    const double gscale = dpsi_ds * 2.0 / r2;
    out.grad = {gscale * d[0], gscale * d[1], gscale * d[2]};
    out.laplacian = amplitude * (6.0 * one_s / r2) * (7.0 * s - 3.0);
    return out;
}

/// Analytic test function phi(x,t) = amplitude * psi(x) * chi(t) for the
/// local energy inequality: psi the C^2 bump above, chi a C^1 smoothstep
/// ramp (0 for t <= ramp_on, 1 for t >= ramp_full). Value, gradient,
/// Laplacian and time derivative are closed-form, so no differentiation
/// noise enters the residual.
struct CutoffSpec {
    Vec3 center{0, 0, 0};
    double radius = 0.75;
    double ramp_on = -0.95;
    double ramp_full = -0.75;
    double amplitude = 1.0;

    void validate() const {
        if (!(radius > 0.0)) throw ConfigError("cutoff radius must be positive");
        if (!(ramp_full > ramp_on))
            throw ConfigError("cutoff ramp_full must exceed ramp_on");
        if (!(amplitude > 0.0))
            throw ConfigError("cutoff amplitude must be positive");
    }
};

struct CutoffValues {
    double phi = 0.0;
    double dphi_dt = 0.0;
    double laplacian = 0.0;
    Vec3 grad{0, 0, 0};
};

namespace detail {

inline double ramp(const CutoffSpec& c, double t, double* ddt) {
    if (t <= c.ramp_on) {
        if (ddt) *ddt = 0.0;
        return 0.0;
    }
    if (t >= c.ramp_full) {
        if (ddt) *ddt = 0.0;
        return 1.0;
    }
    const double w = c.ramp_full - c.ramp_on;
    const double u = (t - c.ramp_on) / w;
    if (ddt) *ddt = 6.0 * u * (1.0 - u) / w;
    return u * u * (3.0 - 2.0 * u);
}

}  // namespace detail

inline CutoffValues eval_cutoff(const CutoffSpec& c, const Vec3& x, double t) {
    CutoffValues out;
    const BumpValues b = eval_bump(c.center, c.radius, c.amplitude, x);
    if (b.value == 0.0 && b.laplacian == 0.0) return out;
    double chi_dt = 0.0;
    const double chi = detail::ramp(c, t, &chi_dt);
    out.phi = b.value * chi;
    out.dphi_dt = b.value * chi_dt;
    out.laplacian = b.laplacian * chi;
    out.grad = chi * b.grad;
    return out;
}

}  // namespace morrey
