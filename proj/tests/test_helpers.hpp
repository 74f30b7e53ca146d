#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "morrey/morrey.hpp"

namespace testutil {

using morrey::Grid4;
using morrey::ScalarField;
using morrey::Vec3;
using morrey::VelocityField;

/// Box comfortably containing the unit cylinder Q(1).
inline Grid4 unit_grid(int n, int nt) {
    return Grid4::make_cube(n, nt, -1.1, 1.1, -1.05, 0.02);
}

inline VelocityField sample_velocity(
    const Grid4& g, const std::function<Vec3(const Vec3&, double)>& f,
    std::string meta = "test field") {
    std::vector<double> s(g.node_count() * 3);
    std::size_t idx = 0;
    for (int it = 0; it < g.nt; ++it) {
        const double t = g.t(it);
        for (int iz = 0; iz < g.nz; ++iz)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix) {
                    const Vec3 v = f(g.node(ix, iy, iz), t);
                    s[idx++] = v[0];
                    s[idx++] = v[1];
                    s[idx++] = v[2];
                }
    }
    return VelocityField(g, std::move(s), std::move(meta));
}

inline ScalarField sample_scalar(
    const Grid4& g, const std::function<double(const Vec3&, double)>& f,
    std::string meta = "test field") {
    std::vector<double> s(g.node_count());
    std::size_t idx = 0;
    for (int it = 0; it < g.nt; ++it) {
        const double t = g.t(it);
        for (int iz = 0; iz < g.nz; ++iz)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix)
                    s[idx++] = f(g.node(ix, iy, iz), t);
    }
    return ScalarField(g, std::move(s), std::move(meta));
}

inline double rel_err(double got, double expected) {
    return std::fabs(got - expected) / std::max(std::fabs(expected), 1e-300);
}

constexpr double kBallVolume = 4.18879020478639098;  // 4*pi/3

/// Closed-form value of int_{Q(0,1)} e^{-2t} cos^2(x2) dz, the shared oracle
/// for the cylinder quadrature and for E(1) of the shear solution; evaluated
/// from the iterated 1-D integrals, independent of any library code.
inline double shear_dissipation_oracle() {
    const double time_part = (std::exp(2.0) - 1.0) / 2.0;
    const double space_part =
        M_PI * (2.0 / 3.0 + 0.25 * std::sin(2.0) - 0.5 * std::cos(2.0));
    return time_part * space_part;
}

}  // namespace testutil
