#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <string>

#include "morrey/errors.hpp"
#include "morrey/vec.hpp"

namespace morrey {

/// Uniform node-centered grid over a space-time box.
///
/// Nodes sit at x_min + i*h (closed interval, h = extent/(n-1)), sample layout
/// is (t,z,y,x) row-major so one time slice is contiguous.
struct Grid4 {
    int nx = 0, ny = 0, nz = 0, nt = 0;
    Vec3 x_min{0, 0, 0};
    Vec3 x_max{0, 0, 0};
    double t_min = 0.0;
    double t_max = 0.0;

    static Grid4 make(int nx, int ny, int nz, int nt, const Vec3& x_min,
                      const Vec3& x_max, double t_min, double t_max) {
        Grid4 g{nx, ny, nz, nt, x_min, x_max, t_min, t_max};
        g.validate();
        return g;
    }

    /// Cube in space, same node count on every spatial axis.
    static Grid4 make_cube(int n, int nt, double x_lo, double x_hi,
                           double t_lo, double t_hi) {
        return make(n, n, n, nt, {x_lo, x_lo, x_lo}, {x_hi, x_hi, x_hi},
                    t_lo, t_hi);
    }

    void validate() const {
        if (nx < 2 || ny < 2 || nz < 2 || nt < 2)
            throw ConfigError("Grid4: at least 2 nodes required on every axis");
        for (int a = 0; a < 3; ++a)
            if (!(x_max[a] > x_min[a]))
                throw ConfigError("Grid4: x_max must exceed x_min on axis " +
                                  std::to_string(a));
        if (!(t_max > t_min))
            throw ConfigError("Grid4: t_max must exceed t_min");
    }

    int n(int axis) const { return axis == 0 ? nx : (axis == 1 ? ny : nz); }

    double dx(int axis) const {
        return (x_max[axis] - x_min[axis]) / (n(axis) - 1);
    }

    Vec3 spacing() const { return {dx(0), dx(1), dx(2)}; }

    double max_spacing() const { return std::max({dx(0), dx(1), dx(2)}); }

    double dt() const { return (t_max - t_min) / (nt - 1); }

    double x(int axis, int i) const { return x_min[axis] + i * dx(axis); }

    double t(int j) const { return t_min + j * dt(); }

    Vec3 node(int ix, int iy, int iz) const {
        return {x(0, ix), x(1, iy), x(2, iz)};
    }

    std::size_t nodes_per_slice() const {
        return std::size_t(nx) * ny * nz;
    }

    std::size_t node_count() const { return nodes_per_slice() * nt; }

    std::size_t node_index(int it, int iz, int iy, int ix) const {
        return ((std::size_t(it) * nz + iz) * ny + iy) * nx + ix;
    }

    std::size_t slice_index(int iz, int iy, int ix) const {
        return (std::size_t(iz) * ny + iy) * nx + ix;
    }

    bool same_layout(const Grid4& o) const {
        return nx == o.nx && ny == o.ny && nz == o.nz && nt == o.nt &&
               x_min == o.x_min && x_max == o.x_max && t_min == o.t_min &&
               t_max == o.t_max;
    }

    std::string describe() const {
        char buf[192];
        std::snprintf(buf, sizeof(buf),
                      "%dx%dx%dx%d over [%g,%g]x[%g,%g]x[%g,%g]x[%g,%g]",
                      nx, ny, nz, nt, x_min[0], x_max[0], x_min[1], x_max[1],
                      x_min[2], x_max[2], t_min, t_max);
        return buf;
    }

    /// Throws DomainError naming the offending coordinate.
    void require_inside(const Vec3& x, double t) const {
        for (int a = 0; a < 3; ++a) {
            const double eps = 1e-12 * (x_max[a] - x_min[a]);
            if (x[a] < x_min[a] - eps || x[a] > x_max[a] + eps)
                throw DomainError("point coordinate x[" + std::to_string(a) +
                                  "]=" + std::to_string(x[a]) +
                                  " outside grid range [" +
                                  std::to_string(x_min[a]) + "," +
                                  std::to_string(x_max[a]) + "]");
        }
        const double eps = 1e-12 * (t_max - t_min);
        if (t < t_min - eps || t > t_max + eps)
            throw DomainError("time t=" + std::to_string(t) +
                              " outside grid range [" + std::to_string(t_min) +
                              "," + std::to_string(t_max) + "]");
    }

    void require_ball_inside(const Vec3& x0, double r) const {
        for (int a = 0; a < 3; ++a) {
            const double eps = 1e-12 * (x_max[a] - x_min[a]);
            if (x0[a] - r < x_min[a] - eps || x0[a] + r > x_max[a] + eps)
                throw DomainError(
                    "ball B(x0," + std::to_string(r) +
                    ") leaves the grid on axis " + std::to_string(a) +
                    " (center coordinate " + std::to_string(x0[a]) + ")");
        }
    }
};

/// Parabolic cylinder Q(z0,r) = B(x0,r) x (t0 - r^2, t0).
struct ParabolicCylinder {
    Vec3 x0{0, 0, 0};
    double t0 = 0.0;
    double r = 1.0;

    ParabolicCylinder() = default;
    ParabolicCylinder(const Vec3& center, double time, double radius)
        : x0(center), t0(time), r(radius) {
        if (!(radius > 0.0))
            throw DomainError("parabolic cylinder radius must be positive");
    }

    double t_lo() const { return t0 - r * r; }
    double t_hi() const { return t0; }
};

inline void require_cylinder_inside(const Grid4& g,
                                    const ParabolicCylinder& cyl) {
    g.require_ball_inside(cyl.x0, cyl.r);
    const double eps = 1e-12 * (g.t_max - g.t_min);
    if (cyl.t_lo() < g.t_min - eps || cyl.t_hi() > g.t_max + eps)
        throw DomainError("cylinder time span [" + std::to_string(cyl.t_lo()) +
                          "," + std::to_string(cyl.t_hi()) +
                          "] outside grid range [" + std::to_string(g.t_min) +
                          "," + std::to_string(g.t_max) + "]");
}

}  // namespace morrey
