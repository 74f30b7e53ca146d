#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "morrey/errors.hpp"
#include "morrey/field.hpp"
#include "morrey/parallel.hpp"

namespace morrey {

namespace detail {

// Second-order first derivative along one axis: centered in the interior,
// one-sided three-point at the two boundaries. `get(k)` reads the line at
// offset k relative to the current node.
template <class Get>
inline double d1(const Get& get, int i, int n, double h) {
    if (i > 0 && i < n - 1) return (get(1) - get(-1)) / (2.0 * h);
    if (i == 0) return (-3.0 * get(0) + 4.0 * get(1) - get(2)) / (2.0 * h);
    return (3.0 * get(0) - 4.0 * get(-1) + get(-2)) / (2.0 * h);
}

inline void require_stencil(const Grid4& g) {
    if (g.nx < 3 || g.ny < 3 || g.nz < 3)
        throw ConfigError(
            "gradient needs at least 3 nodes per spatial axis, grid is " +
            g.describe());
}

}  // namespace detail

/// Gradient of the velocity at time slice `it`, written into
/// out[3*i+j][node] = d v_i / d x_j. Each of the nine buffers must hold
/// nodes_per_slice() entries. Spatial stencils only, so slices are
/// independent.
inline void gradient_slice(const VelocityField& v, int it,
                           std::vector<double>* out /* array of 9 */) {
    const Grid4& g = v.grid();
    detail::require_stencil(g);
    const double* s = v.slice(it);
    const double hx = g.dx(0), hy = g.dx(1), hz = g.dx(2);
    const std::ptrdiff_t sx = 3;
    const std::ptrdiff_t sy = std::ptrdiff_t(g.nx) * 3;
    const std::ptrdiff_t sz = std::ptrdiff_t(g.nx) * g.ny * 3;
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const std::size_t node = g.slice_index(iz, iy, ix);
                const double* p = s + node * 3;
                for (int c = 0; c < 3; ++c) {
                    out[3 * c + 0][node] = detail::d1(
                        [&](int k) { return p[k * sx + c]; }, ix, g.nx, hx);
                    out[3 * c + 1][node] = detail::d1(
                        [&](int k) { return p[k * sy + c]; }, iy, g.ny, hy);
                    out[3 * c + 2][node] = detail::d1(
                        [&](int k) { return p[k * sz + c]; }, iz, g.nz, hz);
                }
            }
}

/// |grad v|^2 and |d v/d x_3|^2 per node of one slice in a single pass.
/// Either output may be null.
inline void grad_invariants_slice(const VelocityField& v, int it,
                                  std::vector<double>* frob_sq,
                                  std::vector<double>* d3_sq) {
    const Grid4& g = v.grid();
    detail::require_stencil(g);
    const double* s = v.slice(it);
    const double hx = g.dx(0), hy = g.dx(1), hz = g.dx(2);
    const std::ptrdiff_t sx = 3;
    const std::ptrdiff_t sy = std::ptrdiff_t(g.nx) * 3;
    const std::ptrdiff_t sz = std::ptrdiff_t(g.nx) * g.ny * 3;
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const std::size_t node = g.slice_index(iz, iy, ix);
                const double* p = s + node * 3;
                double frob = 0.0, d3 = 0.0;
                for (int c = 0; c < 3; ++c) {
                    const double dx_ = detail::d1(
                        [&](int k) { return p[k * sx + c]; }, ix, g.nx, hx);
                    const double dy_ = detail::d1(
                        [&](int k) { return p[k * sy + c]; }, iy, g.ny, hy);
                    const double dz_ = detail::d1(
                        [&](int k) { return p[k * sz + c]; }, iz, g.nz, hz);
                    frob += dx_ * dx_ + dy_ * dy_ + dz_ * dz_;
                    d3 += dz_ * dz_;
                }
                if (frob_sq) (*frob_sq)[node] = frob;
                if (d3_sq) (*d3_sq)[node] = d3;
            }
}

/// Gradient of a scalar slice buffer into three component buffers.
inline void scalar_gradient_slice(const Grid4& g,
                                  const std::vector<double>& w,
                                  std::vector<double>* out /* array of 3 */) {
    detail::require_stencil(g);
    const double hx = g.dx(0), hy = g.dx(1), hz = g.dx(2);
    const std::ptrdiff_t sy = g.nx;
    const std::ptrdiff_t sz = std::ptrdiff_t(g.nx) * g.ny;
    const double* s = w.data();
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const std::size_t node = g.slice_index(iz, iy, ix);
                const double* p = s + node;
                out[0][node] =
                    detail::d1([&](int k) { return p[k]; }, ix, g.nx, hx);
                out[1][node] =
                    detail::d1([&](int k) { return p[k * sy]; }, iy, g.ny, hy);
                out[2][node] =
                    detail::d1([&](int k) { return p[k * sz]; }, iz, g.nz, hz);
            }
}

/// Divergence of v on one slice (all nodes; callers usually read interior).
inline void divergence_slice(const VelocityField& v, int it,
                             std::vector<double>& out) {
    const Grid4& g = v.grid();
    detail::require_stencil(g);
    const double* s = v.slice(it);
    const double hx = g.dx(0), hy = g.dx(1), hz = g.dx(2);
    const std::ptrdiff_t sx = 3;
    const std::ptrdiff_t sy = std::ptrdiff_t(g.nx) * 3;
    const std::ptrdiff_t sz = std::ptrdiff_t(g.nx) * g.ny * 3;
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const std::size_t node = g.slice_index(iz, iy, ix);
                const double* p = s + node * 3;
                out[node] =
                    detail::d1([&](int k) { return p[k * sx + 0]; }, ix, g.nx,
                               hx) +
                    detail::d1([&](int k) { return p[k * sy + 1]; }, iy, g.ny,
                               hy) +
                    detail::d1([&](int k) { return p[k * sz + 2]; }, iz, g.nz,
                               hz);
            }
}

/// Full space-time gradient tensor field. Convenient at test scale; the
/// functional evaluators use the slice kernels above instead.
inline TensorField gradient(const VelocityField& v) {
    const Grid4& g = v.grid();
    detail::require_stencil(g);
    std::vector<double> out(g.node_count() * 9);
    parallel::for_indexed(0, g.nt, [&](int it) {
        std::vector<double> buf[9];
        for (auto& b : buf) b.resize(g.nodes_per_slice());
        gradient_slice(v, it, buf);
        const std::size_t base = std::size_t(it) * g.nodes_per_slice() * 9;
        for (std::size_t node = 0; node < g.nodes_per_slice(); ++node)
            for (int k = 0; k < 9; ++k)
                out[base + node * 9 + k] = buf[k][node];
    });
    return TensorField(g, std::move(out));
}

/// Max over interior nodes and all time slices of |div v|.
inline double divergence_residual(const VelocityField& v) {
    const Grid4& g = v.grid();
    detail::require_stencil(g);
    std::vector<double> per_slice(g.nt, 0.0);
    parallel::for_indexed(0, g.nt, [&](int it) {
        std::vector<double> div(g.nodes_per_slice());
        divergence_slice(v, it, div);
        double m = 0.0;
        for (int iz = 1; iz < g.nz - 1; ++iz)
            for (int iy = 1; iy < g.ny - 1; ++iy)
                for (int ix = 1; ix < g.nx - 1; ++ix) {
                    const double d = std::fabs(div[g.slice_index(iz, iy, ix)]);
                    if (d > m) m = d;
                }
        per_slice[it] = m;
    });
    double m = 0.0;
    for (double d : per_slice) m = std::max(m, d);
    return m;
}

}  // namespace morrey
