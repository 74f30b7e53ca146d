#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morrey/errors.hpp"
#include "morrey/field.hpp"
#include "morrey/parallel.hpp"

namespace morrey {

namespace detail {

inline void require_rescale_readable(const Grid4& in, const Grid4& out,
                                     double lambda) {
    if (!(lambda > 0.0) || lambda > 1.0)
        throw DomainError("rescale factor lambda=" + std::to_string(lambda) +
                          " outside (0,1]; upscaling would read outside the "
                          "sampled data");
    // The rescaled field reads the input at (lambda*x, lambda^2*t); the whole
    // output box must map into the input extents.
    for (int a = 0; a < 3; ++a) {
        const double eps = 1e-12 * (in.x_max[a] - in.x_min[a]);
        for (double c : {lambda * out.x_min[a], lambda * out.x_max[a]})
            if (c < in.x_min[a] - eps || c > in.x_max[a] + eps)
                throw DomainError(
                    "rescale would read outside the input grid on axis " +
                    std::to_string(a) + " (needs coordinate " +
                    std::to_string(c) + ")");
    }
    const double l2 = lambda * lambda;
    const double eps = 1e-12 * (in.t_max - in.t_min);
    for (double c : {l2 * out.t_min, l2 * out.t_max})
        if (c < in.t_min - eps || c > in.t_max + eps)
            throw DomainError(
                "rescale would read outside the input grid in time (needs t=" +
                std::to_string(c) + ")");
}

}  // namespace detail

/// v^lambda(x,t) = lambda * v(lambda*x, lambda^2*t) sampled on `out_grid`
/// (defaults to the input grid, which keeps the unit cylinder covered).
inline VelocityField natural_rescale(const VelocityField& v, double lambda,
                                     std::optional<Grid4> out_grid = {}) {
    const Grid4 out = out_grid.value_or(v.grid());
    detail::require_rescale_readable(v.grid(), out, lambda);
    const double l2 = lambda * lambda;
    std::vector<double> samples(out.node_count() * 3);
    parallel::for_indexed(0, out.nt, [&](int it) {
        const double ts = l2 * out.t(it);
        std::size_t idx = std::size_t(it) * out.nodes_per_slice() * 3;
        for (int iz = 0; iz < out.nz; ++iz)
            for (int iy = 0; iy < out.ny; ++iy)
                for (int ix = 0; ix < out.nx; ++ix) {
                    const Vec3 xs = lambda * out.node(ix, iy, iz);
                    const Vec3 val = v.sample_at(xs, ts);
                    samples[idx++] = lambda * val[0];
                    samples[idx++] = lambda * val[1];
                    samples[idx++] = lambda * val[2];
                }
    });
    return VelocityField(out, std::move(samples),
                         v.meta().empty()
                             ? "rescaled lambda=" + std::to_string(lambda)
                             : v.meta() + "; rescaled lambda=" +
                                   std::to_string(lambda));
}

/// p^lambda(x,t) = lambda^2 * p(lambda*x, lambda^2*t).
inline ScalarField natural_rescale(const ScalarField& p, double lambda,
                                   std::optional<Grid4> out_grid = {}) {
    const Grid4 out = out_grid.value_or(p.grid());
    detail::require_rescale_readable(p.grid(), out, lambda);
    const double l2 = lambda * lambda;
    std::vector<double> samples(out.node_count());
    parallel::for_indexed(0, out.nt, [&](int it) {
        const double ts = l2 * out.t(it);
        std::size_t idx = std::size_t(it) * out.nodes_per_slice();
        for (int iz = 0; iz < out.nz; ++iz)
            for (int iy = 0; iy < out.ny; ++iy)
                for (int ix = 0; ix < out.nx; ++ix) {
                    const Vec3 xs = lambda * out.node(ix, iy, iz);
                    samples[idx++] = l2 * p.sample_at(xs, ts);
                }
    });
    return ScalarField(out, std::move(samples),
                       p.meta().empty()
                           ? "rescaled lambda=" + std::to_string(lambda)
                           : p.meta() + "; rescaled lambda=" +
                                 std::to_string(lambda));
}

inline std::pair<VelocityField, ScalarField> natural_rescale(
    const VelocityField& v, const ScalarField& p, double lambda,
    std::optional<Grid4> out_grid = {}) {
    return {natural_rescale(v, lambda, out_grid),
            natural_rescale(p, lambda, out_grid)};
}

}  // namespace morrey
