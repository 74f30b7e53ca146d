#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "morrey/errors.hpp"
#include "morrey/grid.hpp"
#include "morrey/vec.hpp"

namespace morrey {

namespace detail {

// Fractional position of a query coordinate inside the node lattice of one
// axis: returns (cell index, weight of the upper node).
inline std::pair<int, double> locate(double v, double lo, double h, int n,
                                     int axis_tag, const char* what) {
    const double u = (v - lo) / h;
    int i = int(std::floor(u));
    double f = u - i;
    if (i < 0) {
        if (u > -1e-9) { i = 0; f = 0.0; }
        else
            throw DomainError(std::string(what) + " coordinate " +
                              std::to_string(v) + " below range on axis " +
                              std::to_string(axis_tag));
    }
    if (i >= n - 1) {
        if (u < n - 1 + 1e-9) { i = n - 2; f = 1.0; }
        else
            throw DomainError(std::string(what) + " coordinate " +
                              std::to_string(v) + " above range on axis " +
                              std::to_string(axis_tag));
    }
    return {i, f};
}

inline void check_samples(const Grid4& grid, const std::vector<double>& s,
                          std::size_t comps, const std::vector<Vec3>& loci) {
    if (s.size() != grid.node_count() * comps)
        throw ConfigError("field sample count " + std::to_string(s.size()) +
                          " does not match grid (" +
                          std::to_string(grid.node_count() * comps) +
                          " expected)");
    // Non-finite samples are allowed only within one cell of a declared
    // singular locus.
    const Vec3 h = grid.spacing();
    const double reach2 = 1.0001 * norm2(h);
    for (std::size_t idx = 0; idx < s.size(); ++idx) {
        if (std::isfinite(s[idx])) continue;
        const std::size_t node = idx / comps;
        const std::size_t per = grid.nodes_per_slice();
        const std::size_t in_slice = node % per;
        const int ix = int(in_slice % grid.nx);
        const int iy = int((in_slice / grid.nx) % grid.ny);
        const int iz = int(in_slice / (std::size_t(grid.nx) * grid.ny));
        const Vec3 p = grid.node(ix, iy, iz);
        bool near = false;
        for (const Vec3& c : loci)
            if (norm2(p - c) <= reach2) { near = true; break; }
        if (!near)
            throw ConfigError(
                "non-finite sample away from any declared singular locus "
                "(node " + std::to_string(node) + ")");
    }
}

}  // namespace detail

/// Sampled scalar field on a Grid4 (pressure, derived integrands, ...).
/// Immutable after construction; safe to share across threads.
class ScalarField {
  public:
    ScalarField(Grid4 grid, std::vector<double> samples, std::string meta = "",
                std::vector<Vec3> singular_loci = {})
        : grid_(grid), samples_(std::move(samples)), meta_(std::move(meta)),
          loci_(std::move(singular_loci)) {
        detail::check_samples(grid_, samples_, 1, loci_);
    }

    const Grid4& grid() const { return grid_; }
    const std::string& meta() const { return meta_; }
    const std::vector<Vec3>& singular_loci() const { return loci_; }
    bool singular() const { return !loci_.empty(); }
    const std::vector<double>& samples() const { return samples_; }

    double at(int it, int iz, int iy, int ix) const {
        return samples_[grid_.node_index(it, iz, iy, ix)];
    }

    const double* slice(int it) const {
        return samples_.data() + std::size_t(it) * grid_.nodes_per_slice();
    }

    /// Quadrilinear interpolation (trilinear in space, linear in time).
    double sample_at(const Vec3& x, double t) const;

  private:
    Grid4 grid_;
    std::vector<double> samples_;
    std::string meta_;
    std::vector<Vec3> loci_;
};

using PressureField = ScalarField;

/// Sampled 3-component velocity field, components interleaved per node.
class VelocityField {
  public:
    VelocityField(Grid4 grid, std::vector<double> samples,
                  std::string meta = "", std::vector<Vec3> singular_loci = {})
        : grid_(grid), samples_(std::move(samples)), meta_(std::move(meta)),
          loci_(std::move(singular_loci)) {
        detail::check_samples(grid_, samples_, 3, loci_);
    }

    const Grid4& grid() const { return grid_; }
    const std::string& meta() const { return meta_; }
    const std::vector<Vec3>& singular_loci() const { return loci_; }
    bool singular() const { return !loci_.empty(); }
    const std::vector<double>& samples() const { return samples_; }

    double comp(int it, int iz, int iy, int ix, int c) const {
        return samples_[grid_.node_index(it, iz, iy, ix) * 3 + c];
    }

    Vec3 at(int it, int iz, int iy, int ix) const {
        const std::size_t b = grid_.node_index(it, iz, iy, ix) * 3;
        return {samples_[b], samples_[b + 1], samples_[b + 2]};
    }

    const double* slice(int it) const {
        return samples_.data() + std::size_t(it) * grid_.nodes_per_slice() * 3;
    }

    Vec3 sample_at(const Vec3& x, double t) const;

  private:
    Grid4 grid_;
    std::vector<double> samples_;
    std::string meta_;
    std::vector<Vec3> loci_;
};

/// 3x3 gradient tensor per node, entry (i,j) = d v_i / d x_j at index 3i+j.
class TensorField {
  public:
    TensorField(Grid4 grid, std::vector<double> samples)
        : grid_(grid), samples_(std::move(samples)) {
        if (samples_.size() != grid_.node_count() * 9)
            throw ConfigError("tensor field sample count mismatch");
    }

    const Grid4& grid() const { return grid_; }
    const std::vector<double>& samples() const { return samples_; }

    double entry(int it, int iz, int iy, int ix, int i, int j) const {
        return samples_[grid_.node_index(it, iz, iy, ix) * 9 + 3 * i + j];
    }

    double frobenius_sq(int it, int iz, int iy, int ix) const {
        const std::size_t b = grid_.node_index(it, iz, iy, ix) * 9;
        double s = 0.0;
        for (int k = 0; k < 9; ++k) s += samples_[b + k] * samples_[b + k];
        return s;
    }

  private:
    Grid4 grid_;
    std::vector<double> samples_;
};

inline double ScalarField::sample_at(const Vec3& x, double t) const {
    grid_.require_inside(x, t);
    const auto [ix, fx] = detail::locate(x[0], grid_.x_min[0], grid_.dx(0),
                                         grid_.nx, 0, "spatial");
    const auto [iy, fy] = detail::locate(x[1], grid_.x_min[1], grid_.dx(1),
                                         grid_.ny, 1, "spatial");
    const auto [iz, fz] = detail::locate(x[2], grid_.x_min[2], grid_.dx(2),
                                         grid_.nz, 2, "spatial");
    const auto [it, ft] = detail::locate(t, grid_.t_min, grid_.dt(),
                                         grid_.nt, 3, "temporal");
    double acc = 0.0;
    for (int dt_ = 0; dt_ < 2; ++dt_)
        for (int dz = 0; dz < 2; ++dz)
            for (int dy = 0; dy < 2; ++dy)
                for (int dx_ = 0; dx_ < 2; ++dx_) {
                    const double w = (dt_ ? ft : 1 - ft) * (dz ? fz : 1 - fz) *
                                     (dy ? fy : 1 - fy) * (dx_ ? fx : 1 - fx);
                    if (w == 0.0) continue;
                    acc += w * at(it + dt_, iz + dz, iy + dy, ix + dx_);
                }
    return acc;
}

inline Vec3 VelocityField::sample_at(const Vec3& x, double t) const {
    grid_.require_inside(x, t);
    const auto [ix, fx] = detail::locate(x[0], grid_.x_min[0], grid_.dx(0),
                                         grid_.nx, 0, "spatial");
    const auto [iy, fy] = detail::locate(x[1], grid_.x_min[1], grid_.dx(1),
                                         grid_.ny, 1, "spatial");
    const auto [iz, fz] = detail::locate(x[2], grid_.x_min[2], grid_.dx(2),
                                         grid_.nz, 2, "spatial");
    const auto [it, ft] = detail::locate(t, grid_.t_min, grid_.dt(),
                                         grid_.nt, 3, "temporal");
    Vec3 acc{0, 0, 0};
    for (int dt_ = 0; dt_ < 2; ++dt_)
        for (int dz = 0; dz < 2; ++dz)
            for (int dy = 0; dy < 2; ++dy)
                for (int dx_ = 0; dx_ < 2; ++dx_) {
                    const double w = (dt_ ? ft : 1 - ft) * (dz ? fz : 1 - fz) *
                                     (dy ? fy : 1 - fy) * (dx_ ? fx : 1 - fx);
                    if (w == 0.0) continue;
                    const std::size_t b =
                        grid_.node_index(it + dt_, iz + dz, iy + dy, ix + dx_) * 3;
                    acc[0] += w * samples_[b];
                    acc[1] += w * samples_[b + 1];
                    acc[2] += w * samples_[b + 2];
                }
    return acc;
}

}  // namespace morrey
