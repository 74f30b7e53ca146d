#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "morrey/errors.hpp"
#include "morrey/field.hpp"
#include "morrey/grid.hpp"

namespace morrey {

/// Cell weighting for ball quadrature.
///
/// indicator:    a cell counts fully iff its center lies in B(x0,r).
/// partial_cell: a cell is weighted by the fraction of its 8 corner nodes
///               inside the ball (values in {0, 1/8, ..., 1}).
///
/// Cells whose corners carry non-finite samples, or whose center lies within
/// singular_exclusion_radius of a declared singular locus, contribute zero;
/// their weighted volume is reported separately so near-singular audits can
/// bound the omitted mass.
struct CellWeightRule {
    enum class Mode { indicator, partial_cell };
    Mode mode = Mode::partial_cell;
    double singular_exclusion_radius = 0.0;
};

struct IntegralValue {
    double value = 0.0;
    double excluded_volume = 0.0;
    /// Weighted volume of the cells that did contribute; ball means divide
    /// by this so exclusions never bias them.
    double included_volume = 0.0;
};

namespace detail {

inline void require_radius_resolved(const Grid4& g, double r) {
    const double floor_r = 2.0 * g.max_spacing();
    if (r < floor_r)
        throw ResolutionError("radius " + std::to_string(r) +
                                  " below the quadrature resolution floor " +
                                  std::to_string(floor_r) +
                                  " (2 spatial spacings)",
                              floor_r);
}

struct BallCells {
    int lo[3], hi[3];             // inclusive cell index range per axis
    std::vector<double> off2[3];  // squared node offsets from x0 per axis
};

inline BallCells ball_cells(const Grid4& g, const Vec3& x0, double r) {
    BallCells bc;
    for (int a = 0; a < 3; ++a) {
        const double h = g.dx(a);
        int lo = int(std::floor((x0[a] - r - g.x_min[a]) / h));
        int hi = int(std::floor((x0[a] + r - g.x_min[a]) / h));
        bc.lo[a] = std::clamp(lo, 0, g.n(a) - 2);
        bc.hi[a] = std::clamp(hi, 0, g.n(a) - 2);
        bc.off2[a].resize(g.n(a));
        for (int i = 0; i < g.n(a); ++i) {
            const double d = g.x(a, i) - x0[a];
            bc.off2[a][i] = d * d;
        }
    }
    return bc;
}

}  // namespace detail

/// Ball quadrature of a node-sampled scalar over B(x0,r) on one time slice.
/// `node_fn(ix,iy,iz)` returns the sample; cell values are the mean of the 8
/// corners (exact trilinear interpolation at the cell center).
template <class NodeFn>
IntegralValue integrate_ball_fn(const Grid4& g, NodeFn&& node_fn,
                                const Vec3& x0, double r,
                                const CellWeightRule& rule,
                                std::span<const Vec3> loci = {},
                                bool check_finite = false) {
    g.require_ball_inside(x0, r);
    detail::require_radius_resolved(g, r);
    const detail::BallCells bc = detail::ball_cells(g, x0, r);
    const double r2 = r * r;
    const double cell_vol = g.dx(0) * g.dx(1) * g.dx(2);
    const bool partial = rule.mode == CellWeightRule::Mode::partial_cell;
    const double excl2 =
        rule.singular_exclusion_radius * rule.singular_exclusion_radius;
    double sum = 0.0, excluded = 0.0, included = 0.0;
    for (int cz = bc.lo[2]; cz <= bc.hi[2]; ++cz)
        for (int cy = bc.lo[1]; cy <= bc.hi[1]; ++cy)
            for (int cx = bc.lo[0]; cx <= bc.hi[0]; ++cx) {
                double w = 0.0;
                if (partial) {
                    int inside = 0;
                    for (int dz = 0; dz < 2; ++dz)
                        for (int dy = 0; dy < 2; ++dy)
                            for (int dx_ = 0; dx_ < 2; ++dx_)
                                if (bc.off2[0][cx + dx_] + bc.off2[1][cy + dy] +
                                        bc.off2[2][cz + dz] <=
                                    r2)
                                    ++inside;
                    w = inside / 8.0;
                } else {
                    const double mx =
                        0.5 * (g.x(0, cx) + g.x(0, cx + 1)) - x0[0];
                    const double my =
                        0.5 * (g.x(1, cy) + g.x(1, cy + 1)) - x0[1];
                    const double mz =
                        0.5 * (g.x(2, cz) + g.x(2, cz + 1)) - x0[2];
                    w = (mx * mx + my * my + mz * mz <= r2) ? 1.0 : 0.0;
                }
                if (w == 0.0) continue;

                bool excluded_cell = false;
                if (!loci.empty() && excl2 > 0.0) {
                    const Vec3 center{0.5 * (g.x(0, cx) + g.x(0, cx + 1)),
                                      0.5 * (g.x(1, cy) + g.x(1, cy + 1)),
                                      0.5 * (g.x(2, cz) + g.x(2, cz + 1))};
                    for (const Vec3& c : loci)
                        if (norm2(center - c) <= excl2) {
                            excluded_cell = true;
                            break;
                        }
                }
                double value = 0.0;
                if (!excluded_cell) {
                    for (int dz = 0; dz < 2; ++dz)
                        for (int dy = 0; dy < 2; ++dy)
                            for (int dx_ = 0; dx_ < 2; ++dx_)
                                value += node_fn(cx + dx_, cy + dy, cz + dz);
                    value *= 0.125;
                    if (check_finite && !std::isfinite(value))
                        excluded_cell = true;
                }
                if (excluded_cell)
                    excluded += w * cell_vol;
                else {
                    sum += w * cell_vol * value;
                    included += w * cell_vol;
                }
            }
    return {sum, excluded, included};
}

/// Ball quadrature of one time slice of a sampled scalar field.
inline IntegralValue integrate_ball(const ScalarField& f, int time_slice,
                                    const Vec3& x0, double r,
                                    const CellWeightRule& rule) {
    const Grid4& g = f.grid();
    const double* s = f.slice(time_slice);
    return integrate_ball_fn(
        g,
        [&](int ix, int iy, int iz) { return s[g.slice_index(iz, iy, ix)]; },
        x0, r, rule, f.singular_loci(), f.singular());
}

namespace detail {

struct TimeWindow {
    int first = 0, last = -1;  // slices with t_j in [a,b]
    int seg_lo = 0, seg_hi = 0;  // slice range needed for the pw-linear rule
    double a = 0, b = 0;
};

inline TimeWindow time_window(const Grid4& g, double a, double b,
                              int min_slices) {
    const double eps = 1e-12 * (g.t_max - g.t_min);
    if (a < g.t_min - eps || b > g.t_max + eps)
        throw DomainError("time window [" + std::to_string(a) + "," +
                          std::to_string(b) + "] outside grid range [" +
                          std::to_string(g.t_min) + "," +
                          std::to_string(g.t_max) + "]");
    TimeWindow w;
    w.a = a;
    w.b = b;
    const double dt = g.dt();
    w.first = int(std::ceil((a - g.t_min - eps) / dt));
    w.last = int(std::floor((b - g.t_min + eps) / dt));
    w.first = std::clamp(w.first, 0, g.nt - 1);
    w.last = std::clamp(w.last, 0, g.nt - 1);
    const int count = w.last - w.first + 1;
    if (count < min_slices)
        throw ResolutionError(
            "only " + std::to_string(std::max(count, 0)) +
                " time slices intersect (" + std::to_string(a) + "," +
                std::to_string(b) + "); at least " +
                std::to_string(min_slices) + " required (min radius " +
                std::to_string(std::sqrt(double(min_slices) * dt)) + ")",
            std::sqrt(double(min_slices) * dt));
    w.seg_lo = std::max(0, int(std::floor((a - g.t_min + eps) / dt)));
    w.seg_hi = std::min(g.nt - 1, int(std::ceil((b - g.t_min - eps) / dt)));
    return w;
}

/// Integrates the piecewise-linear interpolant of per-slice values over
/// [a,b]; partial end segments are clipped exactly, which matches weighting
/// them by overlap fraction.
template <class SliceVal>
double integrate_time_pwl(const Grid4& g, const TimeWindow& w,
                          SliceVal&& val) {
    double acc = 0.0;
    for (int j = w.seg_lo; j < w.seg_hi; ++j) {
        const double t0 = g.t(j), t1 = g.t(j + 1);
        const double lo = std::max(t0, w.a), hi = std::min(t1, w.b);
        if (hi <= lo) continue;
        const double v0 = val(j), v1 = val(j + 1);
        const double dt = t1 - t0;
        const double f_lo = v0 + (v1 - v0) * (lo - t0) / dt;
        const double f_hi = v0 + (v1 - v0) * (hi - t0) / dt;
        acc += 0.5 * (f_lo + f_hi) * (hi - lo);
    }
    return acc;
}

}  // namespace detail

inline constexpr int kMinCylinderSlices = 4;

/// Space-time quadrature over Q(z0,r): trapezoidal in time over per-slice
/// ball integrals, with partial end slices weighted by overlap fraction.
/// `slice_fn(j)` returns the ball integral at slice j.
template <class SliceFn>
IntegralValue integrate_cylinder_slices(const Grid4& g,
                                        const ParabolicCylinder& cyl,
                                        SliceFn&& slice_fn) {
    require_cylinder_inside(g, cyl);
    const detail::TimeWindow w =
        detail::time_window(g, cyl.t_lo(), cyl.t_hi(), kMinCylinderSlices);
    std::vector<IntegralValue> cache(w.seg_hi - w.seg_lo + 1);
    std::vector<bool> have(cache.size(), false);
    auto get = [&](int j) -> const IntegralValue& {
        if (!have[j - w.seg_lo]) {
            cache[j - w.seg_lo] = slice_fn(j);
            have[j - w.seg_lo] = true;
        }
        return cache[j - w.seg_lo];
    };
    IntegralValue out;
    out.value = detail::integrate_time_pwl(
        g, w, [&](int j) { return get(j).value; });
    out.excluded_volume = detail::integrate_time_pwl(
        g, w, [&](int j) { return get(j).excluded_volume; });
    out.included_volume = detail::integrate_time_pwl(
        g, w, [&](int j) { return get(j).included_volume; });
    return out;
}

inline IntegralValue integrate_cylinder(const ScalarField& f,
                                        const ParabolicCylinder& cyl,
                                        const CellWeightRule& rule) {
    return integrate_cylinder_slices(f.grid(), cyl, [&](int j) {
        return integrate_ball(f, j, cyl.x0, cyl.r, rule);
    });
}

/// Essential supremum in time approximated by the max over the time slices
/// intersecting (t0-r^2, t0); partial end slices enter at full value.
template <class SliceReducer>
double ess_sup_in_time(const Grid4& g, const ParabolicCylinder& cyl,
                       SliceReducer&& reduce) {
    require_cylinder_inside(g, cyl);
    const detail::TimeWindow w =
        detail::time_window(g, cyl.t_lo(), cyl.t_hi(), kMinCylinderSlices);
    double m = -std::numeric_limits<double>::infinity();
    for (int j = w.first; j <= w.last; ++j) m = std::max(m, reduce(j));
    return m;
}

inline double ess_sup_in_time(const ScalarField& f,
                              const ParabolicCylinder& cyl,
                              const CellWeightRule& rule) {
    return ess_sup_in_time(f.grid(), cyl, [&](int j) {
        return integrate_ball(f, j, cyl.x0, cyl.r, rule).value;
    });
}

inline constexpr double kInfExponent =
    std::numeric_limits<double>::infinity();

/// Mixed Lebesgue norm ||v||_{L_{m,n}(Q(z0,r))} =
/// ( int_t ( int_B |v|^m dx )^{n/m} dt )^{1/n}; n = infinity takes the slice
/// max of the inner norm.
inline double mixed_norm(const VelocityField& v, const ParabolicCylinder& cyl,
                         double m, double n, const CellWeightRule& rule) {
    if (!(m >= 1.0))
        throw DomainError("mixed norm exponent m must be >= 1");
    const bool n_inf = std::isinf(n);
    if (!n_inf && !(n >= 1.0))
        throw DomainError("mixed norm exponent n must be >= 1 or infinity");
    const Grid4& g = v.grid();
    require_cylinder_inside(g, cyl);
    const detail::TimeWindow w =
        detail::time_window(g, cyl.t_lo(), cyl.t_hi(), kMinCylinderSlices);

    auto inner = [&](int j) {  // int_B |v|^m dx at slice j
        const double* s = v.slice(j);
        return integrate_ball_fn(
                   g,
                   [&](int ix, int iy, int iz) {
                       const double* p = s + g.slice_index(iz, iy, ix) * 3;
                       const double a2 =
                           p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
                       return m == 2.0 ? a2 : std::pow(a2, 0.5 * m);
                   },
                   cyl.x0, cyl.r, rule, v.singular_loci(), v.singular())
            .value;
    };

    if (n_inf) {
        double sup = 0.0;
        for (int j = w.first; j <= w.last; ++j)
            sup = std::max(sup, std::pow(inner(j), 1.0 / m));
        return sup;
    }
    std::vector<double> vals(w.seg_hi - w.seg_lo + 1, -1.0);
    auto val = [&](int j) {
        double& slot = vals[j - w.seg_lo];
        if (slot < 0.0) slot = std::pow(inner(j), n / m);
        return slot;
    };
    const double integral = detail::integrate_time_pwl(g, w, val);
    return std::pow(integral, 1.0 / n);
}

}  // namespace morrey
