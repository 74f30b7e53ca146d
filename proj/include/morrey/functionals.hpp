#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morrey/errors.hpp"
#include "morrey/field.hpp"
#include "morrey/operators.hpp"
#include "morrey/parallel.hpp"
#include "morrey/quadrature.hpp"

namespace morrey {

/// Space-time center point z0 = (x0, t0).
struct Center {
    Vec3 x{0, 0, 0};
    double t = 0.0;
};

struct FunctionalOptions {
    CellWeightRule rule{};
};

/// Ladder of the scale-invariant functionals along a geometric radius
/// sequence r_k = r0 * theta^k at one center point.
struct LadderConfig {
    double r0 = 1.0;
    double theta = 0.70710678118654752;  // 1/sqrt(2)
    int count = 12;
    bool with_m = true;
    double m_s = 5.0;
    double m_l = 5.0;

    void validate() const {
        if (!(r0 > 0.0)) throw ConfigError("ladder r0 must be positive");
        if (!(theta > 0.0) || !(theta < 1.0))
            throw ConfigError("ladder theta must lie in (0,1)");
        if (count < 1) throw ConfigError("ladder count must be at least 1");
    }
};

struct LadderEntry {
    double r = 0.0;
    double A = 0.0;   // ess sup (1/r) int_{B(r)} |v|^2
    double E = 0.0;   // (1/r)   int_{Q(r)} |grad v|^2
    double C = 0.0;   // (1/r^2) int_{Q(r)} |v|^3
    double H = 0.0;   // (1/r^3) int_{Q(r)} |v|^2
    double E3 = 0.0;  // (1/r)   int_{Q(r)} |d v / d x_3|^2
    std::optional<double> D0;  // (1/r^2) int |p - [p]_{B(r)}|^{3/2}
    std::optional<double> M;   // M_{s,l}(r)
    double excluded_volume = 0.0;
};

struct FunctionalLadder {
    Center center;
    double theta = 0.0;
    double m_s = 5.0, m_l = 5.0;
    std::vector<LadderEntry> entries;  // strictly decreasing radii
    std::vector<std::string> warnings;
};

/// True when (s,l) sits on the critical scaling line 3/s + 2/l = 1.
inline bool is_critical_pair(double s, double l) {
    const double li = std::isinf(l) ? 0.0 : 2.0 / l;
    return std::fabs(3.0 / s + li - 1.0) < 1e-9;
}

namespace detail {

struct SliceIntegrals {
    IntegralValue vsq;   // carries the shared excluded/included volumes
    double vcube = 0.0;
    double grad = 0.0;
    double d3 = 0.0;
    double vpow = 0.0;
    double pdev = 0.0;   // int |p - [p]_{B(r)}|^{3/2}
};

/// Evaluates all enabled functionals at every radius in one slice-major
/// sweep. Slices are processed in parallel; every reduction over slices runs
/// serially in slice order afterwards, so results are independent of the
/// worker count.
class FunctionalSweep {
  public:
    FunctionalSweep(const VelocityField* v, const ScalarField* p,
                    const Center& center, std::span<const double> radii,
                    const FunctionalOptions& opt, bool with_m, double m_s,
                    double m_l)
        : v_(v), p_(p), center_(center), opt_(opt), with_m_(with_m),
          m_s_(m_s), m_l_(m_l),
          grid_((v || p) ? (v ? v->grid() : p->grid())
                         : throw ConfigError("functional sweep needs a field")) {
        if (v_ && p_ && !v_->grid().same_layout(p_->grid()))
            throw ConfigError("velocity and pressure grids differ: " +
                              v_->grid().describe() + " vs " +
                              p_->grid().describe());
        radii_.assign(radii.begin(), radii.end());
        windows_.reserve(radii_.size());
        for (double r : radii_) {
            ParabolicCylinder cyl(center_.x, center_.t, r);
            require_cylinder_inside(grid_, cyl);
            require_radius_resolved(grid_, r);
            windows_.push_back(time_window(grid_, cyl.t_lo(), cyl.t_hi(),
                                           kMinCylinderSlices));
        }
    }

    std::vector<LadderEntry> run() {
        std::vector<LadderEntry> out(radii_.size());
        if (radii_.empty()) return out;
        int seg_lo = windows_[0].seg_lo, seg_hi = windows_[0].seg_hi;
        for (const auto& w : windows_) {
            seg_lo = std::min(seg_lo, w.seg_lo);
            seg_hi = std::max(seg_hi, w.seg_hi);
        }
        const int nslices = seg_hi - seg_lo + 1;
        // results_[k][j - seg_lo]
        results_.assign(radii_.size(),
                        std::vector<SliceIntegrals>(nslices));
        parallel::for_indexed(seg_lo, seg_hi + 1,
                              [&](int j) { process_slice(j, seg_lo); });

        for (std::size_t k = 0; k < radii_.size(); ++k) {
            const double r = radii_[k];
            const auto& w = windows_[k];
            const auto& res = results_[k];
            auto val = [&](auto member) {
                return integrate_time_pwl(grid_, w, [&](int j) {
                    return res[j - seg_lo].*member;
                });
            };
            LadderEntry& e = out[k];
            e.r = r;
            if (v_) {
                double sup_vsq = 0.0;
                for (int j = w.first; j <= w.last; ++j)
                    sup_vsq = std::max(sup_vsq, res[j - seg_lo].vsq.value);
                e.A = sup_vsq / r;
                e.H = integrate_time_pwl(grid_, w, [&](int j) {
                          return res[j - seg_lo].vsq.value;
                      }) / (r * r * r);
                e.C = val(&SliceIntegrals::vcube) / (r * r);
                e.E = val(&SliceIntegrals::grad) / r;
                e.E3 = val(&SliceIntegrals::d3) / r;
                if (with_m_) e.M = finish_mixed_norm(k, seg_lo);
            }
            if (p_) e.D0 = val(&SliceIntegrals::pdev) / (r * r);
            e.excluded_volume = integrate_time_pwl(grid_, w, [&](int j) {
                return res[j - seg_lo].vsq.excluded_volume;
            });
        }
        return out;
    }

  private:
    void process_slice(int j, int seg_lo) {
        const std::size_t n = grid_.nodes_per_slice();
        std::vector<double> vsq, vcube, vpow, gradsq, d3sq;
        if (v_) {
            vsq.resize(n);
            vcube.resize(n);
            if (with_m_) vpow.resize(n);
            const double* s = v_->slice(j);
            for (std::size_t i = 0; i < n; ++i) {
                const double a2 = s[3 * i] * s[3 * i] +
                                  s[3 * i + 1] * s[3 * i + 1] +
                                  s[3 * i + 2] * s[3 * i + 2];
                vsq[i] = a2;
                vcube[i] = a2 * std::sqrt(a2);
                if (with_m_)
                    vpow[i] = m_s_ == 2.0 ? a2 : std::pow(a2, 0.5 * m_s_);
            }
            gradsq.resize(n);
            d3sq.resize(n);
            grad_invariants_slice(*v_, j, &gradsq, &d3sq);
        }
        const auto& loci = v_ ? v_->singular_loci() : p_->singular_loci();
        const bool check = v_ ? v_->singular() : p_->singular();
        for (std::size_t k = 0; k < radii_.size(); ++k) {
            const auto& w = windows_[k];
            if (j < w.seg_lo || j > w.seg_hi) continue;
            const double r = radii_[k];
            SliceIntegrals& si = results_[k][j - seg_lo];
            auto ball = [&](const std::vector<double>& buf) {
                return integrate_ball_fn(
                    grid_,
                    [&](int ix, int iy, int iz) {
                        return buf[grid_.slice_index(iz, iy, ix)];
                    },
                    center_.x, r, opt_.rule, loci, check);
            };
            if (v_) {
                si.vsq = ball(vsq);
                si.vcube = ball(vcube).value;
                si.grad = ball(gradsq).value;
                si.d3 = ball(d3sq).value;
                if (with_m_) si.vpow = ball(vpow).value;
            }
            if (p_) {
                const double* ps = p_->slice(j);
                auto pfn = [&](int ix, int iy, int iz) {
                    return ps[grid_.slice_index(iz, iy, ix)];
                };
                const IntegralValue ip = integrate_ball_fn(
                    grid_, pfn, center_.x, r, opt_.rule, p_->singular_loci(),
                    p_->singular());
                if (!v_) si.vsq = ip;  // volume bookkeeping without velocity
                const double mean =
                    ip.included_volume > 0.0 ? ip.value / ip.included_volume
                                             : 0.0;
                si.pdev = integrate_ball_fn(
                              grid_,
                              [&](int ix, int iy, int iz) {
                                  const double d = pfn(ix, iy, iz) - mean;
                                  const double a = std::fabs(d);
                                  return a * std::sqrt(a);
                              },
                              center_.x, r, opt_.rule, p_->singular_loci(),
                              p_->singular())
                              .value;
            }
        }
    }

    double finish_mixed_norm(std::size_t k, int seg_lo) const {
        const auto& w = windows_[k];
        const auto& res = results_[k];
        if (std::isinf(m_l_)) {
            double sup = 0.0;
            for (int j = w.first; j <= w.last; ++j)
                sup = std::max(sup,
                               std::pow(res[j - seg_lo].vpow, 1.0 / m_s_));
            return sup;
        }
        const double integral = integrate_time_pwl(grid_, w, [&](int j) {
            return std::pow(res[j - seg_lo].vpow, m_l_ / m_s_);
        });
        return std::pow(integral, 1.0 / m_l_);
    }

    const VelocityField* v_;
    const ScalarField* p_;
    Center center_;
    FunctionalOptions opt_;
    bool with_m_;
    double m_s_, m_l_;
    Grid4 grid_;
    std::vector<double> radii_;
    std::vector<TimeWindow> windows_;
    std::vector<std::vector<SliceIntegrals>> results_;
};

inline LadderEntry single_radius(const VelocityField* v, const ScalarField* p,
                                 const ParabolicCylinder& cyl,
                                 const FunctionalOptions& opt,
                                 bool with_m = false, double s = 5,
                                 double l = 5) {
    const double r[1] = {cyl.r};
    FunctionalSweep sweep(v, p, Center{cyl.x0, cyl.t0}, r, opt, with_m, s, l);
    return sweep.run().front();
}

}  // namespace detail

inline double functional_A(const VelocityField& v,
                           const ParabolicCylinder& cyl,
                           const FunctionalOptions& opt = {}) {
    return detail::single_radius(&v, nullptr, cyl, opt).A;
}

inline double functional_E(const VelocityField& v,
                           const ParabolicCylinder& cyl,
                           const FunctionalOptions& opt = {}) {
    return detail::single_radius(&v, nullptr, cyl, opt).E;
}

inline double functional_C(const VelocityField& v,
                           const ParabolicCylinder& cyl,
                           const FunctionalOptions& opt = {}) {
    return detail::single_radius(&v, nullptr, cyl, opt).C;
}

inline double functional_H(const VelocityField& v,
                           const ParabolicCylinder& cyl,
                           const FunctionalOptions& opt = {}) {
    return detail::single_radius(&v, nullptr, cyl, opt).H;
}

inline double functional_E3(const VelocityField& v,
                            const ParabolicCylinder& cyl,
                            const FunctionalOptions& opt = {}) {
    return detail::single_radius(&v, nullptr, cyl, opt).E3;
}

inline double functional_D0(const ScalarField& p, const ParabolicCylinder& cyl,
                            const FunctionalOptions& opt = {}) {
    return *detail::single_radius(nullptr, &p, cyl, opt).D0;
}

struct MixedNormValue {
    double value = 0.0;
    bool critical = false;  // 3/s + 2/l == 1
};

/// M_{s,l}(r) = ||v||_{L_{s,l}(Q(z0,r))} with the Theorem-level exponent
/// constraints s >= 3, l >= 2.
inline MixedNormValue functional_M(const VelocityField& v,
                                   const ParabolicCylinder& cyl, double s,
                                   double l,
                                   const FunctionalOptions& opt = {}) {
    if (!(s >= 3.0)) throw DomainError("M_{s,l} requires s >= 3");
    if (!(l >= 2.0)) throw DomainError("M_{s,l} requires l >= 2");
    return {mixed_norm(v, cyl, s, l, opt.rule), is_critical_pair(s, l)};
}

/// Evaluates every enabled functional at each ladder radius. Radii that fall
/// below the quadrature floor truncate the ladder with a warning record;
/// nothing is extrapolated.
inline FunctionalLadder build_ladder(const VelocityField& v,
                                     const ScalarField* p,
                                     const Center& center,
                                     const LadderConfig& cfg,
                                     const FunctionalOptions& opt = {}) {
    cfg.validate();
    FunctionalLadder ladder;
    ladder.center = center;
    ladder.theta = cfg.theta;
    ladder.m_s = cfg.m_s;
    ladder.m_l = cfg.m_l;
    std::vector<double> radii;
    double r = cfg.r0;
    for (int k = 0; k < cfg.count; ++k, r *= cfg.theta) {
        try {
            ParabolicCylinder cyl(center.x, center.t, r);
            require_cylinder_inside(v.grid(), cyl);
            detail::require_radius_resolved(v.grid(), r);
            detail::time_window(v.grid(), cyl.t_lo(), cyl.t_hi(),
                                kMinCylinderSlices);
        } catch (const ResolutionError& e) {
            ladder.warnings.push_back("ladder truncated at r=" +
                                      std::to_string(r) + ": " + e.what());
            break;
        }
        radii.push_back(r);
    }
    if (radii.empty())
        throw ResolutionError("no ladder radius above the resolution floor",
                              2.0 * v.grid().max_spacing());
    detail::FunctionalSweep sweep(&v, p, center, radii, opt, cfg.with_m,
                                  cfg.m_s, cfg.m_l);
    ladder.entries = sweep.run();
    return ladder;
}

}  // namespace morrey
