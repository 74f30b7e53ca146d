#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morrey/cutoff.hpp"
#include "morrey/errors.hpp"
#include "morrey/field.hpp"
#include "morrey/functionals.hpp"
#include "morrey/operators.hpp"
#include "morrey/parallel.hpp"
#include "morrey/quadrature.hpp"

namespace morrey {

enum class InequalityId {
    I21,     // C(r) <= c[(rho/r)^3 A^{3/4} E^{3/4}(rho) + (r/rho)^3 A^{3/2}(rho)]
    I22,     // A(R/2)+E(R/2) <= c[C^{2/3}+C+C^{1/3}D0^{2/3}](R)
    I23,     // A(R/2)+E(R/2) <= c[C^{2/3}+C^{1/3}D0^{2/3}+A^{1/2}C^{2/3}E^{1/2}](R)
    I24,     // D0(r) <= c[(r/rho)^{5/2}D0(rho) + (rho/r)^2 C(rho)]
    I25,     // ... + (rho/r)^2 A^{1/2}(rho) E(rho)
    I26,     // ... + (rho/r)^3 A^{3/4}(rho) E^{3/4}(rho)
    L21a,    // A^{3/2}+C+D0^2 (r) <= d(E0)(r^{1/2}(A^{3/2}(1)+D0^2(1))+1)
    L21b,    // A+D0+E (r) <= c(r^2 D0(1)+C0+C0^{2/3})
    L21c,    // C^{4/3}+D0+E (r) <= e(A0)(r^2(D0(1)+E(1))+1)
    LEI,     // local energy inequality at time t
    LL3_16,  // linear problem slice estimate for |v|^2
    LL3_17,  // linear problem slice estimate for w = |v|^{3/2}
    E18,     // linear problem energy identity (audited as equality)
};

inline const char* to_string(InequalityId id) {
    switch (id) {
        case InequalityId::I21: return "I21";
        case InequalityId::I22: return "I22";
        case InequalityId::I23: return "I23";
        case InequalityId::I24: return "I24";
        case InequalityId::I25: return "I25";
        case InequalityId::I26: return "I26";
        case InequalityId::L21a: return "L21a";
        case InequalityId::L21b: return "L21b";
        case InequalityId::L21c: return "L21c";
        case InequalityId::LEI: return "LEI";
        case InequalityId::LL3_16: return "LL3_16";
        case InequalityId::LL3_17: return "LL3_17";
        case InequalityId::E18: return "E18";
    }
    return "?";
}

inline InequalityId inequality_from_string(const std::string& s) {
    for (InequalityId id :
         {InequalityId::I21, InequalityId::I22, InequalityId::I23,
          InequalityId::I24, InequalityId::I25, InequalityId::I26,
          InequalityId::L21a, InequalityId::L21b, InequalityId::L21c,
          InequalityId::LEI, InequalityId::LL3_16, InequalityId::LL3_17,
          InequalityId::E18})
        if (s == to_string(id)) return id;
    throw ConfigError("unknown inequality id '" + s + "'");
}

/// One empirical check of a paper inequality: both sides plus their ratio.
/// The ratio stands in for the inequality's universal constant, which is
/// never numeric in the source estimates.
struct InequalityAudit {
    InequalityId id{};
    std::map<std::string, double> params;
    double lhs = 0.0;
    double rhs_core = 0.0;  // the bracketed, constant-free expression
    double implied_constant = 0.0;
};

inline double implied_constant(double lhs, double rhs_core) {
    if (lhs <= 0.0) return 0.0;
    if (rhs_core == 0.0) return std::numeric_limits<double>::infinity();
    return lhs / rhs_core;
}

/// Lazily evaluated functionals at one center, shared across a batch of
/// audits so each radius is integrated once.
class FunctionalCache {
  public:
    FunctionalCache(const VelocityField& v, const ScalarField* p,
                    const Center& center, const FunctionalOptions& opt = {})
        : v_(&v), p_(p), center_(center), opt_(opt) {}

    const LadderEntry& at(double r) {
        auto it = cache_.find(r);
        if (it == cache_.end()) {
            ParabolicCylinder cyl(center_.x, center_.t, r);
            it = cache_.emplace(r, detail::single_radius(v_, p_, cyl, opt_))
                     .first;
        }
        return it->second;
    }

    /// Evaluates a batch of radii in one slice-major sweep.
    void prime(std::span<const double> radii) {
        std::vector<double> missing;
        for (double r : radii)
            if (!cache_.count(r)) missing.push_back(r);
        if (missing.empty()) return;
        std::sort(missing.begin(), missing.end(), std::greater<>());
        detail::FunctionalSweep sweep(v_, p_, center_, missing, opt_, false,
                                      5.0, 5.0);
        for (LadderEntry& e : sweep.run()) cache_.emplace(e.r, std::move(e));
    }

    double D0_at(double r) {
        const LadderEntry& e = at(r);
        if (!e.D0)
            throw ConfigError(
                "audit requires a pressure field (D0 unavailable)");
        return *e.D0;
    }

    bool has_pressure() const { return p_ != nullptr; }
    const Center& center() const { return center_; }
    const VelocityField& velocity() const { return *v_; }
    const ScalarField* pressure() const { return p_; }

  private:
    const VelocityField* v_;
    const ScalarField* p_;
    Center center_;
    FunctionalOptions opt_;
    std::map<double, LadderEntry> cache_;
};

// ---------------------------------------------------------------------------
// Section 2 estimates
// ---------------------------------------------------------------------------

inline InequalityAudit audit_interpolation_21(FunctionalCache& fc, double r,
                                              double rho) {
    if (!(r > 0.0) || !(r <= rho))
        throw DomainError("I21 requires 0 < r <= rho");
    const LadderEntry& small = fc.at(r);
    const LadderEntry& big = fc.at(rho);
    InequalityAudit a;
    a.id = InequalityId::I21;
    a.params = {{"r", r}, {"rho", rho}};
    a.lhs = small.C;
    const double q = rho / r;
    a.rhs_core = q * q * q * std::pow(big.A, 0.75) * std::pow(big.E, 0.75) +
                 std::pow(big.A, 1.5) / (q * q * q);
    a.implied_constant = implied_constant(a.lhs, a.rhs_core);
    return a;
}

inline InequalityAudit audit_energy_22(FunctionalCache& fc, double R) {
    const LadderEntry& half = fc.at(0.5 * R);
    const LadderEntry& full = fc.at(R);
    const double d0 = fc.D0_at(R);
    InequalityAudit a;
    a.id = InequalityId::I22;
    a.params = {{"R", R}};
    a.lhs = half.A + half.E;
    a.rhs_core = std::pow(full.C, 2.0 / 3.0) + full.C +
                 std::pow(full.C, 1.0 / 3.0) * std::pow(d0, 2.0 / 3.0);
    a.implied_constant = implied_constant(a.lhs, a.rhs_core);
    return a;
}

inline InequalityAudit audit_energy_23(FunctionalCache& fc, double R) {
    const LadderEntry& half = fc.at(0.5 * R);
    const LadderEntry& full = fc.at(R);
    const double d0 = fc.D0_at(R);
    InequalityAudit a;
    a.id = InequalityId::I23;
    a.params = {{"R", R}};
    a.lhs = half.A + half.E;
    a.rhs_core = std::pow(full.C, 2.0 / 3.0) +
                 std::pow(full.C, 1.0 / 3.0) * std::pow(d0, 2.0 / 3.0) +
                 std::sqrt(full.A) * std::pow(full.C, 2.0 / 3.0) *
                     std::sqrt(full.E);
    a.implied_constant = implied_constant(a.lhs, a.rhs_core);
    return a;
}

/// Pressure decay estimates; variant selects the second bracket term:
/// 24 -> (rho/r)^2 C(rho), 25 -> (rho/r)^2 A^{1/2}(rho) E(rho),
/// 26 -> (rho/r)^3 A^{3/4}(rho) E^{3/4}(rho).
inline InequalityAudit audit_pressure_decay(int variant, FunctionalCache& fc,
                                            double r, double rho) {
    if (variant < 24 || variant > 26)
        throw ConfigError("pressure decay variant must be 24, 25 or 26");
    if (!(r > 0.0) || !(r <= rho))
        throw DomainError("pressure decay requires 0 < r <= rho");
    if (rho / r > 8.0 + 1e-9)
        throw DomainError(
            "pressure decay audited only for rho/r <= 8 so both radii stay "
            "well resolved on one grid");
    const double d0_small = fc.D0_at(r);
    const LadderEntry& big = fc.at(rho);
    const double d0_big = fc.D0_at(rho);
    const double q = rho / r;
    InequalityAudit a;
    a.id = variant == 24 ? InequalityId::I24
                        : (variant == 25 ? InequalityId::I25
                                         : InequalityId::I26);
    a.params = {{"r", r}, {"rho", rho}};
    a.lhs = d0_small;
    const double decay = std::pow(1.0 / q, 2.5) * d0_big;
    double x = 0.0;
    if (variant == 24) x = q * q * big.C;
    if (variant == 25) x = q * q * std::sqrt(big.A) * big.E;
    if (variant == 26)
        x = q * q * q * std::pow(big.A, 0.75) * std::pow(big.E, 0.75);
    a.rhs_core = decay + x;
    a.implied_constant = implied_constant(a.lhs, a.rhs_core);
    return a;
}

/// Lemma 2.1 boundedness transfers, one audit per admissible ladder radius.
/// part 'a': r <= 1/4, premise E0; 'b'/'c': r <= 1/2, premises C0 / A0.
/// Premises are sups over the supplied ladder radii and are reported in the
/// params of every audit.
inline std::vector<InequalityAudit> audit_lemma21(
    char part, FunctionalCache& fc, std::span<const double> ladder_radii) {
    if (part != 'a' && part != 'b' && part != 'c')
        throw ConfigError("lemma 2.1 part must be 'a', 'b' or 'c'");
    const double r_cap = part == 'a' ? 0.25 : 0.5;
    std::vector<double> admissible;
    for (double r : ladder_radii)
        if (r <= r_cap * (1.0 + 1e-9)) admissible.push_back(r);
    if (admissible.empty())
        throw DomainError("no ladder radius within the admissible range r <= " +
                          std::to_string(r_cap));
    double premise = 0.0;
    for (double r : ladder_radii) {
        const LadderEntry& e = fc.at(r);
        premise = std::max(premise,
                           part == 'a' ? e.E : (part == 'b' ? e.C : e.A));
    }
    const LadderEntry& unit = fc.at(1.0);
    const double d0_unit = fc.D0_at(1.0);
    std::vector<InequalityAudit> out;
    for (double r : admissible) {
        const LadderEntry& e = fc.at(r);
        const double d0 = fc.D0_at(r);
        InequalityAudit a;
        a.params["r"] = r;
        if (part == 'a') {
            a.id = InequalityId::L21a;
            a.params["premise_E0"] = premise;
            a.lhs = std::pow(e.A, 1.5) + e.C + d0 * d0;
            a.rhs_core = std::sqrt(r) * (std::pow(unit.A, 1.5) +
                                         d0_unit * d0_unit) +
                         1.0;
        } else if (part == 'b') {
            a.id = InequalityId::L21b;
            a.params["premise_C0"] = premise;
            a.lhs = e.A + d0 + e.E;
            a.rhs_core = r * r * d0_unit + premise +
                         std::pow(premise, 2.0 / 3.0);
        } else {
            a.id = InequalityId::L21c;
            a.params["premise_A0"] = premise;
            a.lhs = std::pow(e.C, 4.0 / 3.0) + d0 + e.E;
            a.rhs_core = r * r * (d0_unit + unit.E) + 1.0;
        }
        a.implied_constant = implied_constant(a.lhs, a.rhs_core);
        out.push_back(std::move(a));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Local energy inequality (Definition-level, on the unit cylinder)
// ---------------------------------------------------------------------------

struct LocalEnergyTerms {
    double lhs_instant = 0.0;    // int phi(.,t) |v(.,t)|^2
    double lhs_dirichlet = 0.0;  // 2 int_{-1}^t int phi |grad v|^2
    double rhs_parabolic = 0.0;  // int int |v|^2 (lap phi + d_t phi)
    double rhs_transport = 0.0;  // int int (v . grad phi)(|v|^2 + 2p)
    double lhs() const { return lhs_instant + lhs_dirichlet; }
    double rhs() const { return rhs_parabolic + rhs_transport; }
    double residual() const { return rhs() - lhs(); }
};

namespace detail {

inline void require_vanishing_near_parabolic_boundary(const CutoffSpec& c) {
    c.validate();
    // Sampled check: phi must vanish on a shell near the lateral boundary of
    // B(0,1) and near the initial time t = -1.
    const double tol = 1e-12 * c.amplitude;
    const double golden = 2.39996322972865332;  // Fibonacci sphere angle
    for (double rr : {0.97, 0.985, 1.0}) {
        for (int k = 0; k < 128; ++k) {
            const double z = 1.0 - 2.0 * (k + 0.5) / 128.0;
            const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double ang = golden * k;
            const Vec3 x{rr * s * std::cos(ang), rr * s * std::sin(ang),
                         rr * z};
            for (double t : {-0.999, -0.5, -0.1})
                if (std::fabs(eval_cutoff(c, x, t).phi) > tol)
                    throw ContractError(
                        "cutoff does not vanish near the lateral boundary of "
                        "B(0,1)");
        }
    }
    for (double frac : {0.0, 0.25, 0.5}) {
        const Vec3 x = frac * c.center;
        for (double t : {-1.0, -0.9995})
            if (std::fabs(eval_cutoff(c, x, t).phi) > tol)
                throw ContractError("cutoff does not vanish near t = -1");
        if (std::fabs(eval_cutoff(c, c.center, -1.0).phi) > tol)
            throw ContractError("cutoff does not vanish near t = -1");
    }
}

}  // namespace detail

/// Both sides of the local energy inequality over B(0,1) x (-1, t] with an
/// analytic cutoff. Equality holds for smooth exact solutions, so the
/// residual doubles as a solution detector.
inline LocalEnergyTerms local_energy_terms(const VelocityField& v,
                                           const ScalarField* p,
                                           const CutoffSpec& cutoff, double t,
                                           const FunctionalOptions& opt = {}) {
    detail::require_vanishing_near_parabolic_boundary(cutoff);
    const Grid4& g = v.grid();
    if (p && !p->grid().same_layout(g))
        throw ConfigError("velocity and pressure grids differ: " +
                          g.describe() + " vs " + p->grid().describe());
    if (!(t > -1.0) || !(t < 0.0))
        throw DomainError("local energy audit time must lie in (-1,0)");
    const Vec3 origin{0, 0, 0};
    g.require_ball_inside(origin, 1.0);
    const detail::TimeWindow w =
        detail::time_window(g, -1.0, t, kMinCylinderSlices);
    const std::size_t n = g.nodes_per_slice();

    struct SliceVals {
        double dirichlet = 0.0, parabolic = 0.0, transport = 0.0;
    };
    std::vector<SliceVals> per_slice(w.seg_hi - w.seg_lo + 1);
    parallel::for_indexed(w.seg_lo, w.seg_hi + 1, [&](int j) {
        const double tj = g.t(j);
        std::vector<double> gradsq(n);
        grad_invariants_slice(v, j, &gradsq, nullptr);
        std::vector<double> b_dir(n), b_par(n), b_tra(n);
        const double* vs = v.slice(j);
        const double* ps = p ? p->slice(j) : nullptr;
        for (int iz = 0; iz < g.nz; ++iz)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix) {
                    const std::size_t node = g.slice_index(iz, iy, ix);
                    const CutoffValues cv =
                        eval_cutoff(cutoff, g.node(ix, iy, iz), tj);
                    const double* vv = vs + node * 3;
                    const double vsq =
                        vv[0] * vv[0] + vv[1] * vv[1] + vv[2] * vv[2];
                    b_dir[node] = cv.phi * gradsq[node];
                    b_par[node] = vsq * (cv.laplacian + cv.dphi_dt);
                    const double vdotg = vv[0] * cv.grad[0] +
                                         vv[1] * cv.grad[1] +
                                         vv[2] * cv.grad[2];
                    const double pr = ps ? ps[node] : 0.0;
                    b_tra[node] = vdotg * (vsq + 2.0 * pr);
                }
        auto ball = [&](const std::vector<double>& buf) {
            return integrate_ball_fn(
                       g,
                       [&](int ix, int iy, int iz) {
                           return buf[g.slice_index(iz, iy, ix)];
                       },
                       origin, 1.0, opt.rule, v.singular_loci(), v.singular())
                .value;
        };
        SliceVals& sv = per_slice[j - w.seg_lo];
        sv.dirichlet = ball(b_dir);
        sv.parabolic = ball(b_par);
        sv.transport = ball(b_tra);
    });

    LocalEnergyTerms out;
    out.lhs_dirichlet = 2.0 * detail::integrate_time_pwl(g, w, [&](int j) {
        return per_slice[j - w.seg_lo].dirichlet;
    });
    out.rhs_parabolic = detail::integrate_time_pwl(g, w, [&](int j) {
        return per_slice[j - w.seg_lo].parabolic;
    });
    out.rhs_transport = detail::integrate_time_pwl(g, w, [&](int j) {
        return per_slice[j - w.seg_lo].transport;
    });

    // Instantaneous kinetic term at the exact time t (linear interpolation
    // of the velocity between the bracketing slices).
    {
        const double dtg = g.dt();
        int j0 = int(std::floor((t - g.t_min) / dtg));
        j0 = std::clamp(j0, 0, g.nt - 2);
        const double f = (t - g.t(j0)) / dtg;
        const double* s0 = v.slice(j0);
        const double* s1 = v.slice(j0 + 1);
        std::vector<double> buf(n);
        for (int iz = 0; iz < g.nz; ++iz)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix) {
                    const std::size_t node = g.slice_index(iz, iy, ix);
                    double vsq = 0.0;
                    for (int c = 0; c < 3; ++c) {
                        const double val = (1.0 - f) * s0[node * 3 + c] +
                                           f * s1[node * 3 + c];
                        vsq += val * val;
                    }
                    buf[node] =
                        eval_cutoff(cutoff, g.node(ix, iy, iz), t).phi * vsq;
                }
        out.lhs_instant =
            integrate_ball_fn(
                g,
                [&](int ix, int iy, int iz) {
                    return buf[g.slice_index(iz, iy, ix)];
                },
                origin, 1.0, opt.rule, v.singular_loci(), v.singular())
                .value;
    }
    return out;
}

/// RHS - LHS of the local energy inequality; non-negative means satisfied.
inline double local_energy_residual(const VelocityField& v,
                                    const ScalarField* p,
                                    const CutoffSpec& cutoff, double t,
                                    const FunctionalOptions& opt = {}) {
    return local_energy_terms(v, p, cutoff, t, opt).residual();
}

inline InequalityAudit audit_local_energy(const VelocityField& v,
                                          const ScalarField* p,
                                          const CutoffSpec& cutoff, double t,
                                          const FunctionalOptions& opt = {}) {
    const LocalEnergyTerms terms = local_energy_terms(v, p, cutoff, t, opt);
    InequalityAudit a;
    a.id = InequalityId::LEI;
    a.params = {{"t", t}, {"residual", terms.residual()}};
    a.lhs = terms.lhs();
    a.rhs_core = terms.rhs();
    a.implied_constant = implied_constant(a.lhs, a.rhs_core);
    return a;
}

// ---------------------------------------------------------------------------
// Appendix: linear problem audits on manufactured triples
// ---------------------------------------------------------------------------

struct LinearLemmaAudit {
    InequalityAudit l16;
    InequalityAudit l17;
    InequalityAudit e18;       // energy identity, audited as lhs vs rhs
    double l18_residual = 0.0; // |lhs - rhs| of the identity
    double dirichlet = 0.0;    // int_B |grad v|^2, the natural normalizer
    double used_t = 0.0;       // audit time snapped to the nearest slice
};

/// Slice-level audits of the linear-problem estimates and energy identity
/// for a manufactured triple f = d_t v + (u . grad) v - lap v with v
/// vanishing on the lateral boundary and div u = 0.
inline LinearLemmaAudit audit_linear_lemma(const VelocityField& v,
                                           const VelocityField& u,
                                           const VelocityField& f, double t,
                                           const FunctionalOptions& opt = {},
                                           double div_tolerance = 0.05) {
    const Grid4& g = v.grid();
    if (!u.grid().same_layout(g) || !f.grid().same_layout(g))
        throw ConfigError("linear lemma triple must share one grid");
    const double div_res = divergence_residual(u);
    if (div_res > div_tolerance)
        throw ContractError("transport field is not divergence-free: residual " +
                            std::to_string(div_res) + " exceeds tolerance " +
                            std::to_string(div_tolerance));
    const Vec3 origin{0, 0, 0};
    g.require_ball_inside(origin, 1.0);
    const double dtg = g.dt();
    int j = int(std::lround((t - g.t_min) / dtg));
    j = std::clamp(j, 1, g.nt - 2);  // centered time stencil
    const std::size_t n = g.nodes_per_slice();

    auto ball = [&](const std::vector<double>& buf) {
        return integrate_ball_fn(
                   g,
                   [&](int ix, int iy, int iz) {
                       return buf[g.slice_index(iz, iy, ix)];
                   },
                   origin, 1.0, opt.rule)
            .value;
    };
    auto vsq_at = [&](int jj, std::vector<double>& buf) {
        const double* s = v.slice(jj);
        for (std::size_t i = 0; i < n; ++i)
            buf[i] = s[3 * i] * s[3 * i] + s[3 * i + 1] * s[3 * i + 1] +
                     s[3 * i + 2] * s[3 * i + 2];
    };

    std::vector<double> buf(n), wbuf(n);
    // I(t) = int |v|^2 and W(t) = int |v|^3 at the three stencil slices.
    double I[3], W[3];
    for (int k = -1; k <= 1; ++k) {
        vsq_at(j + k, buf);
        I[k + 1] = ball(buf);
        for (std::size_t i = 0; i < n; ++i) buf[i] *= std::sqrt(buf[i]);
        W[k + 1] = ball(buf);
    }
    const double dIdt = (I[2] - I[0]) / (2.0 * dtg);
    const double dWdt = (W[2] - W[0]) / (2.0 * dtg);

    std::vector<double> gradsq(n);
    grad_invariants_slice(v, j, &gradsq, nullptr);
    const double dirichlet = ball(gradsq);

    // w = |v|^{3/2} and its Dirichlet integral.
    vsq_at(j, buf);
    for (std::size_t i = 0; i < n; ++i) wbuf[i] = std::pow(buf[i], 0.75);
    std::vector<double> wgrad[3];
    for (auto& c : wgrad) c.resize(n);
    scalar_gradient_slice(g, wbuf, wgrad);
    std::vector<double> wgradsq(n);
    for (std::size_t i = 0; i < n; ++i)
        wgradsq[i] = wgrad[0][i] * wgrad[0][i] + wgrad[1][i] * wgrad[1][i] +
                     wgrad[2][i] * wgrad[2][i];
    const double w_dirichlet = ball(wgradsq);

    // Forcing and transport-divergence integrals at slice j.
    const double* fs = f.slice(j);
    for (std::size_t i = 0; i < n; ++i) {
        const double f2 = fs[3 * i] * fs[3 * i] + fs[3 * i + 1] * fs[3 * i + 1] +
                          fs[3 * i + 2] * fs[3 * i + 2];
        buf[i] = std::pow(f2, 5.0 / 6.0);  // |f|^{5/3}
    }
    const double F = ball(buf);

    std::vector<double> divu(n);
    divergence_slice(u, j, divu);
    for (std::size_t i = 0; i < n; ++i)
        buf[i] = std::pow(std::fabs(divu[i]), 2.5);
    const double DivU = ball(buf);

    const double* vs = v.slice(j);
    for (std::size_t i = 0; i < n; ++i)
        buf[i] = fs[3 * i] * vs[3 * i] + fs[3 * i + 1] * vs[3 * i + 1] +
                 fs[3 * i + 2] * vs[3 * i + 2];
    const double Ffv = ball(buf);
    for (std::size_t i = 0; i < n; ++i) {
        const double vsq = vs[3 * i] * vs[3 * i] + vs[3 * i + 1] * vs[3 * i + 1] +
                           vs[3 * i + 2] * vs[3 * i + 2];
        buf[i] = vsq * divu[i];
    }
    const double VsqDivU = ball(buf);

    LinearLemmaAudit out;
    out.used_t = g.t(j);
    out.dirichlet = dirichlet;

    {
        InequalityAudit& a = out.l16;
        a.id = InequalityId::LL3_16;
        const double raw = dIdt + dirichlet;
        a.params = {{"t", out.used_t}, {"lhs_raw", raw}};
        a.lhs = std::max(raw, 0.0);
        a.rhs_core = std::sqrt(F) + (F + DivU) * I[1];
        a.implied_constant = implied_constant(a.lhs, a.rhs_core);
    }
    {
        InequalityAudit& a = out.l17;
        a.id = InequalityId::LL3_17;
        const double raw = dWdt + w_dirichlet;
        a.params = {{"t", out.used_t}, {"lhs_raw", raw}};
        a.lhs = std::max(raw, 0.0);
        a.rhs_core = F * std::pow(W[1], 4.0 / 9.0) + DivU * W[1];
        a.implied_constant = implied_constant(a.lhs, a.rhs_core);
    }
    {
        InequalityAudit& a = out.e18;
        a.id = InequalityId::E18;
        a.lhs = 0.5 * dIdt + dirichlet;
        a.rhs_core = Ffv + 0.5 * VsqDivU;
        a.params = {{"t", out.used_t}};
        a.implied_constant = implied_constant(std::max(a.lhs, 0.0), a.rhs_core);
        out.l18_residual = std::fabs(a.lhs - a.rhs_core);
    }
    return out;
}

/// Norms the Appendix existence theorem controls: (||v||_{L_{3,inf}(Q)},
/// ||v||_{L_5(Q)}) on the unit cylinder.
inline std::pair<double, double> linear_norm_report(
    const VelocityField& v, const FunctionalOptions& opt = {}) {
    const ParabolicCylinder q({0, 0, 0}, 0.0, 1.0);
    return {mixed_norm(v, q, 3.0, kInfExponent, opt.rule),
            mixed_norm(v, q, 5.0, 5.0, opt.rule)};
}

}  // namespace morrey
