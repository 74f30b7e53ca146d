#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morrey/errors.hpp"
#include "morrey/field.hpp"
#include "morrey/functionals.hpp"
#include "morrey/parallel.hpp"

namespace morrey {

enum class Criterion { CKN_12, LPS_13, MAIN_14, COR_15, COR_16, E3_17 };

inline const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::CKN_12: return "CKN_12";
        case Criterion::LPS_13: return "LPS_13";
        case Criterion::MAIN_14: return "MAIN_14";
        case Criterion::COR_15: return "COR_15";
        case Criterion::COR_16: return "COR_16";
        case Criterion::E3_17: return "E3_17";
    }
    return "?";
}

inline Criterion criterion_from_string(const std::string& s) {
    for (Criterion c : {Criterion::CKN_12, Criterion::LPS_13,
                        Criterion::MAIN_14, Criterion::COR_15,
                        Criterion::COR_16, Criterion::E3_17})
        if (s == to_string(c)) return c;
    throw ConfigError("unknown criterion '" + s + "'");
}

enum class VerdictStatus { satisfied, not_satisfied, indeterminate };

inline const char* to_string(VerdictStatus v) {
    switch (v) {
        case VerdictStatus::satisfied: return "satisfied";
        case VerdictStatus::not_satisfied: return "not_satisfied";
        case VerdictStatus::indeterminate: return "indeterminate";
    }
    return "?";
}

/// User-supplied smallness thresholds. The source theorems only prove the
/// existence of eps0, eps(M), ... (compactness arguments); nothing numeric
/// is available, so verdicts are always relative to these values.
struct Thresholds {
    double eps0 = 0.0;      // CKN_12: sup E < eps0
    double eps_bar0 = 0.0;  // LPS_13: sup M_{s,l} < eps_bar0
    double bound_M = 0.0;   // MAIN_14 / COR_15 / E3_17: G (or limsup E) < M
    double eps_M = 0.0;     // MAIN_14 / COR_15: g (or liminf E) < eps(M)
    double eps_hat = 0.0;   // E3_17: liminf E3 < eps_hat(M)
    double zero_tol = 1e-6; // COR_16: discrete surrogate for g = 0
};

struct LimitEstimates {
    double limsup_est = 0.0;  // max over the tail (smallest radii)
    double liminf_est = 0.0;  // min over the tail
    double sup_est = 0.0;     // max over the whole ladder
};

/// Discrete surrogate for the r->0 limits; exact as a function of the ladder
/// values (ordered by decreasing radius).
inline LimitEstimates estimate_limits(std::span<const double> values,
                                      int tail) {
    if (tail < 3) throw DomainError("limit estimates need a tail of >= 3 radii");
    if (int(values.size()) < tail)
        throw DomainError("tail of " + std::to_string(tail) +
                          " exceeds ladder length " +
                          std::to_string(values.size()));
    LimitEstimates e;
    e.sup_est = *std::max_element(values.begin(), values.end());
    const auto tail_begin = values.end() - tail;
    e.limsup_est = *std::max_element(tail_begin, values.end());
    e.liminf_est = *std::min_element(tail_begin, values.end());
    return e;
}

struct CriterionVerdict {
    Criterion criterion{};
    Center center;
    VerdictStatus verdict = VerdictStatus::indeterminate;
    std::map<std::string, double> quantities;
    Thresholds thresholds;
    std::vector<std::string> notes;
};

namespace detail {

inline std::vector<double> ladder_values(const FunctionalLadder& ladder,
                                         double LadderEntry::*member) {
    std::vector<double> out;
    out.reserve(ladder.entries.size());
    for (const auto& e : ladder.entries) out.push_back(e.*member);
    return out;
}

inline void require_positive(double v, const char* name) {
    if (!(v > 0.0))
        throw ConfigError(std::string("threshold ") + name +
                          " must be positive");
}

}  // namespace detail

/// G = inf of the tail-limsup estimates of {E, C, A}; g = inf of the
/// tail-liminf estimates of {E, C, A, H, D0}. Requires pressure values in
/// the ladder (D0 enters g).
inline std::pair<double, double> compute_G_g(const FunctionalLadder& ladder,
                                             int tail) {
    for (const auto& e : ladder.entries)
        if (!e.D0)
            throw ConfigError("compute_G_g requires D0 (pressure) values");
    const auto A = detail::ladder_values(ladder, &LadderEntry::A);
    const auto E = detail::ladder_values(ladder, &LadderEntry::E);
    const auto C = detail::ladder_values(ladder, &LadderEntry::C);
    const auto H = detail::ladder_values(ladder, &LadderEntry::H);
    std::vector<double> D0;
    for (const auto& e : ladder.entries) D0.push_back(*e.D0);
    const double G = std::min({estimate_limits(E, tail).limsup_est,
                               estimate_limits(C, tail).limsup_est,
                               estimate_limits(A, tail).limsup_est});
    const double g = std::min({estimate_limits(E, tail).liminf_est,
                               estimate_limits(C, tail).liminf_est,
                               estimate_limits(A, tail).liminf_est,
                               estimate_limits(H, tail).liminf_est,
                               estimate_limits(D0, tail).liminf_est});
    return {G, g};
}

/// Verdict from an already-built ladder. `tail` counts the smallest radii
/// used for the limsup/liminf surrogates; fewer than 3 usable tail radii
/// yields an indeterminate verdict, never a guess.
inline CriterionVerdict evaluate_criterion_from_ladder(
    Criterion criterion, const FunctionalLadder& ladder,
    const Thresholds& thr, int tail, bool proposition_mode = false) {
    CriterionVerdict out;
    out.criterion = criterion;
    out.center = ladder.center;
    out.thresholds = thr;
    for (const auto& w : ladder.warnings) out.notes.push_back(w);

    const int n = int(ladder.entries.size());
    const int usable_tail = std::min(tail, n);
    out.quantities["ladder_size"] = n;
    out.quantities["tail"] = usable_tail;
    if (n > 0)
        out.quantities["r_floor"] = ladder.entries.back().r;

    auto values = [&](double LadderEntry::*m) {
        return detail::ladder_values(ladder, m);
    };
    auto sup_of = [&](double LadderEntry::*m) {
        const auto v = values(m);
        return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
    };

    const bool needs_limits = criterion != Criterion::CKN_12 &&
                              criterion != Criterion::LPS_13;
    if (needs_limits && usable_tail < 3) {
        out.verdict = VerdictStatus::indeterminate;
        out.notes.push_back(
            "limit estimates rest on fewer than 3 tail radii");
        return out;
    }

    switch (criterion) {
        case Criterion::CKN_12: {
            detail::require_positive(thr.eps0, "eps0");
            const double sup_E = sup_of(&LadderEntry::E);
            out.quantities["sup_E"] = sup_E;
            out.verdict = sup_E < thr.eps0 ? VerdictStatus::satisfied
                                           : VerdictStatus::not_satisfied;
            break;
        }
        case Criterion::LPS_13: {
            detail::require_positive(thr.eps_bar0, "eps_bar0");
            std::vector<double> m;
            for (const auto& e : ladder.entries) {
                if (!e.M)
                    throw ConfigError(
                        "LPS_13 needs M_{s,l} values in the ladder");
                m.push_back(*e.M);
            }
            // sup over 0 < r <= 1 of M_{s,l}(r), the paper's M_{s,l}(1).
            const double sup_M = *std::max_element(m.begin(), m.end());
            out.quantities["sup_M"] = sup_M;
            out.quantities["m_s"] = ladder.m_s;
            out.quantities["m_l"] = ladder.m_l;
            if (!is_critical_pair(ladder.m_s, ladder.m_l))
                out.notes.push_back("(s,l) is not a critical pair");
            out.verdict = sup_M < thr.eps_bar0 ? VerdictStatus::satisfied
                                               : VerdictStatus::not_satisfied;
            break;
        }
        case Criterion::MAIN_14:
        case Criterion::COR_16: {
            for (const auto& e : ladder.entries)
                if (!e.D0)
                    throw ConfigError(
                        "criterion needs D0: provide a pressure field");

            int effective_tail = usable_tail;
            if (proposition_mode) {
                // r_* < min{1/4, (A^{3/2}(1)+D0^2(1))^{-2}} from the
                // contradiction argument; enforced on the tail radii.
                const LadderEntry* unit = nullptr;
                for (const auto& e : ladder.entries)
                    if (std::fabs(e.r - 1.0) < 1e-12) unit = &e;
                if (!unit)
                    throw ConfigError(
                        "proposition mode needs the ladder to include r=1");
                const double denom =
                    std::pow(std::pow(unit->A, 1.5) + (*unit->D0) * (*unit->D0),
                             2.0);
                const double cap =
                    std::min(0.25, denom > 0.0
                                       ? 1.0 / denom
                                       : std::numeric_limits<double>::infinity());
                out.quantities["proposition_r_cap"] = cap;
                int ok = 0;
                for (const auto& e : ladder.entries)
                    if (e.r < cap) ++ok;
                effective_tail = std::min(usable_tail, ok);
                if (effective_tail < 3) {
                    out.verdict = VerdictStatus::indeterminate;
                    out.notes.push_back(
                        "fewer than 3 ladder radii below the proposition "
                        "radius cap");
                    return out;
                }
            }
            const auto [G, g] = compute_G_g(ladder, effective_tail);
            out.quantities["G_est"] = G;
            out.quantities["g_est"] = g;
            if (criterion == Criterion::MAIN_14) {
                detail::require_positive(thr.bound_M, "M");
                detail::require_positive(thr.eps_M, "eps_M");
                out.verdict = (G < thr.bound_M && g < thr.eps_M)
                                  ? VerdictStatus::satisfied
                                  : VerdictStatus::not_satisfied;
            } else {
                detail::require_positive(thr.zero_tol, "zero_tol");
                out.notes.push_back(
                    "g = 0 audited as g_est < zero_tol; G < +inf audited as "
                    "finiteness of G_est");
                out.verdict = (std::isfinite(G) && g < thr.zero_tol)
                                  ? VerdictStatus::satisfied
                                  : VerdictStatus::not_satisfied;
            }
            break;
        }
        case Criterion::COR_15: {
            detail::require_positive(thr.bound_M, "M");
            detail::require_positive(thr.eps_M, "eps_M");
            const auto lim = estimate_limits(values(&LadderEntry::E),
                                             usable_tail);
            out.quantities["limsup_E"] = lim.limsup_est;
            out.quantities["liminf_E"] = lim.liminf_est;
            out.verdict = (lim.limsup_est < thr.bound_M &&
                           lim.liminf_est < thr.eps_M)
                              ? VerdictStatus::satisfied
                              : VerdictStatus::not_satisfied;
            break;
        }
        case Criterion::E3_17: {
            detail::require_positive(thr.bound_M, "M");
            detail::require_positive(thr.eps_hat, "eps_hat");
            const double G =
                std::min({estimate_limits(values(&LadderEntry::E),
                                          usable_tail).limsup_est,
                          estimate_limits(values(&LadderEntry::C),
                                          usable_tail).limsup_est,
                          estimate_limits(values(&LadderEntry::A),
                                          usable_tail).limsup_est});
            const double liminf_E3 =
                estimate_limits(values(&LadderEntry::E3), usable_tail)
                    .liminf_est;
            out.quantities["G_est"] = G;
            out.quantities["liminf_E3"] = liminf_E3;
            out.verdict = (G < thr.bound_M && liminf_E3 < thr.eps_hat)
                              ? VerdictStatus::satisfied
                              : VerdictStatus::not_satisfied;
            break;
        }
    }
    return out;
}

inline CriterionVerdict evaluate_criterion(
    Criterion criterion, const VelocityField& v, const ScalarField* p,
    const Center& center, const LadderConfig& cfg, const Thresholds& thr,
    int tail = 3, const FunctionalOptions& opt = {},
    bool proposition_mode = false) {
    const FunctionalLadder ladder = build_ladder(v, p, center, cfg, opt);
    return evaluate_criterion_from_ladder(criterion, ladder, thr, tail,
                                          proposition_mode);
}

// ---------------------------------------------------------------------------
// Space-time scan
// ---------------------------------------------------------------------------

/// Sub-box of space-time scanned on a regular stride.
struct ScanRegion {
    Vec3 x_lo{0, 0, 0}, x_hi{0, 0, 0};
    double t_lo = 0.0, t_hi = 0.0;
    Vec3 x_stride{0, 0, 0};
    double t_stride = 0.0;
};

struct ScanEntry {
    Center center;
    double score = 0.0;  // min over the ladder of C(r) + D0(r)
    CriterionVerdict verdict;
};

namespace detail {

inline std::vector<double> stride_values(double lo, double hi, double stride) {
    std::vector<double> out;
    if (hi <= lo + 1e-15) {
        out.push_back(lo);
        return out;
    }
    if (!(stride > 0.0))
        throw ConfigError("scan stride must be positive for a non-degenerate "
                          "axis");
    for (double v = lo; v <= hi + 1e-12 * std::max(1.0, std::fabs(hi));
         v += stride)
        out.push_back(v);
    return out;
}

}  // namespace detail

/// Evaluates the criterion and the singularity-candidate score at explicit
/// centers. Centers whose ladders are infeasible on this grid are skipped.
/// The ranking (descending score, ties broken lexicographically by center
/// coordinates) does not depend on the input order or the worker count.
inline std::vector<ScanEntry> scan_at_centers(
    const VelocityField& v, const ScalarField* p,
    std::span<const Center> centers, Criterion criterion,
    const LadderConfig& cfg, const Thresholds& thr, int tail = 3,
    const FunctionalOptions& opt = {},
    std::vector<std::string>* skipped = nullptr) {
    std::vector<std::optional<ScanEntry>> slots(centers.size());
    std::vector<std::string> skip_notes(centers.size());
    parallel::for_indexed(0, int(centers.size()), [&](int i) {
        try {
            const FunctionalLadder ladder =
                build_ladder(v, p, centers[i], cfg, opt);
            ScanEntry entry;
            entry.center = centers[i];
            double score = std::numeric_limits<double>::infinity();
            for (const auto& e : ladder.entries)
                score = std::min(score, e.C + (e.D0 ? *e.D0 : 0.0));
            entry.score = score;
            entry.verdict = evaluate_criterion_from_ladder(criterion, ladder,
                                                           thr, tail);
            if (!p)
                entry.verdict.notes.push_back(
                    "score uses C only: no pressure field supplied");
            slots[i] = std::move(entry);
        } catch (const DomainError& e) {
            skip_notes[i] = e.what();
        } catch (const ResolutionError& e) {
            skip_notes[i] = e.what();
        }
    });
    std::vector<ScanEntry> out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i])
            out.push_back(std::move(*slots[i]));
        else if (skipped)
            skipped->push_back("center skipped: " + skip_notes[i]);
    }
    if (out.empty())
        throw DomainError("no scan center admits a resolvable ladder");
    std::sort(out.begin(), out.end(),
              [](const ScanEntry& a, const ScanEntry& b) {
                  if (a.score != b.score) return a.score > b.score;
                  if (a.center.x[0] != b.center.x[0])
                      return a.center.x[0] < b.center.x[0];
                  if (a.center.x[1] != b.center.x[1])
                      return a.center.x[1] < b.center.x[1];
                  if (a.center.x[2] != b.center.x[2])
                      return a.center.x[2] < b.center.x[2];
                  return a.center.t < b.center.t;
              });
    return out;
}

/// Ranked scan of a region; the score follows the singular-point lower bound
/// on C + D0, so large scores mark singularity candidates.
inline std::vector<ScanEntry> scan(const VelocityField& v,
                                   const ScalarField* p,
                                   const ScanRegion& region,
                                   Criterion criterion,
                                   const LadderConfig& cfg,
                                   const Thresholds& thr, int tail = 3,
                                   const FunctionalOptions& opt = {},
                                   std::vector<std::string>* skipped = nullptr) {
    std::vector<Center> centers;
    const auto xs = detail::stride_values(region.x_lo[0], region.x_hi[0],
                                          region.x_stride[0]);
    const auto ys = detail::stride_values(region.x_lo[1], region.x_hi[1],
                                          region.x_stride[1]);
    const auto zs = detail::stride_values(region.x_lo[2], region.x_hi[2],
                                          region.x_stride[2]);
    const auto ts = detail::stride_values(region.t_lo, region.t_hi,
                                          region.t_stride);
    for (double t : ts)
        for (double z : zs)
            for (double y : ys)
                for (double x : xs)
                    centers.push_back(Center{{x, y, z}, t});
    return scan_at_centers(v, p, centers, criterion, cfg, thr, tail, opt,
                           skipped);
}

}  // namespace morrey
