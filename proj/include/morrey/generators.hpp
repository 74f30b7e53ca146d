#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "morrey/cutoff.hpp"
#include "morrey/errors.hpp"
#include "morrey/field.hpp"
#include "morrey/parallel.hpp"

namespace morrey {

/// Random trigonometric spectrum: integer wavevectors in [-2,2]^3 \ {0},
/// per-component amplitudes and phases drawn from a seeded mt19937_64.
/// Everything is deterministic in (seed, modes, amplitude).
struct TrigSpec {
    std::uint64_t seed = 1;
    int modes = 3;
    double amplitude = 1.0;
};

struct BumpFieldSpec {
    Vec3 center{0, 0, 0};
    double radius = 0.5;
    double amplitude = 1.0;
    Vec3 direction{1, 0, 0};
};

namespace detail {

// Copies the slice computed at t=0 across all slices (static-in-time
// generators); keeps emission deterministic and cheap.
template <class SliceFill>
std::vector<double> replicate_static(const Grid4& g, int comps,
                                     SliceFill&& fill) {
    std::vector<double> samples(g.node_count() * comps);
    const std::size_t per = g.nodes_per_slice() * comps;
    fill(samples.data());
    parallel::for_indexed(1, g.nt, [&](int it) {
        std::memcpy(samples.data() + std::size_t(it) * per, samples.data(),
                    per * sizeof(double));
    });
    return samples;
}

struct TrigMode {
    Vec3 k;           // wavevector
    double amp[3];    // per-component amplitude
    double phase[3];  // per-component phase
};

inline std::vector<TrigMode> draw_modes(const TrigSpec& spec) {
    if (spec.modes < 1) throw ConfigError("trig generator needs >= 1 mode");
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<int> ki(-2, 2);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
    std::vector<TrigMode> modes(spec.modes);
    for (auto& m : modes) {
        do {
            m.k = {double(ki(rng)), double(ki(rng)), double(ki(rng))};
        } while (m.k[0] == 0.0 && m.k[1] == 0.0 && m.k[2] == 0.0);
        for (int c = 0; c < 3; ++c) {
            m.amp[c] = amp(rng) * spec.amplitude / spec.modes;
            m.phase[c] = ph(rng);
        }
    }
    return modes;
}

inline void require_modes_resolved(const Grid4& g,
                                   const std::vector<TrigMode>& modes) {
    double kmax = 0.0;
    for (const auto& m : modes)
        kmax = std::max({kmax, std::fabs(m.k[0]), std::fabs(m.k[1]),
                         std::fabs(m.k[2])});
    const double min_wavelength = 2.0 * M_PI / std::max(kmax, 1e-300);
    if (g.max_spacing() > min_wavelength / 8.0)
        throw ConfigError("trig modes under-resolved: need >= 8 samples per "
                          "wavelength, spacing is " +
                          std::to_string(g.max_spacing()));
}

}  // namespace detail

inline VelocityField gen_zero(const Grid4& g) {
    return VelocityField(g, std::vector<double>(g.node_count() * 3, 0.0),
                         "zero field");
}

inline ScalarField gen_zero_pressure(const Grid4& g) {
    return ScalarField(g, std::vector<double>(g.node_count(), 0.0),
                       "zero pressure");
}

inline VelocityField gen_constant(const Grid4& g, const Vec3& value) {
    std::vector<double> s(g.node_count() * 3);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        s[3 * i] = value[0];
        s[3 * i + 1] = value[1];
        s[3 * i + 2] = value[2];
    }
    return VelocityField(g, std::move(s), "constant velocity");
}

inline ScalarField gen_constant_pressure(const Grid4& g, double value) {
    return ScalarField(g, std::vector<double>(g.node_count(), value),
                       "constant pressure");
}

/// v(x) = S x for a traceless matrix S (row-major), an exactly
/// divergence-free linear profile.
inline VelocityField gen_linear_strain(const Grid4& g,
                                       const std::array<double, 9>& strain) {
    const double tr = strain[0] + strain[4] + strain[8];
    double scale = 0.0;
    for (double e : strain) scale = std::max(scale, std::fabs(e));
    if (std::fabs(tr) > 1e-12 * std::max(scale, 1.0))
        throw ConfigError("linear strain matrix must be traceless (trace " +
                          std::to_string(tr) + ")");
    auto samples = detail::replicate_static(g, 3, [&](double* out) {
        std::size_t idx = 0;
        for (int iz = 0; iz < g.nz; ++iz)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix) {
                    const Vec3 x = g.node(ix, iy, iz);
                    for (int c = 0; c < 3; ++c)
                        out[idx++] = strain[3 * c] * x[0] +
                                     strain[3 * c + 1] * x[1] +
                                     strain[3 * c + 2] * x[2];
                }
    });
    return VelocityField(g, std::move(samples), "linear strain field");
}

/// Exact solution v = (a e^{-k^2 t} sin(k x2), 0, 0), p = 0. The transport
/// term vanishes identically, so the pair solves the full nonlinear system.
inline std::pair<VelocityField, ScalarField> gen_shear_heat(const Grid4& g,
                                                            double amplitude,
                                                            double wavenumber) {
    if (!(wavenumber > 0.0))
        throw ConfigError("shear wavenumber must be positive");
    const double wavelength = 2.0 * M_PI / wavenumber;
    if (g.dx(1) > wavelength / 8.0)
        throw ConfigError(
            "shear wavelength under-resolved: need >= 8 samples per "
            "wavelength along x2, spacing is " +
            std::to_string(g.dx(1)));
    std::vector<double> s(g.node_count() * 3, 0.0);
    const double k2 = wavenumber * wavenumber;
    parallel::for_indexed(0, g.nt, [&](int it) {
        const double decay = amplitude * std::exp(-k2 * g.t(it));
        std::size_t idx = std::size_t(it) * g.nodes_per_slice() * 3;
        for (int iz = 0; iz < g.nz; ++iz)
            for (int iy = 0; iy < g.ny; ++iy) {
                const double val = decay * std::sin(wavenumber * g.x(1, iy));
                for (int ix = 0; ix < g.nx; ++ix, idx += 3) s[idx] = val;
            }
    });
    char meta[128];
    std::snprintf(meta, sizeof(meta),
                  "shear heat solution a=%.17g k=%.17g", amplitude,
                  wavenumber);
    return {VelocityField(g, std::move(s), meta), gen_zero_pressure(g)};
}

/// v = curl(psi) of a random trigonometric vector potential; the analytic
/// divergence vanishes identically. Static in time.
inline VelocityField gen_trig_divfree(const Grid4& g, const TrigSpec& spec) {
    const auto modes = detail::draw_modes(spec);
    detail::require_modes_resolved(g, modes);
    auto samples = detail::replicate_static(g, 3, [&](double* out) {
        std::size_t idx = 0;
        for (int iz = 0; iz < g.nz; ++iz)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix) {
                    const Vec3 x = g.node(ix, iy, iz);
                    Vec3 v{0, 0, 0};
                    for (const auto& m : modes) {
                        const double kx = dot(m.k, x);
                        double dpsi[3][3];  // d psi_c / d x_j
                        for (int c = 0; c < 3; ++c) {
                            const double cosv =
                                m.amp[c] * std::cos(kx + m.phase[c]);
                            for (int j = 0; j < 3; ++j)
                                dpsi[c][j] = cosv * m.k[j];
                        }
                        v[0] += dpsi[2][1] - dpsi[1][2];
                        v[1] += dpsi[0][2] - dpsi[2][0];
                        v[2] += dpsi[1][0] - dpsi[0][1];
                    }
                    out[idx++] = v[0];
                    out[idx++] = v[1];
                    out[idx++] = v[2];
                }
    });
    return VelocityField(g, std::move(samples),
                         "trig div-free field seed=" +
                             std::to_string(spec.seed));
}

/// Companion scalar field from the same spectrum machinery (corpus
/// pressure). Static in time.
inline ScalarField gen_trig_pressure(const Grid4& g, const TrigSpec& spec) {
    const auto modes = detail::draw_modes(spec);
    detail::require_modes_resolved(g, modes);
    auto samples = detail::replicate_static(g, 1, [&](double* out) {
        std::size_t idx = 0;
        for (int iz = 0; iz < g.nz; ++iz)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix) {
                    const Vec3 x = g.node(ix, iy, iz);
                    double p = 0.0;
                    for (const auto& m : modes)
                        p += m.amp[0] * std::sin(dot(m.k, x) + m.phase[0]);
                    out[idx++] = p;
                }
    });
    return ScalarField(g, std::move(samples),
                       "trig pressure seed=" + std::to_string(spec.seed));
}

/// Mollified -1-homogeneous profile v(x) = (-x2, x1, 0) / (|x|^2 + delta^2):
/// divergence-free (angular direction, radial magnitude) with near-critical
/// scaling for delta << |x| << 1.
inline VelocityField gen_near_singular(const Grid4& g, double delta) {
    const double floor_delta = 2.0 * g.max_spacing();
    if (delta < floor_delta)
        throw ConfigError("mollification delta=" + std::to_string(delta) +
                          " below the grid floor " +
                          std::to_string(floor_delta) +
                          " (2 spatial spacings)");
    auto samples = detail::replicate_static(g, 3, [&](double* out) {
        const double d2 = delta * delta;
        std::size_t idx = 0;
        for (int iz = 0; iz < g.nz; ++iz)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix) {
                    const Vec3 x = g.node(ix, iy, iz);
                    const double denom = norm2(x) + d2;
                    out[idx++] = -x[1] / denom;
                    out[idx++] = x[0] / denom;
                    out[idx++] = 0.0;
                }
    });
    char meta[96];
    std::snprintf(meta, sizeof(meta), "near-singular profile delta=%.17g",
                  delta);
    return VelocityField(g, std::move(samples), meta);
}

struct ManufacturedTriple {
    VelocityField v;  // bump * e^{-t} * direction, zero on the lateral boundary
    VelocityField u;  // divergence-free transport field
    VelocityField f;  // d_t v + (u . grad) v - lap v, analytic
};

/// Manufactured data for the linear problem: v with closed-form space-time
/// derivatives, u either zero or a trig div-free field, and the matching
/// forcing f computed analytically from them.
inline ManufacturedTriple gen_manufactured_triple(
    const Grid4& g, const BumpFieldSpec& bump,
    const std::optional<TrigSpec>& transport = {}) {
    if (norm(bump.center) + bump.radius >= 1.0)
        throw ContractError(
            "bump support touches the lateral boundary of B(0,1)");
    VelocityField u = transport ? gen_trig_divfree(g, *transport)
                                : gen_zero(g);

    // Spatial profiles A(x), grad A, lap A once; time scaling e^{-t}.
    const std::size_t n = g.nodes_per_slice();
    std::vector<double> a(n), lap(n);
    std::vector<double> grad[3];
    for (auto& c : grad) c.resize(n);
    {
        std::size_t i = 0;
        for (int iz = 0; iz < g.nz; ++iz)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix, ++i) {
                    const BumpValues b = eval_bump(bump.center, bump.radius,
                                                   bump.amplitude,
                                                   g.node(ix, iy, iz));
                    a[i] = b.value;
                    lap[i] = b.laplacian;
                    grad[0][i] = b.grad[0];
                    grad[1][i] = b.grad[1];
                    grad[2][i] = b.grad[2];
                }
    }
    std::vector<double> vs(g.node_count() * 3), fs(g.node_count() * 3);
    parallel::for_indexed(0, g.nt, [&](int it) {
        const double decay = std::exp(-g.t(it));
        const double* us = u.slice(it);
        std::size_t idx = std::size_t(it) * n * 3;
        for (std::size_t i = 0; i < n; ++i, idx += 3) {
            // f = e^{-t} (-A + u . grad A - lap A) d
            const double ugrad = us[3 * i] * grad[0][i] +
                                 us[3 * i + 1] * grad[1][i] +
                                 us[3 * i + 2] * grad[2][i];
            const double fval = decay * (-a[i] + ugrad - lap[i]);
            const double vval = decay * a[i];
            for (int c = 0; c < 3; ++c) {
                vs[idx + c] = vval * bump.direction[c];
                fs[idx + c] = fval * bump.direction[c];
            }
        }
    });
    return {VelocityField(g, std::move(vs), "manufactured bump solution"),
            std::move(u),
            VelocityField(g, std::move(fs), "manufactured forcing")};
}

// ---------------------------------------------------------------------------
// Named generator specs (genspec-v1), the serialized form used by the CLI
// ---------------------------------------------------------------------------

struct GenSpec {
    std::string kind;  // zero|constant|linear_strain|shear_heat|trig_divfree|
                       // near_singular|manufactured_linear_triple
    Vec3 value{1, 0, 0};                     // constant
    std::array<double, 9> strain{0, 0, 1, 0, 0, 0, 0, 0, 0};  // linear_strain
    double amplitude = 1.0;                  // shear_heat
    double wavenumber = 1.0;
    TrigSpec trig{};                         // trig_divfree / transport
    double delta = 0.1;                      // near_singular
    BumpFieldSpec bump{};                    // manufactured triple
    bool with_transport = false;             // manufactured triple

    nlohmann::json to_json() const {
        nlohmann::json j{{"schema", "genspec-v1"}, {"kind", kind}};
        if (kind == "constant") j["value"] = value;
        if (kind == "linear_strain") j["strain"] = strain;
        if (kind == "shear_heat") {
            j["amplitude"] = amplitude;
            j["wavenumber"] = wavenumber;
        }
        if (kind == "trig_divfree" || kind == "manufactured_linear_triple") {
            j["seed"] = trig.seed;
            j["modes"] = trig.modes;
            j["trig_amplitude"] = trig.amplitude;
        }
        if (kind == "near_singular") j["delta"] = delta;
        if (kind == "manufactured_linear_triple") {
            j["bump_center"] = bump.center;
            j["bump_radius"] = bump.radius;
            j["bump_amplitude"] = bump.amplitude;
            j["bump_direction"] = bump.direction;
            j["with_transport"] = with_transport;
        }
        return j;
    }

    static GenSpec from_json(const nlohmann::json& j) {
        GenSpec s;
        if (j.value("schema", "") != "genspec-v1")
            throw ConfigError("generator spec is not genspec-v1");
        s.kind = j.at("kind").get<std::string>();
        if (j.contains("value")) s.value = j["value"].get<Vec3>();
        if (j.contains("strain"))
            s.strain = j["strain"].get<std::array<double, 9>>();
        s.amplitude = j.value("amplitude", s.amplitude);
        s.wavenumber = j.value("wavenumber", s.wavenumber);
        s.trig.seed = j.value("seed", s.trig.seed);
        s.trig.modes = j.value("modes", s.trig.modes);
        s.trig.amplitude = j.value("trig_amplitude", s.trig.amplitude);
        s.delta = j.value("delta", s.delta);
        if (j.contains("bump_center"))
            s.bump.center = j["bump_center"].get<Vec3>();
        s.bump.radius = j.value("bump_radius", s.bump.radius);
        s.bump.amplitude = j.value("bump_amplitude", s.bump.amplitude);
        if (j.contains("bump_direction"))
            s.bump.direction = j["bump_direction"].get<Vec3>();
        s.with_transport = j.value("with_transport", s.with_transport);
        return s;
    }
};

struct GeneratedFields {
    std::optional<VelocityField> v;
    std::optional<ScalarField> p;
    std::optional<VelocityField> u;  // manufactured triple only
    std::optional<VelocityField> f;
};

/// Runs the named generator and stamps every emitted field with the
/// genspec-v1 JSON so reports can trace numbers back to their source.
inline GeneratedFields generate(const GenSpec& spec, const Grid4& g) {
    GeneratedFields out;
    const std::string meta = spec.to_json().dump();
    auto restamp_v = [&](VelocityField&& f) {
        return VelocityField(f.grid(), std::vector<double>(f.samples()), meta,
                             f.singular_loci());
    };
    auto restamp_p = [&](ScalarField&& f) {
        return ScalarField(f.grid(), std::vector<double>(f.samples()), meta,
                           f.singular_loci());
    };
    if (spec.kind == "zero") {
        out.v = restamp_v(gen_zero(g));
        out.p = restamp_p(gen_zero_pressure(g));
    } else if (spec.kind == "constant") {
        out.v = restamp_v(gen_constant(g, spec.value));
        out.p = restamp_p(gen_zero_pressure(g));
    } else if (spec.kind == "linear_strain") {
        out.v = restamp_v(gen_linear_strain(g, spec.strain));
    } else if (spec.kind == "shear_heat") {
        auto [v, p] = gen_shear_heat(g, spec.amplitude, spec.wavenumber);
        out.v = restamp_v(std::move(v));
        out.p = restamp_p(std::move(p));
    } else if (spec.kind == "trig_divfree") {
        out.v = restamp_v(gen_trig_divfree(g, spec.trig));
        TrigSpec pspec = spec.trig;
        pspec.seed = spec.trig.seed ^ 0x9e3779b97f4a7c15ull;
        out.p = restamp_p(gen_trig_pressure(g, pspec));
    } else if (spec.kind == "near_singular") {
        out.v = restamp_v(gen_near_singular(g, spec.delta));
    } else if (spec.kind == "manufactured_linear_triple") {
        auto triple = gen_manufactured_triple(
            g, spec.bump,
            spec.with_transport ? std::optional<TrigSpec>(spec.trig)
                                : std::nullopt);
        out.v = restamp_v(std::move(triple.v));
        out.u = restamp_v(std::move(triple.u));
        out.f = restamp_v(std::move(triple.f));
    } else {
        throw ConfigError("unknown generator kind '" + spec.kind + "'");
    }
    return out;
}

}  // namespace morrey
