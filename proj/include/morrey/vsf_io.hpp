#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "morrey/errors.hpp"
#include "morrey/field.hpp"

namespace morrey {

/// VSF1 field file: an ASCII header followed by raw little-endian float64
/// samples in (t,z,y,x) row-major layout (vector components interleaved per
/// node). Round trips are bit-exact.
///
///   VSF1
///   kind vector|scalar
///   grid nx ny nz nt
///   xrange a b        (one line per spatial axis)
///   xrange a b
///   xrange a b
///   trange a b
///   meta <free text, single line>
///   end
///   <payload>
namespace vsf {

static_assert(std::endian::native == std::endian::little,
              "VSF1 writer assumes a little-endian host");

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string header(const Grid4& g, const char* kind,
                          const std::string& meta) {
    if (meta.find('\n') != std::string::npos)
        throw IoError("VSF1 metadata must be a single line");
    std::ostringstream h;
    h << "VSF1\n";
    h << "kind " << kind << "\n";
    h << "grid " << g.nx << " " << g.ny << " " << g.nz << " " << g.nt << "\n";
    for (int a = 0; a < 3; ++a)
        h << "xrange " << fmt(g.x_min[a]) << " " << fmt(g.x_max[a]) << "\n";
    h << "trange " << fmt(g.t_min) << " " << fmt(g.t_max) << "\n";
    h << "meta " << meta << "\n";
    h << "end\n";
    return h.str();
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& header,
                       const std::vector<double>& payload) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(header.data(), std::streamsize(header.size()));
        out.write(reinterpret_cast<const char*>(payload.data()),
                  std::streamsize(payload.size() * sizeof(double)));
        if (!out) throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot move " + tmp.string() + " to " + path.string() +
                      ": " + ec.message());
}

inline std::vector<Vec3> loci_from_meta(const std::string& meta) {
    // Singular loci travel inside the metadata JSON when present; plain-text
    // metadata simply has none.
    if (meta.empty() || meta.front() != '{') return {};
    const auto j = nlohmann::json::parse(meta, nullptr, false);
    if (j.is_discarded() || !j.contains("singular_loci")) return {};
    std::vector<Vec3> out;
    for (const auto& e : j["singular_loci"]) out.push_back(e.get<Vec3>());
    return out;
}

}  // namespace detail

inline void write(const std::filesystem::path& path, const VelocityField& v) {
    detail::write_file(path, detail::header(v.grid(), "vector", v.meta()),
                       v.samples());
}

inline void write(const std::filesystem::path& path, const ScalarField& p) {
    detail::write_file(path, detail::header(p.grid(), "scalar", p.meta()),
                       p.samples());
}

using AnyField = std::variant<VelocityField, ScalarField>;

inline AnyField read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    auto next_line = [&](const char* what) {
        std::string line;
        if (!std::getline(in, line))
            throw IoError("VSF1 header truncated in " + path.string() +
                          " (expected " + what + ")");
        return line;
    };
    if (next_line("magic") != "VSF1")
        throw IoError(path.string() + " is not a VSF1 file");
    const std::string kind_line = next_line("kind");
    bool vector_kind;
    if (kind_line == "kind vector") vector_kind = true;
    else if (kind_line == "kind scalar") vector_kind = false;
    else throw IoError("bad kind line '" + kind_line + "'");
    Grid4 g;
    {
        const std::string line = next_line("grid");
        if (std::sscanf(line.c_str(), "grid %d %d %d %d", &g.nx, &g.ny, &g.nz,
                        &g.nt) != 4)
            throw IoError("bad grid line '" + line + "'");
    }
    for (int a = 0; a < 3; ++a) {
        const std::string line = next_line("xrange");
        if (std::sscanf(line.c_str(), "xrange %lf %lf", &g.x_min[a],
                        &g.x_max[a]) != 2)
            throw IoError("bad xrange line '" + line + "'");
    }
    {
        const std::string line = next_line("trange");
        if (std::sscanf(line.c_str(), "trange %lf %lf", &g.t_min, &g.t_max) !=
            2)
            throw IoError("bad trange line '" + line + "'");
    }
    std::string meta = next_line("meta");
    if (meta.rfind("meta ", 0) == 0) meta = meta.substr(5);
    else if (meta == "meta") meta.clear();
    else throw IoError("bad meta line");
    if (next_line("end") != "end") throw IoError("missing end marker");
    g.validate();

    const std::size_t count = g.node_count() * (vector_kind ? 3 : 1);
    std::vector<double> payload(count);
    in.read(reinterpret_cast<char*>(payload.data()),
            std::streamsize(count * sizeof(double)));
    if (std::size_t(in.gcount()) != count * sizeof(double))
        throw IoError("payload truncated in " + path.string());
    char extra;
    if (in.read(&extra, 1))
        throw IoError("trailing bytes after payload in " + path.string());

    auto loci = detail::loci_from_meta(meta);
    if (vector_kind)
        return VelocityField(g, std::move(payload), std::move(meta),
                             std::move(loci));
    return ScalarField(g, std::move(payload), std::move(meta),
                       std::move(loci));
}

inline VelocityField read_velocity(const std::filesystem::path& path) {
    AnyField f = read(path);
    if (auto* v = std::get_if<VelocityField>(&f)) return std::move(*v);
    throw IoError(path.string() + " holds a scalar field, vector expected");
}

inline ScalarField read_scalar(const std::filesystem::path& path) {
    AnyField f = read(path);
    if (auto* p = std::get_if<ScalarField>(&f)) return std::move(*p);
    throw IoError(path.string() + " holds a vector field, scalar expected");
}

}  // namespace vsf
}  // namespace morrey
