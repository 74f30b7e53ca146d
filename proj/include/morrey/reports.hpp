#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "morrey/audits.hpp"
#include "morrey/criteria.hpp"
#include "morrey/errors.hpp"
#include "morrey/functionals.hpp"
#include "morrey/quadrature.hpp"

namespace morrey::reports {

using nlohmann::json;

inline std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// JSON has no infinity; implied constants may be infinite by definition,
/// so they serialize as the string "infinity".
inline json number_or_infinity(double v) {
    if (std::isinf(v)) return json("infinity");
    return json(v);
}

inline json to_json(const Center& c) {
    return {{"x", c.x[0]}, {"y", c.x[1]}, {"z", c.x[2]}, {"t", c.t}};
}

inline json to_json(const Grid4& g) {
    return {{"nx", g.nx},       {"ny", g.ny},       {"nz", g.nz},
            {"nt", g.nt},       {"x_min", g.x_min}, {"x_max", g.x_max},
            {"t_min", g.t_min}, {"t_max", g.t_max}};
}

inline json to_json(const CellWeightRule& r) {
    return {{"mode", r.mode == CellWeightRule::Mode::partial_cell
                         ? "partial-cell"
                         : "indicator"},
            {"singular_exclusion_radius", r.singular_exclusion_radius}};
}

inline json to_json(const Thresholds& t) {
    return {{"eps0", t.eps0},       {"eps_bar0", t.eps_bar0},
            {"M", t.bound_M},       {"eps_M", t.eps_M},
            {"eps_hat", t.eps_hat}, {"zero_tol", t.zero_tol}};
}

// ---------------------------------------------------------------------------
// ladder-v1
// ---------------------------------------------------------------------------

inline json ladder_to_json(const FunctionalLadder& ladder,
                           json provenance = json::object()) {
    json radii = json::array(), A = json::array(), E = json::array(),
         C = json::array(), H = json::array(), D0 = json::array(),
         E3 = json::array(), M = json::array(), ex = json::array();
    for (const auto& e : ladder.entries) {
        radii.push_back(e.r);
        A.push_back(e.A);
        E.push_back(e.E);
        C.push_back(e.C);
        H.push_back(e.H);
        E3.push_back(e.E3);
        D0.push_back(e.D0 ? json(*e.D0) : json(nullptr));
        M.push_back(e.M ? json(*e.M) : json(nullptr));
        ex.push_back(e.excluded_volume);
    }
    return {{"schema", "ladder-v1"},
            {"center", to_json(ladder.center)},
            {"theta", ladder.theta},
            {"m_s", ladder.m_s},
            {"m_l", ladder.m_l},
            {"radii", radii},
            {"A", A},
            {"E", E},
            {"C", C},
            {"H", H},
            {"D0", D0},
            {"E3", E3},
            {"M", M},
            {"excluded_volume", ex},
            {"warnings", ladder.warnings},
            {"provenance", std::move(provenance)}};
}

inline std::string ladder_to_csv(const FunctionalLadder& ladder) {
    std::string out = "r,A,E,C,H,D0,E3,M,excluded_volume\n";
    for (const auto& e : ladder.entries) {
        out += fmt17(e.r) + "," + fmt17(e.A) + "," + fmt17(e.E) + "," +
               fmt17(e.C) + "," + fmt17(e.H) + ",";
        out += e.D0 ? fmt17(*e.D0) : std::string();
        out += "," + fmt17(e.E3) + ",";
        out += e.M ? fmt17(*e.M) : std::string();
        out += "," + fmt17(e.excluded_volume) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// audit-v1
// ---------------------------------------------------------------------------

inline json to_json(const InequalityAudit& a) {
    return {{"id", to_string(a.id)},
            {"params", a.params},
            {"lhs", a.lhs},
            {"rhs_core", a.rhs_core},
            {"implied_constant", number_or_infinity(a.implied_constant)}};
}

inline json audits_to_json(const std::vector<InequalityAudit>& audits,
                           json provenance = json::object()) {
    json arr = json::array();
    std::map<std::string, double> summary;
    for (const auto& a : audits) {
        arr.push_back(to_json(a));
        auto [it, fresh] =
            summary.emplace(to_string(a.id), a.implied_constant);
        if (!fresh) it->second = std::max(it->second, a.implied_constant);
    }
    json sj = json::object();
    for (const auto& [id, c] : summary) sj[id] = number_or_infinity(c);
    return {{"schema", "audit-v1"},
            {"audits", arr},
            {"summary", sj},
            {"provenance", std::move(provenance)}};
}

// ---------------------------------------------------------------------------
// verdict-v1 and scan CSV
// ---------------------------------------------------------------------------

inline json verdict_to_json(const CriterionVerdict& v) {
    json q = json::object();
    for (const auto& [k, val] : v.quantities) q[k] = number_or_infinity(val);
    return {{"schema", "verdict-v1"},
            {"criterion", to_string(v.criterion)},
            {"center", to_json(v.center)},
            {"thresholds", to_json(v.thresholds)},
            {"quantities", q},
            {"verdict", to_string(v.verdict)},
            {"notes", v.notes}};
}

inline std::string scan_to_csv(const std::vector<ScanEntry>& entries) {
    std::string out = "center_x,center_y,center_z,center_t,score,verdict\n";
    for (const auto& e : entries) {
        out += fmt17(e.center.x[0]) + "," + fmt17(e.center.x[1]) + "," +
               fmt17(e.center.x[2]) + "," + fmt17(e.center.t) + "," +
               fmt17(e.score) + "," + to_string(e.verdict.verdict) + "\n";
    }
    return out;
}

inline json scan_to_json(const std::vector<ScanEntry>& entries,
                         json provenance = json::object()) {
    json arr = json::array();
    for (const auto& e : entries) {
        json item = verdict_to_json(e.verdict);
        item.erase("schema");
        item["score"] = e.score;
        arr.push_back(std::move(item));
    }
    return {{"schema", "scan-v1"},
            {"entries", arr},
            {"provenance", std::move(provenance)}};
}

// ---------------------------------------------------------------------------
// Schema validation (structural) and persistence
// ---------------------------------------------------------------------------

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw IoError("report schema violation: " + what);
}

inline void require_number_array(const json& j, const char* key,
                                 std::size_t len, bool nullable) {
    require(j.contains(key) && j[key].is_array(),
            std::string(key) + " must be an array");
    require(j[key].size() == len,
            std::string(key) + " must match the radii length");
    for (const auto& e : j[key])
        require(e.is_number() || (nullable && e.is_null()),
                std::string(key) + " entries must be numbers");
}

}  // namespace detail

/// Structural validation of any report produced by this tool; throws IoError
/// with the offending key. The schema id always lives under "schema".
inline void validate_report(const json& j) {
    detail::require(j.is_object() && j.contains("schema"),
                    "missing schema field");
    const std::string schema = j["schema"].get<std::string>();
    if (schema == "ladder-v1") {
        detail::require(j.contains("center") && j["center"].is_object(),
                        "ladder center");
        const std::size_t n = j.value("radii", json::array()).size();
        detail::require_number_array(j, "radii", n, false);
        for (const char* k : {"A", "E", "C", "H", "E3", "excluded_volume"})
            detail::require_number_array(j, k, n, false);
        for (const char* k : {"D0", "M"})
            detail::require_number_array(j, k, n, true);
    } else if (schema == "audit-v1") {
        detail::require(j.contains("audits") && j["audits"].is_array(),
                        "audit list");
        for (const auto& a : j["audits"]) {
            detail::require(a.contains("id") && a["id"].is_string(),
                            "audit id");
            for (const char* k : {"lhs", "rhs_core"})
                detail::require(a.contains(k) && a[k].is_number(),
                                std::string("audit ") + k);
            detail::require(a.contains("implied_constant") &&
                                (a["implied_constant"].is_number() ||
                                 a["implied_constant"] == "infinity"),
                            "audit implied_constant");
        }
        detail::require(j.contains("summary") && j["summary"].is_object(),
                        "audit summary");
    } else if (schema == "verdict-v1") {
        for (const char* k : {"criterion", "verdict"})
            detail::require(j.contains(k) && j[k].is_string(),
                            std::string("verdict ") + k);
        detail::require(j.contains("quantities") &&
                            j["quantities"].is_object(),
                        "verdict quantities");
        detail::require(j.contains("thresholds") &&
                            j["thresholds"].is_object(),
                        "verdict thresholds");
    } else if (schema == "scan-v1") {
        detail::require(j.contains("entries") && j["entries"].is_array(),
                        "scan entries");
    } else if (schema == "report-v1") {
        detail::require(j.contains("inputs") && j["inputs"].is_array(),
                        "report inputs");
    } else if (schema == "linear-audit-v1") {
        detail::require(j.contains("audits") && j["audits"].is_array(),
                        "linear audit list");
    } else {
        throw IoError("unknown report schema '" + schema + "'");
    }
}

inline void write_text_atomic(const std::filesystem::path& path,
                              const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), std::streamsize(content.size()));
        if (!out) throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot move " + tmp.string() + " to " + path.string() +
                      ": " + ec.message());
}

inline void write_json(const std::filesystem::path& path, const json& j) {
    validate_report(j);
    write_text_atomic(path, j.dump(2) + "\n");
}

inline json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw IoError(path.string() + " is not valid JSON");
    return j;
}

/// Merges previously written reports into one summary document.
inline json merge_reports(const std::vector<json>& inputs) {
    json out{{"schema", "report-v1"},
             {"inputs", json::array()},
             {"ladders", json::array()},
             {"audits", json::array()},
             {"verdicts", json::array()},
             {"scans", json::array()}};
    std::map<std::string, double> audit_max;
    for (const auto& j : inputs) {
        validate_report(j);
        const std::string schema = j["schema"].get<std::string>();
        out["inputs"].push_back(schema);
        if (schema == "ladder-v1") out["ladders"].push_back(j);
        if (schema == "audit-v1" || schema == "linear-audit-v1") {
            out["audits"].push_back(j);
            if (j.contains("summary"))
                for (const auto& [id, c] : j["summary"].items()) {
                    const double v = c.is_string()
                                         ? std::numeric_limits<double>::infinity()
                                         : c.get<double>();
                    auto [it, fresh] = audit_max.emplace(id, v);
                    if (!fresh) it->second = std::max(it->second, v);
                }
        }
        if (schema == "verdict-v1") out["verdicts"].push_back(j);
        if (schema == "scan-v1") out["scans"].push_back(j);
    }
    json sj = json::object();
    for (const auto& [id, c] : audit_max) sj[id] = number_or_infinity(c);
    out["audit_summary"] = sj;
    return out;
}

}  // namespace morrey::reports
