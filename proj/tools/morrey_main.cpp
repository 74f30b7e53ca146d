// Command-line surface: gen / eval / audit / scan / verify-linear / report.
// Numeric output is reproducible bit-for-bit for a fixed configuration and
// independent of the worker count (MORREY_WORKERS).

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "morrey/morrey.hpp"

namespace {

using nlohmann::json;
using namespace morrey;

std::vector<double> parse_doubles(const std::string& csv, std::size_t expect,
                                  const char* what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string tok =
            csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ConfigError(std::string("cannot parse ") + what + " '" +
                              csv + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (expect != 0 && out.size() != expect)
        throw ConfigError(std::string(what) + " needs " +
                          std::to_string(expect) + " comma-separated values");
    return out;
}

struct GridFlags {
    std::string grid = "48,48,48,32";
    std::string xrange = "-1.1,1.1";
    std::string yrange = "-1.1,1.1";
    std::string zrange = "-1.1,1.1";
    std::string trange = "-1.05,0.02";

    void attach(CLI::App* cmd) {
        cmd->add_option("--grid", grid, "node counts nx,ny,nz,nt");
        cmd->add_option("--xrange", xrange, "x extent lo,hi");
        cmd->add_option("--yrange", yrange, "y extent lo,hi");
        cmd->add_option("--zrange", zrange, "z extent lo,hi");
        cmd->add_option("--trange", trange, "time extent lo,hi");
    }

    Grid4 build() const {
        const auto n = parse_doubles(grid, 4, "--grid");
        const auto xr = parse_doubles(xrange, 2, "--xrange");
        const auto yr = parse_doubles(yrange, 2, "--yrange");
        const auto zr = parse_doubles(zrange, 2, "--zrange");
        const auto tr = parse_doubles(trange, 2, "--trange");
        return Grid4::make(int(n[0]), int(n[1]), int(n[2]), int(n[3]),
                           {xr[0], yr[0], zr[0]}, {xr[1], yr[1], zr[1]},
                           tr[0], tr[1]);
    }
};

struct RuleFlags {
    std::string mode = "partial-cell";
    double exclusion_radius = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--rule", mode,
                        "cell weight rule: partial-cell or indicator");
        cmd->add_option("--exclusion-radius", exclusion_radius,
                        "singular exclusion radius for masked quadrature");
    }

    CellWeightRule build() const {
        CellWeightRule r;
        if (mode == "partial-cell")
            r.mode = CellWeightRule::Mode::partial_cell;
        else if (mode == "indicator")
            r.mode = CellWeightRule::Mode::indicator;
        else
            throw ConfigError("unknown cell weight rule '" + mode + "'");
        r.singular_exclusion_radius = exclusion_radius;
        return r;
    }
};

struct LadderFlags {
    double r0 = 1.0;
    double theta = 0.70710678118654752;
    int count = 12;
    int tail = 3;
    bool no_m = false;
    double ms = 5.0, ml = 5.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--r0", r0, "largest ladder radius");
        cmd->add_option("--theta", theta, "geometric ratio in (0,1)");
        cmd->add_option("--count", count, "number of ladder radii");
        cmd->add_option("--tail", tail, "tail size for limit estimates");
        cmd->add_flag("--no-m", no_m, "skip the M_{s,l} column");
        cmd->add_option("--ms", ms, "M norm spatial exponent s");
        cmd->add_option("--ml", ml, "M norm temporal exponent l");
    }

    LadderConfig build() const {
        LadderConfig c;
        c.r0 = r0;
        c.theta = theta;
        c.count = count;
        c.with_m = !no_m;
        c.m_s = ms;
        c.m_l = ml;
        c.validate();
        return c;
    }
};

struct ThresholdFlags {
    Thresholds t;
    void attach(CLI::App* cmd) {
        cmd->add_option("--eps0", t.eps0, "CKN_12 threshold on sup E");
        cmd->add_option("--eps-bar0", t.eps_bar0,
                        "LPS_13 threshold on sup M_{s,l}");
        cmd->add_option("--bound-m", t.bound_M, "bound M on G / limsup E");
        cmd->add_option("--eps-m", t.eps_M, "smallness threshold eps(M)");
        cmd->add_option("--eps-hat", t.eps_hat,
                        "E3_17 threshold on liminf E3");
        cmd->add_option("--zero-tol", t.zero_tol,
                        "COR_16 surrogate for g = 0");
    }
};

Center parse_center(const std::string& s) {
    const auto c = parse_doubles(s, 4, "--center");
    return Center{{c[0], c[1], c[2]}, c[3]};
}

json field_provenance(const VelocityField& v, const ScalarField* p) {
    json j{{"field_meta", v.meta()}, {"grid", reports::to_json(v.grid())}};
    if (p) j["pressure_meta"] = p->meta();
    return j;
}

// --------------------------------------------------------------------------
// gen
// --------------------------------------------------------------------------

int run_gen(const std::string& kind, const GridFlags& gf, const GenSpec& base,
            const std::string& out, const std::string& out_pressure,
            const std::string& out_transport, const std::string& out_forcing) {
    GenSpec spec = base;
    spec.kind = kind;
    const Grid4 g = gf.build();
    const GeneratedFields fields = generate(spec, g);
    if (!out.empty()) {
        if (!fields.v) throw ConfigError("generator emitted no velocity");
        vsf::write(out, *fields.v);
        std::cout << "wrote " << out << "\n";
    }
    if (!out_pressure.empty()) {
        if (!fields.p)
            throw ConfigError("generator '" + kind +
                              "' emits no pressure field");
        vsf::write(out_pressure, *fields.p);
        std::cout << "wrote " << out_pressure << "\n";
    }
    if (!out_transport.empty()) {
        if (!fields.u)
            throw ConfigError("generator '" + kind +
                              "' emits no transport field");
        vsf::write(out_transport, *fields.u);
        std::cout << "wrote " << out_transport << "\n";
    }
    if (!out_forcing.empty()) {
        if (!fields.f)
            throw ConfigError("generator '" + kind + "' emits no forcing");
        vsf::write(out_forcing, *fields.f);
        std::cout << "wrote " << out_forcing << "\n";
    }
    return 0;
}

// --------------------------------------------------------------------------
// eval
// --------------------------------------------------------------------------

int run_eval(const std::string& field, const std::string& pressure,
             const std::string& center_s, const LadderFlags& lf,
             const RuleFlags& rf, const std::string& out_json,
             const std::string& out_csv) {
    const VelocityField v = vsf::read_velocity(field);
    std::optional<ScalarField> p;
    if (!pressure.empty()) {
        p = vsf::read_scalar(pressure);
        if (!p->grid().same_layout(v.grid()))
            throw ConfigError("velocity grid " + v.grid().describe() +
                              " does not match pressure grid " +
                              p->grid().describe());
    }
    const FunctionalOptions opt{rf.build()};
    const FunctionalLadder ladder = build_ladder(
        v, p ? &*p : nullptr, parse_center(center_s), lf.build(), opt);
    json prov = field_provenance(v, p ? &*p : nullptr);
    prov["rule"] = reports::to_json(opt.rule);
    prov["ladder"] = {{"r0", lf.r0},
                      {"theta", lf.theta},
                      {"count", lf.count},
                      {"tail", lf.tail}};
    if (!out_json.empty()) {
        reports::write_json(out_json, reports::ladder_to_json(ladder, prov));
        std::cout << "wrote " << out_json << "\n";
    }
    if (!out_csv.empty()) {
        reports::write_text_atomic(out_csv, reports::ladder_to_csv(ladder));
        std::cout << "wrote " << out_csv << "\n";
    }
    return 0;
}

// --------------------------------------------------------------------------
// audit
// --------------------------------------------------------------------------

int run_audit(const std::string& field, const std::string& pressure,
              const std::string& center_s, const std::string& ineq_csv,
              const std::string& pairs, const LadderFlags& lf,
              const RuleFlags& rf, const std::string& cutoff_center,
              double cutoff_radius, double ramp_on, double ramp_full,
              const std::string& times_csv, const std::string& out_json) {
    const VelocityField v = vsf::read_velocity(field);
    std::optional<ScalarField> p;
    if (!pressure.empty()) {
        p = vsf::read_scalar(pressure);
        if (!p->grid().same_layout(v.grid()))
            throw ConfigError("velocity grid " + v.grid().describe() +
                              " does not match pressure grid " +
                              p->grid().describe());
    }
    const FunctionalOptions opt{rf.build()};
    const Center center = parse_center(center_s);
    FunctionalCache cache(v, p ? &*p : nullptr, center, opt);

    std::vector<std::pair<double, double>> radius_pairs;
    {
        std::size_t pos = 0;
        while (pos < pairs.size()) {
            std::size_t semi = pairs.find(';', pos);
            if (semi == std::string::npos) semi = pairs.size();
            const std::string tok = pairs.substr(pos, semi - pos);
            const std::size_t colon = tok.find(':');
            if (colon == std::string::npos)
                throw ConfigError("radius pair '" + tok +
                                  "' must look like r:rho");
            radius_pairs.emplace_back(std::stod(tok.substr(0, colon)),
                                      std::stod(tok.substr(colon + 1)));
            pos = semi + 1;
        }
    }
    if (radius_pairs.empty()) radius_pairs = {{0.5, 1.0}};

    std::vector<double> ladder_radii;
    {
        double r = lf.r0;
        for (int k = 0; k < lf.count; ++k, r *= lf.theta)
            ladder_radii.push_back(r);
    }

    std::vector<InequalityAudit> audits;
    for (const std::string& name :
         [&] {
             std::vector<std::string> out;
             std::size_t pos = 0;
             while (pos <= ineq_csv.size()) {
                 const std::size_t comma = ineq_csv.find(',', pos);
                 out.push_back(ineq_csv.substr(
                     pos, comma == std::string::npos ? comma : comma - pos));
                 if (comma == std::string::npos) break;
                 pos = comma + 1;
             }
             return out;
         }()) {
        const InequalityId id = inequality_from_string(name);
        switch (id) {
            case InequalityId::I21:
                for (auto [r, rho] : radius_pairs)
                    audits.push_back(audit_interpolation_21(cache, r, rho));
                break;
            case InequalityId::I22:
                for (auto [r, rho] : radius_pairs)
                    audits.push_back(audit_energy_22(cache, rho));
                break;
            case InequalityId::I23:
                for (auto [r, rho] : radius_pairs)
                    audits.push_back(audit_energy_23(cache, rho));
                break;
            case InequalityId::I24:
            case InequalityId::I25:
            case InequalityId::I26: {
                const int variant = id == InequalityId::I24
                                        ? 24
                                        : (id == InequalityId::I25 ? 25 : 26);
                for (auto [r, rho] : radius_pairs)
                    audits.push_back(
                        audit_pressure_decay(variant, cache, r, rho));
                break;
            }
            case InequalityId::L21a:
            case InequalityId::L21b:
            case InequalityId::L21c: {
                const char part = id == InequalityId::L21a
                                      ? 'a'
                                      : (id == InequalityId::L21b ? 'b' : 'c');
                for (auto& a : audit_lemma21(part, cache, ladder_radii))
                    audits.push_back(std::move(a));
                break;
            }
            case InequalityId::LEI: {
                CutoffSpec cs;
                const auto cc = parse_doubles(cutoff_center, 3,
                                              "--cutoff-center");
                cs.center = {cc[0], cc[1], cc[2]};
                cs.radius = cutoff_radius;
                cs.ramp_on = ramp_on;
                cs.ramp_full = ramp_full;
                for (double t : parse_doubles(times_csv, 0, "--times"))
                    audits.push_back(audit_local_energy(
                        v, p ? &*p : nullptr, cs, t, opt));
                break;
            }
            default:
                throw ConfigError(
                    "inequality " + name +
                    " is audited by the verify-linear subcommand");
        }
    }
    json prov = field_provenance(v, p ? &*p : nullptr);
    prov["rule"] = reports::to_json(opt.rule);
    prov["center"] = reports::to_json(center);
    reports::write_json(out_json, reports::audits_to_json(audits, prov));
    std::cout << "wrote " << out_json << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// scan
// --------------------------------------------------------------------------

int run_scan(const std::string& field, const std::string& pressure,
             const std::string& region_s, const std::string& stride_s,
             const std::string& criterion_s, const LadderFlags& lf,
             const RuleFlags& rf, const ThresholdFlags& tf,
             const std::string& out_csv, const std::string& out_json) {
    const VelocityField v = vsf::read_velocity(field);
    std::optional<ScalarField> p;
    if (!pressure.empty()) {
        p = vsf::read_scalar(pressure);
        if (!p->grid().same_layout(v.grid()))
            throw ConfigError("velocity grid " + v.grid().describe() +
                              " does not match pressure grid " +
                              p->grid().describe());
    }
    const auto r = parse_doubles(region_s, 8, "--region");
    const auto s = parse_doubles(stride_s, 4, "--stride");
    ScanRegion region;
    region.x_lo = {r[0], r[2], r[4]};
    region.x_hi = {r[1], r[3], r[5]};
    region.t_lo = r[6];
    region.t_hi = r[7];
    region.x_stride = {s[0], s[1], s[2]};
    region.t_stride = s[3];
    const FunctionalOptions opt{rf.build()};
    std::vector<std::string> skipped;
    const auto entries =
        scan(v, p ? &*p : nullptr, region, criterion_from_string(criterion_s),
             lf.build(), tf.t, lf.tail, opt, &skipped);
    if (!out_csv.empty()) {
        reports::write_text_atomic(out_csv, reports::scan_to_csv(entries));
        std::cout << "wrote " << out_csv << "\n";
    }
    if (!out_json.empty()) {
        json prov = field_provenance(v, p ? &*p : nullptr);
        prov["rule"] = reports::to_json(opt.rule);
        prov["skipped"] = skipped;
        reports::write_json(out_json, reports::scan_to_json(entries, prov));
        std::cout << "wrote " << out_json << "\n";
    }
    return 0;
}

// --------------------------------------------------------------------------
// verify-linear
// --------------------------------------------------------------------------

int run_verify_linear(const std::string& v_path, const std::string& u_path,
                      const std::string& f_path, const std::string& times_csv,
                      const RuleFlags& rf, const std::string& out_json) {
    const VelocityField v = vsf::read_velocity(v_path);
    const VelocityField u = vsf::read_velocity(u_path);
    const VelocityField f = vsf::read_velocity(f_path);
    const FunctionalOptions opt{rf.build()};
    json arr = json::array();
    for (double t : parse_doubles(times_csv, 0, "--times")) {
        const LinearLemmaAudit a = audit_linear_lemma(v, u, f, t, opt);
        arr.push_back({{"t", a.used_t},
                       {"l16", reports::to_json(a.l16)},
                       {"l17", reports::to_json(a.l17)},
                       {"e18", reports::to_json(a.e18)},
                       {"l18_residual", a.l18_residual},
                       {"dirichlet", a.dirichlet}});
    }
    const auto norms = linear_norm_report(v, opt);
    json out{{"schema", "linear-audit-v1"},
             {"audits", arr},
             {"norms", {{"L3_inf", norms.first}, {"L5", norms.second}}},
             {"provenance",
              {{"v_meta", v.meta()},
               {"u_meta", u.meta()},
               {"f_meta", f.meta()},
               {"grid", reports::to_json(v.grid())}}}};
    reports::write_json(out_json, out);
    std::cout << "wrote " << out_json << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Scale-invariant functional evaluation, inequality audits and "
        "regularity-criterion verdicts for discretized velocity/pressure "
        "fields"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate corpus fields (VSF1)");
    std::string kind = "constant";
    GridFlags gen_grid;
    GenSpec spec;
    std::string value = "1,0,0", strain = "0,0,1,0,0,0,0,0,0";
    std::string bump_center = "0,0,0", bump_direction = "1,0,0";
    std::string out, out_pressure, out_transport, out_forcing;
    gen->add_option("--kind", kind,
                    "zero|constant|linear_strain|shear_heat|trig_divfree|"
                    "near_singular|manufactured_linear_triple")
        ->required();
    gen_grid.attach(gen);
    gen->add_option("--value", value, "constant velocity cx,cy,cz");
    gen->add_option("--strain", strain, "row-major traceless 3x3 matrix");
    gen->add_option("--amplitude", spec.amplitude, "shear amplitude");
    gen->add_option("--wavenumber", spec.wavenumber, "shear wavenumber");
    gen->add_option("--seed", spec.trig.seed, "trig spectrum seed");
    gen->add_option("--modes", spec.trig.modes, "trig mode count");
    gen->add_option("--trig-amplitude", spec.trig.amplitude,
                    "trig amplitude");
    gen->add_option("--delta", spec.delta, "near-singular mollification");
    gen->add_option("--bump-center", bump_center, "bump center bx,by,bz");
    gen->add_option("--bump-radius", spec.bump.radius, "bump radius");
    gen->add_option("--bump-amplitude", spec.bump.amplitude,
                    "bump amplitude");
    gen->add_option("--bump-direction", bump_direction, "bump direction");
    gen->add_flag("--with-transport", spec.with_transport,
                  "use a trig transport field in the manufactured triple");
    gen->add_option("--out", out, "velocity output path");
    gen->add_option("--out-pressure", out_pressure, "pressure output path");
    gen->add_option("--out-transport", out_transport,
                    "transport output path (manufactured triple)");
    gen->add_option("--out-forcing", out_forcing,
                    "forcing output path (manufactured triple)");

    // ---- eval ----
    auto* eval = app.add_subcommand(
        "eval", "functional ladder at one center (JSON + CSV)");
    std::string field, pressure, center_s = "0,0,0,0";
    LadderFlags eval_ladder;
    RuleFlags eval_rule;
    std::string eval_out, eval_csv;
    eval->add_option("--field", field, "velocity VSF1 file")->required();
    eval->add_option("--pressure", pressure, "pressure VSF1 file");
    eval->add_option("--center", center_s, "center x,y,z,t");
    eval_ladder.attach(eval);
    eval_rule.attach(eval);
    eval->add_option("--out", eval_out, "ladder JSON path")->required();
    eval->add_option("--csv", eval_csv, "ladder CSV path");

    // ---- audit ----
    auto* audit = app.add_subcommand(
        "audit", "empirical inequality audits (JSON)");
    std::string a_field, a_pressure, a_center = "0,0,0,0";
    std::string ineq = "I21,I22,I23,I24,I25,I26";
    std::string pairs = "0.5:1";
    LadderFlags audit_ladder;
    RuleFlags audit_rule;
    std::string a_cutoff_center = "0,0,0";
    double a_cutoff_radius = 0.75, a_ramp_on = -0.95, a_ramp_full = -0.75;
    std::string a_times = "-0.5";
    std::string audit_out;
    audit->add_option("--field", a_field, "velocity VSF1 file")->required();
    audit->add_option("--pressure", a_pressure, "pressure VSF1 file");
    audit->add_option("--center", a_center, "center x,y,z,t");
    audit->add_option("--ineq", ineq,
                      "comma list from I21,I22,I23,I24,I25,I26,L21a,L21b,"
                      "L21c,LEI");
    audit->add_option("--pairs", pairs, "radius pairs r:rho;r:rho;...");
    audit_ladder.attach(audit);
    audit_rule.attach(audit);
    audit->add_option("--cutoff-center", a_cutoff_center,
                      "LEI cutoff center");
    audit->add_option("--cutoff-radius", a_cutoff_radius,
                      "LEI cutoff support radius");
    audit->add_option("--ramp-on", a_ramp_on, "LEI ramp start time");
    audit->add_option("--ramp-full", a_ramp_full, "LEI ramp end time");
    audit->add_option("--times", a_times, "LEI audit times");
    audit->add_option("--out", audit_out, "audit JSON path")->required();

    // ---- scan ----
    auto* scan_cmd = app.add_subcommand(
        "scan", "ranked space-time scan (CSV + verdict JSON)");
    std::string s_field, s_pressure;
    std::string region = "-0.25,0.25,-0.25,0.25,-0.25,0.25,0,0";
    std::string stride = "0.25,0.25,0.25,0.1";
    std::string criterion = "CKN_12";
    LadderFlags scan_ladder;
    RuleFlags scan_rule;
    ThresholdFlags scan_thresholds;
    std::string scan_csv, scan_json;
    scan_cmd->add_option("--field", s_field, "velocity VSF1 file")
        ->required();
    scan_cmd->add_option("--pressure", s_pressure, "pressure VSF1 file");
    scan_cmd->add_option("--region", region,
                         "xmin,xmax,ymin,ymax,zmin,zmax,tmin,tmax");
    scan_cmd->add_option("--stride", stride, "sx,sy,sz,st");
    scan_cmd->add_option("--criterion", criterion,
                         "CKN_12|LPS_13|MAIN_14|COR_15|COR_16|E3_17");
    scan_ladder.attach(scan_cmd);
    scan_rule.attach(scan_cmd);
    scan_thresholds.attach(scan_cmd);
    scan_cmd->add_option("--out-csv", scan_csv, "ranked CSV path");
    scan_cmd->add_option("--out-json", scan_json, "verdict JSON path");

    // ---- verify-linear ----
    auto* verify = app.add_subcommand(
        "verify-linear", "linear-problem audits on a manufactured triple");
    std::string v_path, u_path, f_path, v_times = "-0.5";
    RuleFlags verify_rule;
    std::string verify_out;
    verify->add_option("--v", v_path, "solution VSF1 file")->required();
    verify->add_option("--u", u_path, "transport VSF1 file")->required();
    verify->add_option("--f", f_path, "forcing VSF1 file")->required();
    verify->add_option("--times", v_times, "audit times t1,t2,...");
    verify_rule.attach(verify);
    verify->add_option("--out", verify_out, "JSON path")->required();

    // ---- report ----
    auto* report = app.add_subcommand("report",
                                      "merge report JSONs into one summary");
    std::string inputs, report_out;
    report->add_option("--inputs", inputs, "comma list of report JSON files")
        ->required();
    report->add_option("--out", report_out, "summary JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const auto val = parse_doubles(value, 3, "--value");
            spec.value = {val[0], val[1], val[2]};
            const auto st = parse_doubles(strain, 9, "--strain");
            for (int i = 0; i < 9; ++i) spec.strain[i] = st[i];
            const auto bc = parse_doubles(bump_center, 3, "--bump-center");
            spec.bump.center = {bc[0], bc[1], bc[2]};
            const auto bd = parse_doubles(bump_direction, 3,
                                          "--bump-direction");
            spec.bump.direction = {bd[0], bd[1], bd[2]};
            return run_gen(kind, gen_grid, spec, out, out_pressure,
                           out_transport, out_forcing);
        }
        if (eval->parsed())
            return run_eval(field, pressure, center_s, eval_ladder, eval_rule,
                            eval_out, eval_csv);
        if (audit->parsed())
            return run_audit(a_field, a_pressure, a_center, ineq, pairs,
                             audit_ladder, audit_rule, a_cutoff_center,
                             a_cutoff_radius, a_ramp_on, a_ramp_full, a_times,
                             audit_out);
        if (scan_cmd->parsed())
            return run_scan(s_field, s_pressure, region, stride, criterion,
                            scan_ladder, scan_rule, scan_thresholds, scan_csv,
                            scan_json);
        if (verify->parsed())
            return run_verify_linear(v_path, u_path, f_path, v_times,
                                     verify_rule, verify_out);
        if (report->parsed()) {
            std::vector<json> docs;
            std::size_t pos = 0;
            while (pos <= inputs.size()) {
                const std::size_t comma = inputs.find(',', pos);
                docs.push_back(reports::read_json(inputs.substr(
                    pos, comma == std::string::npos ? comma : comma - pos)));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            reports::write_json(report_out, reports::merge_reports(docs));
            std::cout << "wrote " << report_out << "\n";
            return 0;
        }
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
