#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "test_helpers.hpp"

using namespace morrey;
using testutil::kBallVolume;
using testutil::rel_err;
using testutil::sample_scalar;
using testutil::sample_velocity;
using testutil::unit_grid;

namespace {

FunctionalCache cache_for(const VelocityField& v, const ScalarField* p) {
    return FunctionalCache(v, p, Center{}, FunctionalOptions{});
}

}  // namespace

TEST_CASE("interpolation audit on the zero and constant fields") {
    const Grid4 g = unit_grid(56, 48);
    const VelocityField zero =
        sample_velocity(g, [](const Vec3&, double) { return Vec3{0, 0, 0}; });
    FunctionalCache zc = cache_for(zero, nullptr);
    const InequalityAudit za = audit_interpolation_21(zc, 1.0, 1.0);
    CHECK(za.lhs == 0.0);
    CHECK(za.rhs_core == 0.0);
    CHECK(za.implied_constant == 0.0);

    // r = rho = 1 on v = (1,0,0): lhs = C(1) = 4pi/3, rhs = A(1)^{3/2}
    // (the dissipation term drops), implied constant (4pi/3)^{-1/2}.
    const VelocityField ones =
        sample_velocity(g, [](const Vec3&, double) { return Vec3{1, 0, 0}; });
    FunctionalCache oc = cache_for(ones, nullptr);
    const InequalityAudit oa = audit_interpolation_21(oc, 1.0, 1.0);
    CHECK(rel_err(oa.lhs, kBallVolume) < 0.01);
    CHECK(rel_err(oa.implied_constant, 1.0 / std::sqrt(kBallVolume)) < 0.02);

    CHECK_THROWS_AS(audit_interpolation_21(oc, 1.0, 0.5), DomainError);
}

TEST_CASE("interpolation audit is finite on a smooth shear flow") {
    const Grid4 g = unit_grid(48, 48);
    const auto [v, p] = gen_shear_heat(g, 1.0, 1.0);
    FunctionalCache fc = cache_for(v, nullptr);
    const InequalityAudit a = audit_interpolation_21(fc, 0.5, 1.0);
    CHECK(std::isfinite(a.implied_constant));
    CHECK(a.lhs > 0.0);
    CHECK(a.rhs_core > 0.0);
}

TEST_CASE("energy audits on the constant field match the closed form") {
    const Grid4 g = unit_grid(56, 48);
    const VelocityField ones =
        sample_velocity(g, [](const Vec3&, double) { return Vec3{1, 0, 0}; });
    const ScalarField p =
        sample_scalar(g, [](const Vec3&, double) { return 0.25; });
    FunctionalCache fc = cache_for(ones, &p);

    // lhs = A(1/2) = (4pi/3)/4 (E = 0); rhs = C(1)^{2/3} + C(1) (D0 = 0).
    const InequalityAudit a22 = audit_energy_22(fc, 1.0);
    const double expected =
        (kBallVolume / 4.0) /
        (std::pow(kBallVolume, 2.0 / 3.0) + kBallVolume);
    CHECK(rel_err(a22.implied_constant, expected) < 0.02);

    const InequalityAudit a23 = audit_energy_23(fc, 1.0);
    CHECK(a23.lhs == Catch::Approx(a22.lhs));
    // (2.3) drops the bare C term, so its bracket is smaller here.
    CHECK(a23.rhs_core <= a22.rhs_core);

    const VelocityField zero =
        sample_velocity(g, [](const Vec3&, double) { return Vec3{0, 0, 0}; });
    FunctionalCache zc = cache_for(zero, &p);
    CHECK(audit_energy_22(zc, 1.0).implied_constant == 0.0);
}

TEST_CASE("pressure decay audits") {
    const Grid4 g = unit_grid(48, 48);
    const VelocityField v = gen_trig_divfree(g, TrigSpec{31, 3, 1.0});

    const ScalarField flat = sample_scalar(
        g, [](const Vec3&, double t) { return 1.0 + 0.5 * std::sin(4 * t); });
    FunctionalCache flat_cache = cache_for(v, &flat);
    for (int variant : {24, 25, 26}) {
        const InequalityAudit a =
            audit_pressure_decay(variant, flat_cache, 0.5, 1.0);
        CHECK(a.lhs < 1e-10);  // per-slice mean subtraction kills c(t)
        CHECK(a.implied_constant < 1e-6);
    }

    const ScalarField p = gen_trig_pressure(g, TrigSpec{32, 3, 1.0});
    FunctionalCache fc = cache_for(v, &p);
    for (int variant : {24, 25, 26}) {
        const InequalityAudit a =
            audit_pressure_decay(variant, fc, 0.5, 1.0);
        INFO("variant " << variant);
        CHECK(std::isfinite(a.implied_constant));
        CHECK(a.lhs > 0.0);
        CHECK(a.rhs_core > 0.0);
    }

    CHECK_THROWS_AS(audit_pressure_decay(24, fc, 0.05, 1.0), DomainError);
    CHECK_THROWS_AS(audit_pressure_decay(27, fc, 0.5, 1.0), ConfigError);
}

TEST_CASE("boundedness-transfer audits (Lemma-level)") {
    const Grid4 g = unit_grid(64, 72);
    const std::vector<double> ladder{1.0, 0.5, 0.25};

    const VelocityField zero =
        sample_velocity(g, [](const Vec3&, double) { return Vec3{0, 0, 0}; });
    const ScalarField zp =
        sample_scalar(g, [](const Vec3&, double) { return 0.0; });
    FunctionalCache zc = cache_for(zero, &zp);
    for (char part : {'a', 'b', 'c'})
        for (const auto& a : audit_lemma21(part, zc, ladder))
            CHECK(a.lhs == 0.0);

    // Constant field, part b: C0 = C(1) = 4pi/3 since C(r) grows like r^3;
    // at r = 1/4 the lhs is A(1/4) = (4pi/3)/16.
    const VelocityField ones =
        sample_velocity(g, [](const Vec3&, double) { return Vec3{1, 0, 0}; });
    FunctionalCache oc = cache_for(ones, &zp);
    const auto audits_b = audit_lemma21('b', oc, ladder);
    REQUIRE(audits_b.size() == 2);  // r = 1/2 and r = 1/4 are admissible
    const InequalityAudit& quarter = audits_b.back();
    CHECK(quarter.params.at("r") == 0.25);
    CHECK(rel_err(quarter.params.at("premise_C0"), kBallVolume) < 0.01);
    const double expected =
        (kBallVolume / 16.0) /
        (kBallVolume + std::pow(kBallVolume, 2.0 / 3.0));
    CHECK(rel_err(quarter.implied_constant, expected) < 0.02);

    // Parts a and c report their premises and stay finite on smooth data.
    const auto [shear, sp] = gen_shear_heat(g, 1.0, 1.0);
    FunctionalCache sc = cache_for(shear, &sp);
    for (char part : {'a', 'c'}) {
        for (const auto& a : audit_lemma21(part, sc, ladder)) {
            INFO("part " << part);
            CHECK(std::isfinite(a.implied_constant));
            CHECK(a.rhs_core > 0.0);
        }
    }

    // Implied premise constants grow with the field amplitude.
    const auto [big, bp] = gen_shear_heat(g, 2.0, 1.0);
    FunctionalCache bc = cache_for(big, &bp);
    const double small_d =
        audit_lemma21('a', sc, ladder).front().implied_constant;
    const double big_d =
        audit_lemma21('a', bc, ladder).front().implied_constant;
    CHECK(big_d >= small_d);

    const std::vector<double> too_big{1.0, 0.8};
    CHECK_THROWS_AS(audit_lemma21('a', sc, too_big), DomainError);
}

TEST_CASE("local energy residual vanishes on the zero field") {
    const Grid4 g = unit_grid(32, 32);
    const VelocityField zero =
        sample_velocity(g, [](const Vec3&, double) { return Vec3{0, 0, 0}; });
    const LocalEnergyTerms t =
        local_energy_terms(zero, nullptr, CutoffSpec{}, -0.5);
    CHECK(t.lhs() == 0.0);
    CHECK(t.rhs() == 0.0);
    CHECK(t.residual() == 0.0);
}

TEST_CASE("local energy identity holds on the exact shear solution") {
    const Grid4 g = unit_grid(48, 48);
    const auto [v, p] = gen_shear_heat(g, 1.0, 1.0);
    for (double t : {-0.75, -0.5, -0.25}) {
        const LocalEnergyTerms terms =
            local_energy_terms(v, &p, CutoffSpec{}, t);
        INFO("t=" << t << " lhs=" << terms.lhs() << " rhs=" << terms.rhs());
        CHECK(std::fabs(terms.residual()) <= 0.02 * terms.lhs());
    }
}

TEST_CASE("local energy residual scales with the known homogeneity") {
    // Every term is quadratic in v except the transport term (cubic), which
    // vanishes identically for a shear profile; doubling the amplitude
    // multiplies the residual by 4.
    const Grid4 g = unit_grid(40, 40);
    const auto [v1, p1] = gen_shear_heat(g, 1.0, 1.0);
    const auto [v2, p2] = gen_shear_heat(g, 2.0, 1.0);
    const double r1 = local_energy_residual(v1, &p1, CutoffSpec{}, -0.5);
    const double r2 = local_energy_residual(v2, &p2, CutoffSpec{}, -0.5);
    CHECK(r2 == Catch::Approx(4.0 * r1).epsilon(0.05));
}

TEST_CASE("local energy residual flags non-solutions") {
    const Grid4 g = unit_grid(40, 40);
    const auto [v, p] = gen_shear_heat(g, 1.0, 1.0);
    const double exact_rel =
        std::fabs(local_energy_residual(v, &p, CutoffSpec{}, -0.5)) /
        local_energy_terms(v, &p, CutoffSpec{}, -0.5).lhs();

    // A static trig field solves nothing; the identity must fail loudly.
    const VelocityField rogue = gen_trig_divfree(g, TrigSpec{41, 3, 1.0});
    const LocalEnergyTerms terms =
        local_energy_terms(rogue, nullptr, CutoffSpec{}, -0.5);
    const double rogue_rel = std::fabs(terms.residual()) / terms.lhs();
    INFO("exact_rel=" << exact_rel << " rogue_rel=" << rogue_rel);
    CHECK(rogue_rel > 10.0 * exact_rel);
    CHECK(rogue_rel > 0.05);
}

TEST_CASE("local energy residual obeys the natural-scaling weight") {
    // With phi^l = l^4 phi(l x, l^2 t) every term of the identity carries
    // a factor l^3.
    const Grid4 g = unit_grid(48, 48);
    const VelocityField v = gen_trig_divfree(g, TrigSpec{8, 3, 1.0});
    const ScalarField p = gen_trig_pressure(g, TrigSpec{9, 3, 1.0});
    CutoffSpec base;
    base.radius = 0.35;
    base.ramp_on = -0.22;
    base.ramp_full = -0.16;
    const double t = -0.1;
    const double lambda = 0.5;

    const double r_base = local_energy_residual(v, &p, base, t);

    const auto [vl, pl] = natural_rescale(v, p, lambda);
    CutoffSpec scaled;
    scaled.radius = base.radius / lambda;
    scaled.ramp_on = base.ramp_on / (lambda * lambda);
    scaled.ramp_full = base.ramp_full / (lambda * lambda);
    scaled.amplitude = std::pow(lambda, 4.0);
    const double r_scaled =
        local_energy_residual(vl, &pl, scaled, t / (lambda * lambda));

    const double predicted = std::pow(lambda, 3.0) * r_base;
    INFO("base=" << r_base << " scaled=" << r_scaled
                 << " predicted=" << predicted);
    CHECK(rel_err(r_scaled, predicted) < 0.05);
}

TEST_CASE("cutoffs must vanish near the parabolic boundary") {
    const Grid4 g = unit_grid(24, 24);
    const auto [v, p] = gen_shear_heat(g, 1.0, 1.0);
    CutoffSpec wide;
    wide.radius = 1.2;  // support sticks out of B(0,1)
    CHECK_THROWS_AS(local_energy_residual(v, &p, wide, -0.5), ContractError);
    CutoffSpec early;
    early.ramp_on = -1.0;  // live at t = -1
    early.ramp_full = -0.8;
    CHECK_THROWS_AS(local_energy_residual(v, &p, early, -0.5), ContractError);
}

TEST_CASE("linear problem audits on manufactured triples") {
    const Grid4 g = unit_grid(56, 48);
    BumpFieldSpec bump;
    bump.radius = 0.7;

    // u = 0.
    const ManufacturedTriple t0 = gen_manufactured_triple(g, bump);
    const LinearLemmaAudit a0 = audit_linear_lemma(t0.v, t0.u, t0.f, -0.5);
    INFO("l18 residual " << a0.l18_residual << " dirichlet " << a0.dirichlet);
    CHECK(a0.l18_residual <= 0.02 * a0.dirichlet);
    CHECK(std::isfinite(a0.l16.implied_constant));
    CHECK(std::isfinite(a0.l17.implied_constant));

    // u from the trig generator.
    const ManufacturedTriple t1 =
        gen_manufactured_triple(g, bump, TrigSpec{77, 3, 0.5});
    const LinearLemmaAudit a1 = audit_linear_lemma(t1.v, t1.u, t1.f, -0.5);
    CHECK(a1.l18_residual <= 0.02 * a1.dirichlet);
    CHECK(std::isfinite(a1.l16.implied_constant));
    CHECK(std::isfinite(a1.l17.implied_constant));

    // Zero solution: every slice quantity vanishes.
    BumpFieldSpec none;
    none.amplitude = 0.0;
    const ManufacturedTriple tz = gen_manufactured_triple(g, none);
    const LinearLemmaAudit az = audit_linear_lemma(tz.v, tz.u, tz.f, -0.5);
    CHECK(az.l18_residual == 0.0);
    CHECK(az.l16.lhs == 0.0);
    CHECK(az.l17.lhs == 0.0);

    // A transport field with order-one divergence violates the contract.
    const VelocityField bad = sample_velocity(
        g, [](const Vec3& x, double) { return Vec3{x[0], 0, 0}; });
    CHECK_THROWS_AS(audit_linear_lemma(t0.v, bad, t0.f, -0.5),
                    ContractError);
}

TEST_CASE("l18 residual shrinks under refinement") {
    auto residual = [](int n) {
        const Grid4 g = Grid4::make_cube(n, n, -1.1, 1.1, -1.05, 0.02);
        BumpFieldSpec bump;
        bump.radius = 0.7;
        const ManufacturedTriple t = gen_manufactured_triple(g, bump);
        const LinearLemmaAudit a = audit_linear_lemma(t.v, t.u, t.f, -0.5);
        return a.l18_residual / a.dirichlet;
    };
    const double coarse = residual(24);
    const double fine = residual(48);
    INFO("coarse=" << coarse << " fine=" << fine);
    CHECK(fine < coarse);
    CHECK(std::log2(coarse / fine) >= 1.0);
}

TEST_CASE("linear norm report closed forms and homogeneity") {
    const Grid4 g = unit_grid(48, 32);
    const VelocityField zero =
        sample_velocity(g, [](const Vec3&, double) { return Vec3{0, 0, 0}; });
    const auto [z3, z5] = linear_norm_report(zero);
    CHECK(z3 == 0.0);
    CHECK(z5 == 0.0);

    const VelocityField ones =
        sample_velocity(g, [](const Vec3&, double) { return Vec3{1, 0, 0}; });
    const auto [n3, n5] = linear_norm_report(ones);
    CHECK(rel_err(n3, std::pow(kBallVolume, 1.0 / 3.0)) < 0.01);
    CHECK(rel_err(n5, std::pow(kBallVolume, 0.2)) < 0.01);

    BumpFieldSpec bump;
    bump.radius = 0.5;
    const ManufacturedTriple t = gen_manufactured_triple(g, bump);
    BumpFieldSpec half = bump;
    half.amplitude = 0.5;
    const ManufacturedTriple th = gen_manufactured_triple(g, half);
    const auto [f3, f5] = linear_norm_report(t.v);
    const auto [h3, h5] = linear_norm_report(th.v);
    CHECK(rel_err(h3, 0.5 * f3) < 1e-12);
    CHECK(rel_err(h5, 0.5 * f5) < 1e-12);
}
