#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "phlo/strain.hpp"

using namespace phlo;

namespace {

// u = xi, p = z: the workhorse generic non-solution pair
FieldPair xi_z_pair(int eps = +1) {
    return {ScalarField::coordinate(3), ScalarField::coordinate(2), eps};
}

// phi == 1 helix: u = cos(-z), p = sin(-z); eps = kappa = l0 = 1
FieldPair unit_helix() {
    const ScalarField minus_z = polynomial({{-1.0, {0, 0, 1, 0}}});
    return {cos(minus_z), sin(minus_z), +1};
}

// running-wave pair: functions of (x, y, xi + eps z) only
FieldPair plane_wave(int eps = +1) {
    const ScalarField s =
        ScalarField::coordinate(3) + static_cast<double>(eps) * ScalarField::coordinate(2);
    return {sin(s), sin(s), eps};
}

}  // namespace

TEST_CASE("strain along the null direction vanishes") {
    for (int eps : {+1, -1}) {
        const StrainTensor s =
            lie_metric(VectorField::zeta_bar_field(eps), {0.3, -0.7, 2.0, 0.1});
        CHECK(max_abs(s) == 0.0);
    }
}

TEST_CASE("strain of a constant field vanishes") {
    const VectorField X = VectorField::constant({{0.3, -1.2, 0.5, 2.0}});
    CHECK(max_abs(lie_metric(X, {1, 2, 3, 4})) == 0.0);
}

TEST_CASE("linear dilation field strain") {
    // X = (x, 0, 0, 0): only entry (1,1) = -2 survives the eta lowering
    const VectorField X = VectorField::from_fields(
        {ScalarField::coordinate(0), ScalarField::constant(0), ScalarField::constant(0),
         ScalarField::constant(0)});
    const StrainTensor s = lie_metric(X, {1, 0.5, 0, 0});
    CHECK(s(0, 0) == -2.0);
    double rest = 0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            if (!(mu == 0 && nu == 0)) rest = std::max(rest, std::abs(s(mu, nu)));
    CHECK(rest == 0.0);
}

TEST_CASE("flow oracle agrees with the algebraic strain") {
    const VectorField X = VectorField::from_fields(
        {ScalarField::coordinate(0), ScalarField::constant(0), ScalarField::constant(0),
         ScalarField::constant(0)});
    const StrainTensor o = lie_metric_flow_oracle(X, {1, 0, 0, 0}, 1e-3);
    CHECK(o(0, 0) == doctest::Approx(-2.0).epsilon(1e-5));

    const StrainTensor oz =
        lie_metric_flow_oracle(VectorField::zeta_bar_field(+1), {0, 0, 0, 0}, 1e-3);
    CHECK(max_abs(oz) < 1e-8);  // isometry flow

    const FieldPair fp = xi_z_pair();
    const Point pt{0.2, -0.1, 0.4, 0.9};
    const StrainTensor exact = lie_metric(VectorField::a_bar(fp), pt);
    const StrainTensor num = lie_metric_flow_oracle(VectorField::a_bar(fp), pt, 1e-3);
    CHECK(max_abs(exact - num) < 1e-5);
}

TEST_CASE("flow oracle sweep over random polynomial fields") {
    SplitMix64 rng(41);
    double worst = 0;
    for (int f = 0; f < 20; ++f) {
        const VectorField X = VectorField::from_fields(
            {random_polynomial(rng), random_polynomial(rng), random_polynomial(rng),
             random_polynomial(rng)});
        for (int q = 0; q < 50; ++q) {
            const Point pt = random_point(rng, 0.8);
            worst = std::max(worst,
                             max_abs(lie_metric(X, pt) - lie_metric_flow_oracle(X, pt, 1e-4)));
        }
    }
    CHECK(worst < 1e-5);
}

TEST_CASE("D matrix entries for u=xi, p=z") {
    const FieldPair fp = xi_z_pair();
    const StrainTensor D = strain_D(fp, {0, 0, 1, 2});
    CHECK(D(0, 3) == 1.0);  // u_xi
    CHECK(D(1, 2) == 1.0);  // p_z
    CHECK(D(3, 0) == 1.0);
    CHECK(D(2, 1) == 1.0);
    double rest = 0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            if (!((mu == 0 && nu == 3) || (mu == 3 && nu == 0) || (mu == 1 && nu == 2) ||
                  (mu == 2 && nu == 1)))
                rest = std::max(rest, std::abs(D(mu, nu)));
    CHECK(rest == 0.0);
}

TEST_CASE("D matrix for the gradient pair u=x, p=y") {
    FieldPair fp{ScalarField::coordinate(0), ScalarField::coordinate(1), +1};
    const StrainTensor D = strain_D(fp, {0.5, 0.5, 0, 0});
    CHECK(D(0, 0) == 2.0);
    CHECK(D(1, 1) == 2.0);
    CHECK(D(2, 2) == 0.0);
    CHECK(D(3, 3) == 0.0);
}

TEST_CASE("constant pair has zero strain") {
    FieldPair fp{ScalarField::constant(2), ScalarField::constant(-1), +1};
    CHECK(max_abs(strain_D(fp, {0, 0, 0, 0})) == 0.0);
    CHECK(max_abs(strain_Dstar(fp, {0, 0, 0, 0})) == 0.0);
}

TEST_CASE("strain_D equals the tabulated closed form everywhere") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        FieldPair fp{random_smooth_field(rng), random_smooth_field(rng), rng.sign()};
        const Point pt = random_point(rng);
        CHECK(max_abs(strain_D(fp, pt) - strain_D_closed_form(fp, pt)) == 0.0);
    }
}

TEST_CASE("strict D* is the negated tabulation outside entry (1,2)") {
    SplitMix64 rng(43);
    double worst12 = 0;
    for (int trial = 0; trial < 200; ++trial) {
        FieldPair fp{random_smooth_field(rng), random_smooth_field(rng), rng.sign()};
        const Point pt = random_point(rng);
        const StrainTensor Ds = strain_Dstar(fp, pt);
        const StrainTensor ref = dstar_tabulated_reference(fp, pt);
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                if ((mu == 0 && nu == 1) || (mu == 1 && nu == 0)) {
                    worst12 = std::max(worst12, std::abs(Ds(mu, nu) + ref(mu, nu)));
                    continue;
                }
                CHECK(std::abs(Ds(mu, nu) + ref(mu, nu)) == 0.0);
            }
        // the strict entry is eps (p_y - u_x); the exception is genuine
        const JetFrame f = eval_frame(fp, pt);
        CHECK(Ds(0, 1) ==
              doctest::Approx(fp.epsilon * (f.p.grad[1] - f.u.grad[0])).epsilon(1e-14));
    }
    CHECK(worst12 > 1e-3);  // the documented mismatch actually occurs
}

TEST_CASE("bracket relations against the strain contraction") {
    const FieldPair fp = xi_z_pair();
    const Point pt{0, 0, 1, 2};
    const VectorField Ab = VectorField::a_bar(fp);
    const VectorField Zb = VectorField::zeta_bar_field(+1);

    const Vector4 br = lie_bracket(Ab, Zb, pt);
    CHECK(br.c[0] == 1.0);
    CHECK(br.c[1] == -1.0);
    CHECK(br.c[2] == 0.0);
    CHECK(br.c[3] == 0.0);

    const Vector4 d_sharp = raise(contract_zeta(strain_D(fp, pt), +1));
    CHECK(d_sharp.c[0] == -1.0);
    CHECK(d_sharp.c[1] == 1.0);
    CHECK(max_abs(d_sharp + br) == 0.0);

    CHECK(max_abs(lie_bracket(Zb, Zb, pt)) == 0.0);

    const Vector4 ds_sharp = raise(contract_zeta(strain_Dstar(fp, pt), +1));
    const Vector4 brs = lie_bracket(VectorField::astar_bar(fp), Zb, pt);
    CHECK(max_abs(ds_sharp + brs) == 0.0);
}

TEST_CASE("contraction relations at the frozen point") {
    const ContractRelations c = contract_relations(xi_z_pair(), {0, 0, 1, 2});
    CHECK(c.D_zz == 0.0);
    CHECK(c.Dstar_zz == 0.0);
    CHECK(c.lie_phi2 == 2.0);
    CHECK(c.D_Az == -1.0);            // = -1/2 L phi^2
    CHECK(c.Dstar_Astarz == -1.0);
    CHECK(c.R == -3.0);
    CHECK(c.D_Astarz == -3.0);        // = +eps R, bridge sign -1
    CHECK(c.Dstar_Az == 3.0);
    CHECK(c.D_Astarz == -c.Dstar_Az);
}

TEST_CASE("contraction relations over random fields") {
    SplitMix64 rng(44);
    const BridgeSigns& bs = bridge_signs();
    CHECK(bs.s46 == -1);
    CHECK(bs.s8 == -1);
    CHECK(bs.s_wedge == -1);
    CHECK(bs.sigma_star == -1);
    for (int trial = 0; trial < 300; ++trial) {
        FieldPair fp{random_smooth_field(rng), random_smooth_field(rng), rng.sign()};
        const Point pt = random_point(rng);
        const ContractRelations c = contract_relations(fp, pt);
        const double eps = fp.epsilon;
        CHECK(std::abs(c.D_Az + 0.5 * c.lie_phi2) < 1e-10);
        CHECK(std::abs(c.Dstar_Astarz + 0.5 * c.lie_phi2) < 1e-10);
        CHECK(std::abs(c.D_Astarz - bs.s46 * (-eps * c.R)) < 1e-10);
        CHECK(std::abs(c.Dstar_Az - bs.s46 * (eps * c.R)) < 1e-10);
        CHECK(c.D_Astarz + c.Dstar_Az == doctest::Approx(0.0).epsilon(1e-14).scale(1.0));
        if (c.lie_psi) {
            const double phi2 = eval_frame(fp, pt).phi2();
            CHECK(std::abs(c.R - phi2 * *c.lie_psi) < 1e-10 * (1.0 + phi2));
        }
    }
}

TEST_CASE("strain flux forms on the unit helix at z = 0") {
    const FieldPair fp = unit_helix();
    const StrainFluxForms fx = strain_flux_forms(fp, {0, 0, 0, 0});
    CHECK(fx.R == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(fx.lie_phi2) < 1e-14);

    const KForm zeta = zeta_form(+1);
    // rotational fluxes: -eps R zeta = -zeta
    CHECK(max_abs_diff(fx.star_D_A_zeta, -zeta) < 1e-14);
    CHECK(max_abs_diff(fx.star_Dstar_Astar_zeta, -zeta) < 1e-14);
    // interior products: i(F)dF = 0 (conserved), i(*F)dF = +eps R zeta
    CHECK(max_abs(fx.iF_dF) < 1e-14);
    CHECK(max_abs(fx.isF_dsF) < 1e-14);
    CHECK(max_abs_diff(fx.isF_dF, zeta) < 1e-14);
    CHECK(max_abs_diff(fx.iF_dsF, -zeta) < 1e-14);
}

TEST_CASE("strain flux forms over random fields with bridge signs") {
    SplitMix64 rng(45);
    const BridgeSigns& bs = bridge_signs();
    for (int trial = 0; trial < 200; ++trial) {
        FieldPair fp{random_smooth_field(rng), random_smooth_field(rng), rng.sign()};
        const Point pt = random_point(rng);
        const StrainFluxForms fx = strain_flux_forms(fp, pt);
        const double eps = fp.epsilon;
        const KForm zt = zeta_form(fp.epsilon);
        const KForm rot = (-eps * fx.R) * zt;
        const KForm trans = (0.5 * fx.lie_phi2) * zt;
        const double scale = 1.0 + std::abs(fx.R) + std::abs(fx.lie_phi2);
        CHECK(max_abs_diff(fx.star_D_A_zeta, rot) < 1e-10 * scale);
        CHECK(max_abs_diff(fx.star_Dstar_Astar_zeta, rot) < 1e-10 * scale);
        CHECK(max_abs_diff(fx.star_D_A_zeta, fx.star_Dstar_Astar_zeta) < 1e-12 * scale);
        CHECK(max_abs_diff(fx.star_D_Astar_zeta, static_cast<double>(bs.s8) * trans) <
              1e-10 * scale);
        CHECK(max_abs_diff(fx.star_Dstar_A_zeta, static_cast<double>(-bs.s8) * trans) <
              1e-10 * scale);
        CHECK(max_abs_diff(fx.iF_dF, trans) < 1e-10 * scale);
        CHECK(max_abs_diff(fx.isF_dsF, trans) < 1e-10 * scale);
        CHECK(max_abs_diff(fx.isF_dF, (-bs.sigma_star * eps * fx.R) * zt) < 1e-10 * scale);
        CHECK(max_abs_diff(fx.iF_dsF, (bs.sigma_star * eps * fx.R) * zt) < 1e-10 * scale);
        // the starred wedge forms and the interior products coincide pairwise
        CHECK(max_abs_diff(fx.star_D_A_zeta, fx.iF_dsF) < 1e-10 * scale);
        CHECK(max_abs_diff(fx.star_D_A_zeta, -1.0 * fx.isF_dF) < 1e-10 * scale);
    }
}

TEST_CASE("plane-wave pair has zero strain fluxes") {
    const FieldPair fp = plane_wave();
    SplitMix64 rng(46);
    for (int trial = 0; trial < 30; ++trial) {
        const Point pt = random_point(rng);
        const StrainFluxForms fx = strain_flux_forms(fp, pt);
        CHECK(std::abs(fx.R) < 1e-14);
        CHECK(std::abs(fx.lie_phi2) < 1e-13);
        CHECK(max_abs(fx.star_D_A_zeta) < 1e-13);
        CHECK(max_abs(fx.iF_dF) < 1e-13);
    }
}

TEST_CASE("wedge independence magnitude") {
    // u=xi, p=z at (0,0,1,2): (Lu)^2 + (Lp)^2 = 1 + 1 = 2
    const KForm w = wedge_independence(xi_z_pair(), {0, 0, 1, 2});
    CHECK(std::abs(w.comp[index_in_grade(0b0011)]) == 2.0);

    // unit helix: phi^2 (L psi)^2 = 1, strict sign = s_wedge * eps = -1
    const KForm wh = wedge_independence(unit_helix(), {0, 0, 0, 0});
    CHECK(wh.comp[index_in_grade(0b0011)] == doctest::Approx(-1.0).epsilon(1e-14));

    // plane wave: vanishes
    CHECK(max_abs(wedge_independence(plane_wave(), {0.1, 0.2, 0.3, 0.4})) < 1e-14);
}

TEST_CASE("solution-family bracket rotates in the transverse plane") {
    // with phi frozen at its peak value, |[A-bar, zeta-bar]| = phi |kappa| / l0
    const ScalarField minus_z = polynomial({{-1.0, {0, 0, 1, 0}}});
    FieldPair helix{cos(minus_z), sin(minus_z), +1};  // phi = 1, kappa = l0 = 1
    SplitMix64 rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        Point pt = random_point(rng);
        const Vector4 br = lie_bracket(VectorField::a_bar(helix),
                                       VectorField::zeta_bar_field(+1), pt);
        CHECK(br.c[2] == 0.0);
        CHECK(br.c[3] == 0.0);
        const double mag = std::sqrt(br.c[0] * br.c[0] + br.c[1] * br.c[1]);
        CHECK(mag == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("bridge signs are stable across seeds") {
    const BridgeSigns a = determine_bridge_signs(1, 400);
    const BridgeSigns b = determine_bridge_signs(999, 400);
    CHECK(a.s46 == b.s46);
    CHECK(a.s8 == b.s8);
    CHECK(a.s_wedge == b.s_wedge);
    CHECK(a.sigma_star == b.sigma_star);
}
