// Lie derivatives of the flat metric along the eigen vector fields of the
// energy tensor: the strain tensors D and D*, their contractions against the
// null direction, Lie brackets, and the starred strain-flux 1-forms.
//
// One strict sign convention is used throughout: indices move only through
// eta, and L_X eta is the symmetrized gradient of the lowered field. Every
// global sign relating this convention to the alternate tabulation of these
// relations is frozen in BridgeSigns and printed by verification reports;
// nothing is patched per equation.

#pragma once

#include <optional>

#include "phlo/field.hpp"
#include "phlo/stress_energy.hpp"

namespace phlo {

/// Symmetric covariant strain (L_X eta)_{mu nu}.
struct StrainTensor {
    std::array<std::array<double, 4>, 4> cov{};

    double operator()(int mu, int nu) const { return cov[mu][nu]; }
    double& operator()(int mu, int nu) { return cov[mu][nu]; }

    friend StrainTensor operator-(const StrainTensor& a, const StrainTensor& b) {
        StrainTensor r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.cov[i][j] = a.cov[i][j] - b.cov[i][j];
        return r;
    }
};

inline double max_abs(const StrainTensor& s) {
    double m = 0;
    for (auto& row : s.cov)
        for (double v : row) m = std::max(m, std::abs(v));
    return m;
}

/// Contravariant vector field with exact component jets.
class VectorField {
public:
    using JetFn = std::function<std::array<ScalarJet, 4>(const Point&)>;

    VectorField() = default;
    explicit VectorField(JetFn fn) : fn_(std::make_shared<JetFn>(std::move(fn))) {}

    std::array<ScalarJet, 4> jets(const Point& pt) const { return (*fn_)(pt); }
    Vector4 eval(const Point& pt) const {
        const auto j = jets(pt);
        return {{j[0].value, j[1].value, j[2].value, j[3].value}};
    }

    static VectorField constant(const Vector4& v) {
        return VectorField([v](const Point&) {
            return std::array<ScalarJet, 4>{
                ScalarJet::constant(v.c[0]), ScalarJet::constant(v.c[1]),
                ScalarJet::constant(v.c[2]), ScalarJet::constant(v.c[3])};
        });
    }
    static VectorField from_fields(std::array<ScalarField, 4> f) {
        return VectorField([f = std::move(f)](const Point& pt) {
            return std::array<ScalarJet, 4>{f[0].jet(pt), f[1].jet(pt), f[2].jet(pt),
                                            f[3].jet(pt)};
        });
    }
    /// The constant null direction zeta-bar = (0, 0, -eps, 1).
    static VectorField zeta_bar_field(int eps) { return constant(zeta_bar(eps)); }
    /// A-bar: the eta-raised electric component, (-u, -p, 0, 0).
    static VectorField a_bar(const FieldPair& fp) {
        return VectorField([fp](const Point& pt) {
            const JetFrame f = eval_frame(fp, pt);
            return std::array<ScalarJet, 4>{-f.u, -f.p, ScalarJet::constant(0.0),
                                            ScalarJet::constant(0.0)};
        });
    }
    /// A*-bar: the eta-raised magnetic component, (-eps p, eps u, 0, 0).
    static VectorField astar_bar(const FieldPair& fp) {
        return VectorField([fp](const Point& pt) {
            const JetFrame f = eval_frame(fp, pt);
            const double e = static_cast<double>(f.epsilon);
            return std::array<ScalarJet, 4>{-e * f.p, e * f.u, ScalarJet::constant(0.0),
                                            ScalarJet::constant(0.0)};
        });
    }

private:
    std::shared_ptr<JetFn> fn_;
};

// ---------------------------------------------------------------------------
// Strain tensors
// ---------------------------------------------------------------------------

/// (L_X eta)_{mu nu} = d_mu X_nu + d_nu X_mu with X lowered through eta
/// (flat metric, Cartesian chart).
inline StrainTensor lie_metric(const VectorField& X, const Point& pt) {
    const auto j = X.jets(pt);
    StrainTensor s;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            s.cov[mu][nu] = MetricSignature::diag[nu] * j[nu].grad[mu] +
                            MetricSignature::diag[mu] * j[mu].grad[nu];
    return s;
}

/// Flow-based oracle: pull eta back through the numerically integrated flow
/// of X and form the symmetric difference quotient,
///   (phi_t^* eta - phi_{-t}^* eta) / (2 t),
/// with the flow differential taken by finite differences. Truncation error
/// O(t^2) plus the Jacobian stencil error.
inline StrainTensor lie_metric_flow_oracle(const VectorField& X, const Point& pt,
                                           double t_step) {
    if (!(t_step > 0)) throw NumericError("lie_metric_flow_oracle: step must be positive");
    auto values = [&X](const Point& q) { return X.eval(q); };
    const double hj = 1e-3;  // Jacobian stencil

    auto pullback = [&](double t) {
        // J^a_mu = d (flow_t)^a / d x^mu by 4th-order central differences
        std::array<std::array<double, 4>, 4> J{};
        for (int mu = 0; mu < 4; ++mu) {
            for (int a = 0; a < 4; ++a) {
                J[a][mu] = central_diff_4(
                    [&](const Point& q) { return rk4_flow(values, q, t)[a]; }, pt, mu, hj);
            }
        }
        std::array<std::array<double, 4>, 4> g{};
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                double s = 0;
                for (int a = 0; a < 4; ++a)
                    s += MetricSignature::diag[a] * J[a][mu] * J[a][nu];
                g[mu][nu] = s;
            }
        return g;
    };

    const auto fwd = pullback(+t_step);
    const auto bwd = pullback(-t_step);
    StrainTensor s;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            s.cov[mu][nu] = (fwd[mu][nu] - bwd[mu][nu]) / (2.0 * t_step);
            if (!std::isfinite(s.cov[mu][nu]))
                throw NumericError("lie_metric_flow_oracle: non-finite pullback");
        }
    return s;
}

/// D = L_{A-bar} eta.
inline StrainTensor strain_D(const FieldPair& fp, const Point& pt) {
    return lie_metric(VectorField::a_bar(fp), pt);
}
/// D* = L_{A*-bar} eta under the strict convention.
inline StrainTensor strain_Dstar(const FieldPair& fp, const Point& pt) {
    return lie_metric(VectorField::astar_bar(fp), pt);
}

/// D built directly from the tabulated closed form (2u_x, u_y + p_x, ...);
/// agrees entrywise with strain_D.
inline StrainTensor strain_D_closed_form(const FieldPair& fp, const Point& pt) {
    const JetFrame f = eval_frame(fp, pt);
    const auto& u = f.u.grad;
    const auto& p = f.p.grad;
    StrainTensor d;
    d.cov[0][0] = 2 * u[0];
    d.cov[0][1] = d.cov[1][0] = u[1] + p[0];
    d.cov[0][2] = d.cov[2][0] = u[2];
    d.cov[0][3] = d.cov[3][0] = u[3];
    d.cov[1][1] = 2 * p[1];
    d.cov[1][2] = d.cov[2][1] = p[2];
    d.cov[1][3] = d.cov[3][1] = p[3];
    return d;
}

/// D* as tabulated under the alternate sign convention that accompanies the
/// closed form above in the source derivation of this model. Rows/columns
/// 3 and 4 are the negative of strain_Dstar; entry (1,2) of this tabulation
/// matches neither convention and is excluded from comparisons (reported,
/// never patched). Diagnostic use only.
inline StrainTensor dstar_tabulated_reference(const FieldPair& fp, const Point& pt) {
    const JetFrame f = eval_frame(fp, pt);
    const double e = static_cast<double>(f.epsilon);
    const auto& u = f.u.grad;
    const auto& p = f.p.grad;
    StrainTensor d;
    d.cov[0][0] = -2 * e * p[0];
    d.cov[0][1] = d.cov[1][0] = -e * (p[1] + u[0]);
    d.cov[0][2] = d.cov[2][0] = -e * p[2];
    d.cov[0][3] = d.cov[3][0] = -e * p[3];
    d.cov[1][1] = 2 * e * u[1];
    d.cov[1][2] = d.cov[2][1] = e * u[2];
    d.cov[1][3] = d.cov[3][1] = e * u[3];
    return d;
}

// ---------------------------------------------------------------------------
// Brackets and contractions
// ---------------------------------------------------------------------------

/// [X, Y]^mu = X^nu d_nu Y^mu - Y^nu d_nu X^mu.
inline Vector4 lie_bracket(const VectorField& X, const VectorField& Y, const Point& pt) {
    const auto jx = X.jets(pt);
    const auto jy = Y.jets(pt);
    Vector4 r;
    for (int mu = 0; mu < 4; ++mu) {
        double s = 0;
        for (int nu = 0; nu < 4; ++nu)
            s += jx[nu].value * jy[mu].grad[nu] - jy[nu].value * jx[mu].grad[nu];
        r.c[mu] = s;
    }
    return r;
}

/// S(X, Y) = S_{mu nu} X^mu Y^nu.
inline double contract(const StrainTensor& s, const Vector4& X, const Vector4& Y) {
    double r = 0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) r += s.cov[mu][nu] * X.c[mu] * Y.c[nu];
    return r;
}

/// The 1-form S(zeta-bar)_mu = S_{mu nu} zeta-bar^nu.
inline KForm contract_zeta(const StrainTensor& s, int eps) {
    const Vector4 zb = zeta_bar(eps);
    KForm r = KForm::zero(1);
    for (int mu = 0; mu < 4; ++mu) {
        double v = 0;
        for (int nu = 0; nu < 4; ++nu) v += s.cov[mu][nu] * zb.c[nu];
        r.comp[mu] = v;
    }
    return r;
}

/// Values of the four strain contractions against the null direction, plus
/// the scalar data they are compared with.
struct ContractRelations {
    double D_zz = 0.0;           // D(zeta-bar, zeta-bar)
    double Dstar_zz = 0.0;       // D*(zeta-bar, zeta-bar)
    double D_Az = 0.0;           // D(A-bar, zeta-bar)        = -1/2 L phi^2
    double Dstar_Astarz = 0.0;   // D*(A*-bar, zeta-bar)      = -1/2 L phi^2
    double D_Astarz = 0.0;       // D(A*-bar, zeta-bar)       = s46 * (-eps R)
    double Dstar_Az = 0.0;       // D*(A-bar, zeta-bar)       = s46 * (+eps R)
    double R = 0.0;
    double lie_phi2 = 0.0;
    std::optional<double> lie_psi;  // defined only where phi^2 clears the floor
};

inline ContractRelations contract_relations(const FieldPair& fp, const Point& pt,
                                            double phase_floor = 1e-14) {
    const StrainTensor D = strain_D(fp, pt);
    const StrainTensor Ds = strain_Dstar(fp, pt);
    const Vector4 zb = zeta_bar(fp.epsilon);
    const JetFrame f = eval_frame(fp, pt);
    const Vector4 Ab = raise(a_form(f.u.value, f.p.value));
    const Vector4 Asb = raise(astar_form(f.u.value, f.p.value, fp.epsilon));

    ContractRelations r;
    r.D_zz = contract(D, zb, zb);
    r.Dstar_zz = contract(Ds, zb, zb);
    r.D_Az = contract(D, Ab, zb);
    r.Dstar_Astarz = contract(Ds, Asb, zb);
    r.D_Astarz = contract(D, Asb, zb);
    r.Dstar_Az = contract(Ds, Ab, zb);
    r.R = f.curvature();
    r.lie_phi2 = f.lie_phi2();
    if (f.phi2() > phase_floor) r.lie_psi = f.lie_psi();
    return r;
}

// ---------------------------------------------------------------------------
// Strain-flux 1-forms and interior products
// ---------------------------------------------------------------------------

struct StrainFluxForms {
    KForm D_zeta, Dstar_zeta;  // the two contraction 1-forms
    KForm star_D_A_zeta;       // *[D(zb) ^ A  ^ zeta]   = -eps R zeta
    KForm star_Dstar_Astar_zeta;  //                       = -eps R zeta
    KForm star_D_Astar_zeta;   // *[D(zb) ^ A* ^ zeta]   = s8 * 1/2 L phi^2 zeta
    KForm star_Dstar_A_zeta;   // *[D*(zb) ^ A ^ zeta]   = -s8 * 1/2 L phi^2 zeta
    KForm iF_dF, isF_dsF;      // = 1/2 L phi^2 zeta
    KForm isF_dF, iF_dsF;      // = -sigma* eps R zeta, +sigma* eps R zeta
    double R = 0.0;
    double lie_phi2 = 0.0;
};

inline StrainFluxForms strain_flux_forms(const FieldPair& fp, const Point& pt) {
    const JetFrame f = eval_frame(fp, pt);
    const KForm zeta = zeta_form(fp.epsilon);
    const KForm A = a_form(f.u.value, f.p.value);
    const KForm As = astar_form(f.u.value, f.p.value, fp.epsilon);

    StrainFluxForms r;
    r.D_zeta = contract_zeta(strain_D(fp, pt), fp.epsilon);
    r.Dstar_zeta = contract_zeta(strain_Dstar(fp, pt), fp.epsilon);
    r.star_D_A_zeta = hodge(wedge(wedge(r.D_zeta, A), zeta));
    r.star_Dstar_Astar_zeta = hodge(wedge(wedge(r.Dstar_zeta, As), zeta));
    r.star_D_Astar_zeta = hodge(wedge(wedge(r.D_zeta, As), zeta));
    r.star_Dstar_A_zeta = hodge(wedge(wedge(r.Dstar_zeta, A), zeta));

    const KFormJet Fj = f.F();
    const KFormJet sFj = f.starF();
    const KForm dF = exterior_derivative(Fj);
    const KForm dsF = exterior_derivative(sFj);
    r.iF_dF = interior_2_3(Fj.value(), dF);
    r.isF_dsF = interior_2_3(sFj.value(), dsF);
    r.isF_dF = interior_2_3(sFj.value(), dF);
    r.iF_dsF = interior_2_3(Fj.value(), dsF);

    r.R = f.curvature();
    r.lie_phi2 = f.lie_phi2();
    return r;
}

/// D(zeta-bar) ^ D*(zeta-bar); proportional to dx ^ dy with coefficient of
/// magnitude phi^2 (L psi)^2 wherever the phase is defined; the global sign
/// is part of BridgeSigns.
inline KForm wedge_independence(const FieldPair& fp, const Point& pt) {
    const KForm a = contract_zeta(strain_D(fp, pt), fp.epsilon);
    const KForm b = contract_zeta(strain_Dstar(fp, pt), fp.epsilon);
    return wedge(a, b);
}

// ---------------------------------------------------------------------------
// Bridge signs
// ---------------------------------------------------------------------------

/// Frozen global signs relating the strict convention used here to the
/// alternate tabulation of relations (contractions, flux forms, the strain
/// wedge). Constant across fields, points and epsilon; determined once by a
/// randomized sweep and reported alongside every verification run.
struct BridgeSigns {
    int s46 = 0;        // D(A*-bar, zb) vs -eps R   (and D*(A-bar, zb) vs +eps R)
    int s8 = 0;         // *[D(zb)^A*^zeta] vs 1/2 L phi^2 zeta
    int s_wedge = 0;    // D(zb)^D*(zb) vs +eps phi^2 (L psi)^2 dx^dy
    int sigma_star = 0; // hodge(A^zeta) vs A*^zeta
};

namespace detail {

inline void absorb_sign(int& slot, double lhs, double rhs, const char* what) {
    if (std::abs(rhs) < 1e-6) return;  // too small to resolve a sign
    const int s = (lhs / rhs > 0) ? +1 : -1;
    if (std::abs(lhs - s * rhs) > 1e-9 * (1.0 + std::abs(rhs)))
        throw InvariantError(std::string("bridge signs: |lhs| != |rhs| for ") + what);
    if (slot != 0 && slot != s)
        throw InvariantError(std::string("bridge signs: sign not constant for ") + what);
    slot = s;
}

}  // namespace detail

/// Randomized sweep establishing that each bridge sign is a single constant.
inline BridgeSigns determine_bridge_signs(uint64_t seed, int samples = 1200) {
    SplitMix64 rng(seed);
    BridgeSigns signs;
    signs.sigma_star = phlo::sigma_star();
    for (int k = 0; k < samples; ++k) {
        FieldPair fp{random_polynomial(rng), random_polynomial(rng), rng.sign()};
        const Point pt = random_point(rng);
        const ContractRelations c = contract_relations(fp, pt);
        const double eps = static_cast<double>(fp.epsilon);

        detail::absorb_sign(signs.s46, c.D_Astarz, -eps * c.R, "curvature contraction");
        detail::absorb_sign(signs.s46, c.Dstar_Az, +eps * c.R, "dual curvature contraction");

        const StrainFluxForms fx = strain_flux_forms(fp, pt);
        const KForm half_lphi_zeta = 0.5 * c.lie_phi2 * zeta_form(fp.epsilon);
        // compare the z-components (index 2); proportionality to zeta is
        // checked separately by the verification suites
        detail::absorb_sign(signs.s8, fx.star_D_Astar_zeta.comp[2], half_lphi_zeta.comp[2],
                            "translational flux");

        const JetFrame f = eval_frame(fp, pt);
        const double mag = eps * (f.lie_zeta(f.u) * f.lie_zeta(f.u) +
                                  f.lie_zeta(f.p) * f.lie_zeta(f.p));
        detail::absorb_sign(signs.s_wedge, wedge_independence(fp, pt).comp[index_in_grade(0b0011)],
                            mag, "strain wedge");
    }
    if (!(signs.s46 && signs.s8 && signs.s_wedge))
        throw InvariantError("bridge signs: sweep failed to resolve all signs");
    return signs;
}

/// Bridge signs under the default seed, determined once.
inline const BridgeSigns& bridge_signs() {
    static const BridgeSigns signs = determine_bridge_signs(kDefaultSeed ^ 0x4252494447ULL);
    return signs;
}

}  // namespace phlo
