// Maxwell-Minkowski stress-energy-momentum tensor built from a 2-form and its
// Hodge dual, its isotropy/eigen structure, the divergence in three mutually
// checkable forms, the quadratic duality identity and duality rotations.

#pragma once

#include "phlo/field.hpp"

namespace phlo {

/// Mixed tensor T_mu^nu; row = lower index mu, column = upper index nu.
struct EnergyTensor {
    std::array<std::array<double, 4>, 4> mixed{};

    double operator()(int mu, int nu) const { return mixed[mu][nu]; }
    double& operator()(int mu, int nu) { return mixed[mu][nu]; }
};

namespace detail {

/// Full antisymmetric matrix of a 2-form, lower indices.
inline std::array<std::array<double, 4>, 4> full_lower(const KForm& F) {
    if (F.grade != 2) throw DegreeError("full_lower: expected a 2-form");
    std::array<std::array<double, 4>, 4> m{};
    for (int i = 0; i < kGradeCount[2]; ++i) {
        const uint8_t mask = kBasisMask[2][i];
        int mu = -1, nu = -1;
        for (int b = 0; b < 4; ++b)
            if (mask & (1u << b)) (mu < 0 ? mu : nu) = b;
        m[mu][nu] = F.comp[i];
        m[nu][mu] = -F.comp[i];
    }
    return m;
}

/// Both indices raised with the diagonal metric.
inline std::array<std::array<double, 4>, 4> full_upper(const KForm& F) {
    auto m = full_lower(F);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            m[a][b] *= MetricSignature::diag[a] * MetricSignature::diag[b];
    return m;
}

/// -1/2 G_{mu sigma} G^{nu sigma} for one 2-form; half of the tensor (1).
inline EnergyTensor half_energy(const KForm& G) {
    const auto lo = full_lower(G);
    const auto up = full_upper(G);
    EnergyTensor t;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            double s = 0;
            for (int sigma = 0; sigma < 4; ++sigma) s += lo[mu][sigma] * up[nu][sigma];
            t.mixed[mu][nu] = -0.5 * s;
        }
    return t;
}

}  // namespace detail

/// T_mu^nu = -1/2 [F_{mu s} F^{nu s} + (*F)_{mu s} (*F)^{nu s}]. The dual is
/// recomputed from F, never taken on trust.
inline EnergyTensor energy_tensor(const KForm& F) {
    const KForm starF = hodge(F);
    const EnergyTensor a = detail::half_energy(F);
    const EnergyTensor b = detail::half_energy(starF);
    EnergyTensor t;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) t.mixed[mu][nu] = a.mixed[mu][nu] + b.mixed[mu][nu];
    return t;
}

inline EnergyTensor energy_tensor(const NullFrame& fr) { return energy_tensor(fr.F); }

/// The F-only half -1/2 F_{mu s} F^{nu s}; for null frames it carries exactly
/// half of the total tensor.
inline EnergyTensor energy_tensor_half(const KForm& G) { return detail::half_energy(G); }

inline double trace(const EnergyTensor& t) {
    double s = 0;
    for (int mu = 0; mu < 4; ++mu) s += t.mixed[mu][mu];
    return s;
}

inline double max_abs(const EnergyTensor& t) {
    double m = 0;
    for (auto& row : t.mixed)
        for (double v : row) m = std::max(m, std::abs(v));
    return m;
}

/// T_{mu nu} T^{mu nu} for the diagonal metric.
inline double tensor_square(const EnergyTensor& t) {
    double s = 0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            s += MetricSignature::diag[mu] * MetricSignature::diag[nu] * t.mixed[mu][nu] *
                 t.mixed[mu][nu];
    return s;
}

struct IsotropyInvariants {
    double TT = 0.0;  // T_{mu nu} T^{mu nu}
    double I1 = 0.0;  // 1/2 F_{mu nu} F^{mu nu}
    double I2 = 0.0;  // 1/2 F_{mu nu} (*F)^{mu nu}
};

inline IsotropyInvariants isotropy_invariants(const KForm& F) {
    IsotropyInvariants r;
    r.TT = tensor_square(energy_tensor(F));
    r.I1 = metric_pairing(F, F);
    r.I2 = metric_pairing(F, hodge(F));
    return r;
}

/// (T X)^nu = X^mu T_mu^nu.
inline Vector4 apply(const EnergyTensor& t, const Vector4& X) {
    Vector4 r;
    for (int nu = 0; nu < 4; ++nu) {
        double s = 0;
        for (int mu = 0; mu < 4; ++mu) s += X.c[mu] * t.mixed[mu][nu];
        r.c[nu] = s;
    }
    return r;
}

/// Norms of T applied to the three null-frame eigen candidates
/// (zeta-bar, A-bar, A*-bar); all vanish in the null case.
inline std::array<double, 3> eigen_residuals(const EnergyTensor& t, const NullFrame& fr) {
    const Vector4 imgs[3] = {apply(t, zeta_bar(fr.epsilon)), apply(t, raise(fr.A)),
                             apply(t, raise(fr.Astar))};
    return {max_abs(imgs[0]), max_abs(imgs[1]), max_abs(imgs[2])};
}

// ---------------------------------------------------------------------------
// Divergence of T in three forms
// ---------------------------------------------------------------------------

struct DivergenceReport {
    std::array<double, 4> direct{};      // d_nu T_mu^nu by finite differences
    std::array<double, 4> via_dF{};      // 1/2 [F^{ab}(dF)_{ab mu} + (*F)^{ab}(d*F)_{ab mu}]
    std::array<double, 4> via_codiff{};  // F_{mu nu}(delta F)^nu + (*F)_{mu nu}(delta *F)^nu
    KForm iF_dF, isF_dsF, isF_dF, iF_dsF;  // ordered-sum exchange 1-forms
};

namespace detail {

/// Full antisymmetric 3-tensor of a 3-form, lower indices.
inline double full_3form(const KForm& G, int a, int b, int c) {
    if (a == b || a == c || b == c) return 0.0;
    int idx[3] = {a, b, c};
    double sign = 1.0;
    // sort the triple, tracking parity
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2 - i; ++j)
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            }
    const uint8_t mask =
        static_cast<uint8_t>((1u << idx[0]) | (1u << idx[1]) | (1u << idx[2]));
    return sign * G.comp[index_in_grade(mask)];
}

}  // namespace detail

/// The three expressions of the divergence of T, plus the four internal
/// exchange 1-forms, all evaluated from the same analytic jets (the direct
/// term alone uses finite differences with step h).
inline DivergenceReport divergence_report(const FieldPair& fp, const Point& pt, double h) {
    if (!(h > 0)) throw NumericError("divergence_report: step must be positive");
    DivergenceReport rep;

    // direct: finite-difference divergence of the mixed tensor
    auto T_at = [&fp](const Point& q) { return energy_tensor(build_null_frame(fp, q).F); };
    for (int mu = 0; mu < 4; ++mu) {
        double s = 0;
        for (int nu = 0; nu < 4; ++nu)
            s += central_diff_4([&](const Point& q) { return T_at(q).mixed[mu][nu]; }, pt, nu, h);
        rep.direct[mu] = s;
    }

    // shared jets for the two algebraic forms
    const JetFrame jf = eval_frame(fp, pt);
    const KFormJet Fj = jf.F();
    const KFormJet sFj = jf.starF();
    const KForm F = Fj.value();
    const KForm sF = sFj.value();
    const KForm dF = exterior_derivative(Fj);
    const KForm dsF = exterior_derivative(sFj);

    // via_dF: the literal full-index sums (each equals twice the ordered sum)
    const auto Fup = detail::full_upper(F);
    const auto sFup = detail::full_upper(sF);
    for (int mu = 0; mu < 4; ++mu) {
        double s = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                s += Fup[a][b] * detail::full_3form(dF, a, b, mu) +
                     sFup[a][b] * detail::full_3form(dsF, a, b, mu);
        rep.via_dF[mu] = 0.5 * s;
    }

    // via_codiff: co-derivative contraction with raised index
    const KForm deltaF = codifferential(Fj);
    const KForm deltasF = codifferential(sFj);
    const Vector4 dFv = raise(deltaF);
    const Vector4 dsFv = raise(deltasF);
    const auto Flo = detail::full_lower(F);
    const auto sFlo = detail::full_lower(sF);
    for (int mu = 0; mu < 4; ++mu) {
        double s = 0;
        for (int nu = 0; nu < 4; ++nu) s += Flo[mu][nu] * dFv.c[nu] + sFlo[mu][nu] * dsFv.c[nu];
        rep.via_codiff[mu] = s;
    }

    // exchange terms, ordered index sums
    rep.iF_dF = interior_2_3(F, dF);
    rep.isF_dsF = interior_2_3(sF, dsF);
    rep.isF_dF = interior_2_3(sF, dF);
    rep.iF_dsF = interior_2_3(F, dsF);
    return rep;
}

// ---------------------------------------------------------------------------
// Duality
// ---------------------------------------------------------------------------

/// Max residual of the pointwise identity
///   1/2 F_{mu nu} F^{mu nu} delta_a^b = F_{mu a} F^{mu b} - (*F)_{mu a} (*F)^{mu b}
/// over all (a, b); holds for every 2-form, null or not.
inline double duality_identity_check(const KForm& F) {
    const KForm sF = hodge(F);
    const double half_F2 = metric_pairing(F, F);  // equals 1/2 F_{mu nu} F^{mu nu}
    const auto Flo = detail::full_lower(F);
    const auto Fup = detail::full_upper(F);
    const auto slo = detail::full_lower(sF);
    const auto sup = detail::full_upper(sF);
    double worst = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double rhs = 0;
            for (int mu = 0; mu < 4; ++mu)
                rhs += Flo[mu][a] * Fup[mu][b] - slo[mu][a] * sup[mu][b];
            const double lhs = (a == b) ? half_F2 : 0.0;
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    return worst;
}

struct DualityRotation {
    KForm F_rot, starF_rot;
    double T_residual = 0.0;     // max entry change of the energy tensor
    double star_residual = 0.0;  // |hodge(F_rot) - (-F sin f + *F cos f)|
};

/// F' = F cos f + *F sin f with constant angle f; the energy tensor is
/// invariant and hodge(F') matches the rotated dual.
inline DualityRotation duality_rotation(const KForm& F, double f) {
    const KForm sF = hodge(F);
    DualityRotation r;
    r.F_rot = std::cos(f) * F + std::sin(f) * sF;
    r.starF_rot = hodge(r.F_rot);
    const KForm expected_dual = -std::sin(f) * F + std::cos(f) * sF;
    r.star_residual = max_abs_diff(r.starF_rot, expected_dual);
    const EnergyTensor before = energy_tensor(F);
    const EnergyTensor after = energy_tensor(r.F_rot);
    double worst = 0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            worst = std::max(worst, std::abs(before.mixed[mu][nu] - after.mixed[mu][nu]));
    r.T_residual = worst;
    return r;
}

}  // namespace phlo
