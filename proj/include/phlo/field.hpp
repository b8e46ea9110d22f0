// Scalar fields carrying exact first derivatives, the finite-difference jet
// oracle, and assembly of the null-field frame (zeta, A, A*, F, *F, phi^2,
// psi) from a pair of functions (u, p) and a propagation sign epsilon.
//
// Also: jet-valued k-forms with exterior derivative d and the literal
// co-derivative *d*, which downstream modules use for dF, d*F and delta F.

#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "phlo/exterior.hpp"
#include "phlo/jet.hpp"
#include "phlo/numerics.hpp"
#include "phlo/rng.hpp"

namespace phlo {

// ---------------------------------------------------------------------------
// Finite-difference jet oracle
// ---------------------------------------------------------------------------

/// Value plus 4th-order central-difference gradient; the oracle against which
/// analytic jets are checked.
template <class F>
ScalarJet fd_jet(F&& f, const Point& pt, double h) {
    if (!(h > 0)) throw NumericError("fd_jet: step must be positive");
    ScalarJet j;
    j.value = f(pt);
    if (!std::isfinite(j.value)) throw NumericError("fd_jet: non-finite sample");
    for (int axis = 0; axis < 4; ++axis) j.grad[axis] = central_diff_4(f, pt, axis, h);
    return j;
}

// ---------------------------------------------------------------------------
// ScalarField
// ---------------------------------------------------------------------------

enum class JetProvenance { analytic, finite_difference };

/// A scalar field on R^4 evaluated through its jet. Analytic fields carry
/// closed-form gradients; finite-difference-backed fields exist only as an
/// oracle wrapper.
class ScalarField {
public:
    using JetFn = std::function<ScalarJet(const Point&)>;

    ScalarField() : ScalarField(constant(0.0)) {}
    ScalarField(JetFn fn, JetProvenance prov)
        : fn_(std::make_shared<JetFn>(std::move(fn))), provenance_(prov) {}

    ScalarJet jet(const Point& pt) const { return (*fn_)(pt); }
    double eval(const Point& pt) const { return (*fn_)(pt).value; }
    JetProvenance provenance() const { return provenance_; }

    static ScalarField constant(double v) {
        return {[v](const Point&) { return ScalarJet::constant(v); }, JetProvenance::analytic};
    }
    static ScalarField coordinate(int axis) {
        return {[axis](const Point& pt) { return ScalarJet::coordinate(axis, pt[axis]); },
                JetProvenance::analytic};
    }
    /// Wraps a plain evaluator; jets come from the finite-difference oracle.
    template <class F>
    static ScalarField from_eval(F f, double h = 1e-3) {
        return {[f = std::move(f), h](const Point& pt) { return fd_jet(f, pt, h); },
                JetProvenance::finite_difference};
    }

private:
    std::shared_ptr<JetFn> fn_;
    JetProvenance provenance_;
};

namespace detail {
inline JetProvenance join(JetProvenance a, JetProvenance b) {
    return (a == JetProvenance::analytic && b == JetProvenance::analytic)
               ? JetProvenance::analytic
               : JetProvenance::finite_difference;
}
}  // namespace detail

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return {[a, b](const Point& pt) { return a.jet(pt) + b.jet(pt); },
            detail::join(a.provenance(), b.provenance())};
}
inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return {[a, b](const Point& pt) { return a.jet(pt) - b.jet(pt); },
            detail::join(a.provenance(), b.provenance())};
}
inline ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return {[a, b](const Point& pt) { return a.jet(pt) * b.jet(pt); },
            detail::join(a.provenance(), b.provenance())};
}
inline ScalarField operator*(double s, const ScalarField& a) {
    return {[s, a](const Point& pt) { return s * a.jet(pt); }, a.provenance()};
}
inline ScalarField operator+(const ScalarField& a, double s) {
    return {[s, a](const Point& pt) { return a.jet(pt) + s; }, a.provenance()};
}
inline ScalarField sin(const ScalarField& a) {
    return {[a](const Point& pt) { return sin(a.jet(pt)); }, a.provenance()};
}
inline ScalarField cos(const ScalarField& a) {
    return {[a](const Point& pt) { return cos(a.jet(pt)); }, a.provenance()};
}
inline ScalarField exp(const ScalarField& a) {
    return {[a](const Point& pt) { return exp(a.jet(pt)); }, a.provenance()};
}

struct MonomialTerm {
    double coeff = 0.0;
    std::array<int, 4> pow{};
};

/// Multivariate polynomial atom with closed-form gradient.
inline ScalarField polynomial(std::vector<MonomialTerm> terms) {
    auto fn = [terms = std::move(terms)](const Point& pt) {
        ScalarJet total = ScalarJet::constant(0.0);
        for (const MonomialTerm& t : terms) {
            ScalarJet m = ScalarJet::constant(t.coeff);
            for (int axis = 0; axis < 4; ++axis)
                if (t.pow[axis] > 0)
                    m = m * pow_int(ScalarJet::coordinate(axis, pt[axis]), t.pow[axis]);
            total = total + m;
        }
        return total;
    };
    return {std::move(fn), JetProvenance::analytic};
}

/// Smooth compact bump b(q) = exp(-q / (1 - q)) for q in [0, 1), else 0.
/// Applied to the jet of q (a squared radius); exact zero value and gradient
/// beyond the cutoff, where the exponential already underflows.
inline ScalarJet mollifier_bump(const ScalarJet& q) {
    constexpr double kCutoff = 0.999;  // exp(-999) == 0 in double arithmetic
    if (q.value < 0.0) throw NumericError("mollifier_bump: negative squared argument");
    if (!(q.value < kCutoff)) return ScalarJet::constant(0.0);
    const double one_minus = 1.0 - q.value;
    const double b = std::exp(-q.value / one_minus);
    return apply_univariate(q, b, -b / (one_minus * one_minus));
}

inline ScalarField mollifier_bump(const ScalarField& q) {
    return {[q](const Point& pt) { return mollifier_bump(q.jet(pt)); }, q.provenance()};
}

/// Random degree-<=2 polynomial with coefficients in [-1, 1]; the workhorse of
/// the randomized identity sweeps.
inline ScalarField random_polynomial(SplitMix64& rng, int max_degree = 2) {
    std::vector<MonomialTerm> terms;
    terms.push_back({rng.uniform(-1, 1), {0, 0, 0, 0}});
    for (int a = 0; a < 4; ++a) {
        MonomialTerm t{rng.uniform(-1, 1), {0, 0, 0, 0}};
        t.pow[a] = 1;
        terms.push_back(t);
    }
    if (max_degree >= 2) {
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) {
                MonomialTerm t{rng.uniform(-1, 1), {0, 0, 0, 0}};
                t.pow[a] += 1;
                t.pow[b] += 1;
                terms.push_back(t);
            }
    }
    return polynomial(std::move(terms));
}

/// Random smooth field mixing a polynomial with a trigonometric atom.
inline ScalarField random_smooth_field(SplitMix64& rng) {
    ScalarField poly = random_polynomial(rng, 2);
    std::vector<MonomialTerm> lin;
    for (int a = 0; a < 4; ++a) {
        MonomialTerm t{rng.uniform(-1, 1), {0, 0, 0, 0}};
        t.pow[a] = 1;
        lin.push_back(t);
    }
    ScalarField phase = polynomial(std::move(lin)) + rng.uniform(-3, 3);
    return poly + rng.uniform(-1, 1) * sin(phase);
}

inline Point random_point(SplitMix64& rng, double box = 1.0) {
    return {rng.uniform(-box, box), rng.uniform(-box, box), rng.uniform(-box, box),
            rng.uniform(-box, box)};
}

// ---------------------------------------------------------------------------
// Field pair and null frame
// ---------------------------------------------------------------------------

/// The two generating functions of a null field plus the propagation sign.
struct FieldPair {
    ScalarField u;
    ScalarField p;
    int epsilon = +1;

    void validate() const {
        if (epsilon != 1 && epsilon != -1) throw ConfigError("FieldPair: epsilon must be +-1");
    }
};

/// zeta = eps dz + dxi (covariant) and its eta-raised null direction.
inline KForm zeta_form(int eps) {
    KForm z = KForm::zero(1);
    z.comp[2] = static_cast<double>(eps);
    z.comp[3] = 1.0;
    return z;
}
inline Vector4 zeta_bar(int eps) { return raise(zeta_form(eps)); }  // (0, 0, -eps, 1)

/// The frame bundle at a point. psi is meaningful only when phase_defined.
struct NullFrame {
    int epsilon = +1;
    KForm zeta, A, Astar, F, starF;
    double phi2 = 0.0;
    double psi = 0.0;
    bool phase_defined = false;
};

/// A = u dx + p dy, A* = eps p dx - eps u dy as 1-forms from raw values.
inline KForm a_form(double u, double p) {
    KForm a = KForm::zero(1);
    a.comp[0] = u;
    a.comp[1] = p;
    return a;
}
inline KForm astar_form(double u, double p, int eps) {
    KForm a = KForm::zero(1);
    a.comp[0] = eps * p;
    a.comp[1] = -eps * u;
    return a;
}

inline NullFrame build_null_frame(const FieldPair& fp, const Point& pt,
                                  double phase_floor = 1e-14) {
    fp.validate();
    const double u = fp.u.eval(pt);
    const double p = fp.p.eval(pt);
    NullFrame fr;
    fr.epsilon = fp.epsilon;
    fr.zeta = zeta_form(fp.epsilon);
    fr.A = a_form(u, p);
    fr.Astar = astar_form(u, p, fp.epsilon);
    fr.F = wedge(fr.A, fr.zeta);
    fr.starF = hodge(fr.F);
    fr.phi2 = u * u + p * p;
    fr.phase_defined = fr.phi2 > phase_floor;
    fr.psi = fr.phase_defined ? std::atan2(p, u) : 0.0;
    return fr;
}

/// Directional derivative X^mu d_mu f from the field's jet.
inline double directional(const Vector4& X, const ScalarField& f, const Point& pt) {
    const ScalarJet j = f.jet(pt);
    double s = 0;
    for (int i = 0; i < 4; ++i) s += X.c[i] * j.grad[i];
    return s;
}

// ---------------------------------------------------------------------------
// Jet-valued forms: d and the literal co-derivative
// ---------------------------------------------------------------------------

/// A k-form whose components carry exact first derivatives.
struct KFormJet {
    int grade = 0;
    std::array<ScalarJet, 6> comp{};

    int count() const { return kGradeCount[grade]; }

    KForm value() const {
        KForm f = KForm::zero(grade);
        for (int i = 0; i < count(); ++i) f.comp[i] = comp[i].value;
        return f;
    }

    static KFormJet from_constant(const KForm& f) {
        KFormJet j;
        j.grade = f.grade;
        for (int i = 0; i < f.count(); ++i) j.comp[i] = ScalarJet::constant(f.comp[i]);
        return j;
    }
};

inline KFormJet wedge_jet(const KFormJet& a, const KFormJet& b) {
    if (a.grade + b.grade > 4) throw DegreeError("wedge_jet: grade overflow");
    KFormJet r;
    r.grade = a.grade + b.grade;
    for (int i = 0; i < r.count(); ++i) r.comp[i] = ScalarJet::constant(0.0);
    for (int i = 0; i < a.count(); ++i) {
        const uint8_t ma = kBasisMask[a.grade][i];
        for (int j = 0; j < b.count(); ++j) {
            const uint8_t mb = kBasisMask[b.grade][j];
            if (ma & mb) continue;
            const int t = index_in_grade(ma | mb);
            r.comp[t] = r.comp[t] + merge_sign(ma, mb) * (a.comp[i] * b.comp[j]);
        }
    }
    return r;
}

/// Star with constant coefficients acts on component jets directly.
inline KFormJet star_jet(const KFormJet& a) {
    const StarTable& t = star_table();
    KFormJet r;
    r.grade = 4 - a.grade;
    for (int i = 0; i < r.count(); ++i) r.comp[i] = ScalarJet::constant(0.0);
    for (int i = 0; i < a.count(); ++i) {
        const StarEntry& e = t.at(a.grade, i);
        r.comp[e.target_index] = r.comp[e.target_index] + e.sign * a.comp[i];
    }
    return r;
}

/// Exterior derivative of a jet-valued form; the result is a plain form of
/// one grade higher (its own derivatives are not available at first order).
inline KForm exterior_derivative(const KFormJet& w) {
    if (w.grade >= 4) return KForm::zero(4);  // d of a top form vanishes trivially
    KForm r = KForm::zero(w.grade + 1);
    for (int i = 0; i < w.count(); ++i) {
        const uint8_t m = kBasisMask[w.grade][i];
        for (int axis = 0; axis < 4; ++axis) {
            const uint8_t bit = static_cast<uint8_t>(1u << axis);
            if (m & bit) continue;
            r.comp[index_in_grade(m | bit)] += merge_sign(bit, m) * w.comp[i].grad[axis];
        }
    }
    return r;
}

/// Literal co-derivative *d* of a jet-valued form, no sign adjustment.
inline KForm codifferential(const KFormJet& w) {
    KFormJet starred = star_jet(w);
    return hodge(exterior_derivative(starred));
}

// ---------------------------------------------------------------------------
// Frame with jets
// ---------------------------------------------------------------------------

/// Frame objects at a point with exact first derivatives of (u, p) attached;
/// everything dF/d*F-shaped is built from this.
struct JetFrame {
    int epsilon = +1;
    ScalarJet u, p;

    KFormJet A() const {
        KFormJet a;
        a.grade = 1;
        a.comp[0] = u;
        a.comp[1] = p;
        a.comp[2] = ScalarJet::constant(0.0);
        a.comp[3] = ScalarJet::constant(0.0);
        return a;
    }
    KFormJet Astar() const {
        KFormJet a;
        a.grade = 1;
        a.comp[0] = static_cast<double>(epsilon) * p;
        a.comp[1] = -static_cast<double>(epsilon) * u;
        a.comp[2] = ScalarJet::constant(0.0);
        a.comp[3] = ScalarJet::constant(0.0);
        return a;
    }
    KFormJet zeta() const { return KFormJet::from_constant(zeta_form(epsilon)); }
    KFormJet F() const { return wedge_jet(A(), zeta()); }
    KFormJet starF() const { return star_jet(F()); }

    double phi2() const { return u.value * u.value + p.value * p.value; }
    /// L_zeta-bar applied to a jet: f_xi - eps f_z.
    double lie_zeta(const ScalarJet& j) const { return j.grad[3] - epsilon * j.grad[2]; }
    double lie_phi2() const { return 2 * u.value * lie_zeta(u) + 2 * p.value * lie_zeta(p); }
    /// L_zeta-bar of the phase; callers guard phi2 > phase floor.
    double lie_psi() const {
        return (u.value * lie_zeta(p) - p.value * lie_zeta(u)) / phi2();
    }
    /// Frobenius curvature R = u (p_xi - eps p_z) - p (u_xi - eps u_z).
    double curvature() const { return u.value * lie_zeta(p) - p.value * lie_zeta(u); }
};

inline JetFrame eval_frame(const FieldPair& fp, const Point& pt) {
    fp.validate();
    return JetFrame{fp.epsilon, fp.u.jet(pt), fp.p.jet(pt)};
}

// ---------------------------------------------------------------------------
// Star convention bridge
// ---------------------------------------------------------------------------

/// The constant sign s with hodge(A ^ zeta) = s * (A* ^ zeta) for every field
/// pair; determined once by a randomized sweep and verified constant.
inline int sigma_star() {
    static const int value = [] {
        SplitMix64 rng(kDefaultSeed ^ 0x5357454550ULL);  // independent of user seeds
        int found = 0;
        for (int trial = 0; trial < 256; ++trial) {
            const double u = rng.uniform(-2, 2);
            const double p = rng.uniform(-2, 2);
            const int eps = rng.sign();
            if (u * u + p * p < 1e-2) continue;
            const KForm lhs = hodge(wedge(a_form(u, p), zeta_form(eps)));
            const KForm rhs = wedge(astar_form(u, p, eps), zeta_form(eps));
            int match = 0;
            for (int s : {+1, -1})
                if (max_abs_diff(lhs, static_cast<double>(s) * rhs) < 1e-12) match = s;
            if (match == 0) throw InvariantError("sigma_star: no sign matches a sample frame");
            if (found != 0 && found != match)
                throw InvariantError("sigma_star: sign not constant across frames");
            found = match;
        }
        return found;
    }();
    return value;
}

}  // namespace phlo
