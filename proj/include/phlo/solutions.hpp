// The closed-form helical solution family
//   u = phi(x, y, xi + eps z) cos(-eps kappa z / l0 + phase_const)
//   p = phi(x, y, xi + eps z) sin(-eps kappa z / l0 + phase_const)
// with compactly supported amplitudes, plus equation-of-motion residuals,
// energy and action integrals and the support geometry.

#pragma once

#include <numbers>
#include <vector>

#include "phlo/frobenius.hpp"
#include "phlo/stress_energy.hpp"

namespace phlo {

enum class AmplitudeKind { product_mollifier, truncated_gaussian };

/// Amplitude profile phi(x, y, s): a transverse factor in r^2 = x^2 + y^2 and
/// a longitudinal factor in s = xi + eps z.
struct AmplitudeSpec {
    AmplitudeKind kind = AmplitudeKind::product_mollifier;
    double phi0 = 1.0;      // peak amplitude
    double r0 = 1.0;        // transverse radius (support radius / 1 sigma)
    double s0 = std::numbers::pi;  // longitudinal half-width (support / 1 sigma)
    double s_center = 0.0;

    void validate() const {
        if (!(r0 > 0) || !(s0 > 0)) throw ConfigError("amplitude: r0 and s0 must be positive");
        if (!(phi0 >= 0)) throw ConfigError("amplitude: phi0 must be nonnegative");
    }
};

struct QuadratureGrid {
    int n_space = 65;  // points per spatial axis
    int n_xi = 33;     // points along xi for the action window

    void validate() const {
        for (int n : {n_space, n_xi}) {
            if (n < 5 || n % 2 == 0 || (n - 1) % 4 != 0)
                throw ConfigError("quadrature grid counts must be odd, >= 5, with (n-1) % 4 == 0");
        }
    }
};

struct PhLOConfig {
    int epsilon = +1;
    int kappa = +1;
    double l0 = 1.0;
    double phase_const = 0.0;
    double c_light = 1.0;
    AmplitudeSpec amplitude{};
    QuadratureGrid grid{};
    TolerancePolicy tolerances{};

    void validate() const {
        if (epsilon != 1 && epsilon != -1) throw ConfigError("epsilon must be +1 or -1");
        if (kappa != 1 && kappa != -1) throw ConfigError("kappa must be +1 or -1");
        if (!(l0 > 0)) throw ConfigError("l0 must be positive");
        if (!(c_light > 0)) throw ConfigError("c_light must be positive");
        if (!std::isfinite(phase_const)) throw ConfigError("phase_const must be finite");
        amplitude.validate();
        grid.validate();
        tolerances.validate();
    }
};

// Gaussian amplitudes have no hard support edge; quadrature integrates out to
// kGaussQuadWidth sigmas (relative tail mass ~1e-13) and the membership test
// uses kGaussGeomWidth sigmas, beyond which phi^2 underflows to exact zero.
inline constexpr double kGaussQuadWidth = 5.5;
inline constexpr double kGaussGeomWidth = 28.0;

/// Closed-form solution field with exact jets; cheap enough to evaluate
/// millions of times inside the quadratures.
class SolutionField {
public:
    explicit SolutionField(PhLOConfig cfg) : cfg_(cfg) { cfg_.validate(); }

    const PhLOConfig& config() const { return cfg_; }
    double period() const { return 2.0 * std::numbers::pi * cfg_.l0 / cfg_.c_light; }

    /// Amplitude jet phi at a point.
    ScalarJet phi_jet(const Point& pt) const {
        const AmplitudeSpec& am = cfg_.amplitude;
        const ScalarJet x = ScalarJet::coordinate(0, pt[0]);
        const ScalarJet y = ScalarJet::coordinate(1, pt[1]);
        ScalarJet s = ScalarJet::coordinate(3, pt[3]);  // s = xi + eps z
        s.grad[2] = static_cast<double>(cfg_.epsilon);
        s.value += cfg_.epsilon * pt[2];
        const ScalarJet ds = (1.0 / am.s0) * (s - am.s_center);
        if (am.kind == AmplitudeKind::product_mollifier) {
            const ScalarJet qr = (1.0 / (am.r0 * am.r0)) * (x * x + y * y);
            return am.phi0 * (mollifier_bump(qr) * mollifier_bump(ds * ds));
        }
        const ScalarJet qr = (0.5 / (am.r0 * am.r0)) * (x * x + y * y);
        return am.phi0 * (exp(-qr) * exp(-0.5 * (ds * ds)));
    }

    /// (u, p) jets by the chain rule through amplitude and phase parts.
    std::pair<ScalarJet, ScalarJet> jets(const Point& pt) const {
        const ScalarJet phi = phi_jet(pt);
        ScalarJet theta = ScalarJet::constant(cfg_.phase_const);
        theta.value += -cfg_.epsilon * cfg_.kappa * pt[2] / cfg_.l0;
        theta.grad[2] = -static_cast<double>(cfg_.epsilon * cfg_.kappa) / cfg_.l0;
        return {phi * cos(theta), phi * sin(theta)};
    }

    double phi2(const Point& pt) const {
        const double v = phi_jet(pt).value;
        return v * v;
    }

    /// The field pair view (analytic jets).
    FieldPair field_pair() const {
        auto u_fn = [sol = *this](const Point& pt) { return sol.jets(pt).first; };
        auto p_fn = [sol = *this](const Point& pt) { return sol.jets(pt).second; };
        return {ScalarField(u_fn, JetProvenance::analytic),
                ScalarField(p_fn, JetProvenance::analytic), cfg_.epsilon};
    }

    /// Longitudinal support interval in s = xi + eps z.
    std::array<double, 2> s_support(double width_sigmas = kGaussQuadWidth) const {
        const AmplitudeSpec& am = cfg_.amplitude;
        const double w =
            (am.kind == AmplitudeKind::product_mollifier) ? am.s0 : width_sigmas * am.s0;
        return {am.s_center - w, am.s_center + w};
    }
    /// Transverse support radius.
    double r_support(double width_sigmas = kGaussQuadWidth) const {
        const AmplitudeSpec& am = cfg_.amplitude;
        return (am.kind == AmplitudeKind::product_mollifier) ? am.r0 : width_sigmas * am.r0;
    }

    /// Bounding box of the support at fixed xi; throws CoverageError when the
    /// box would be empty.
    GridSpec support_box(double xi, int n_space = 0) const {
        if (n_space == 0) n_space = cfg_.grid.n_space;
        const double r = r_support();
        const auto [s_lo, s_hi] = s_support();
        // z = eps (s - xi)
        const double za = cfg_.epsilon * (s_lo - xi);
        const double zb = cfg_.epsilon * (s_hi - xi);
        GridSpec g;
        g.ax[0] = {-r, r, n_space};
        g.ax[1] = {-r, r, n_space};
        g.ax[2] = {std::min(za, zb), std::max(za, zb), n_space};
        g.validate();
        return g;
    }

private:
    PhLOConfig cfg_;
};

inline SolutionField build_solution(const PhLOConfig& cfg) { return SolutionField(cfg); }

/// Membership test for the configured support tube.
inline bool support_contains(const PhLOConfig& cfg, const Point& pt) {
    cfg.validate();
    const AmplitudeSpec& am = cfg.amplitude;
    const double r2 = pt[0] * pt[0] + pt[1] * pt[1];
    const double s = pt[3] + cfg.epsilon * pt[2];
    if (am.kind == AmplitudeKind::product_mollifier)
        return r2 <= am.r0 * am.r0 && std::abs(s - am.s_center) <= am.s0;
    return r2 <= (kGaussGeomWidth * am.r0) * (kGaussGeomWidth * am.r0) &&
           std::abs(s - am.s_center) <= kGaussGeomWidth * am.s0;
}

/// Random points inside the support with phi^2 above the given fraction of
/// the peak; used by the residual sweeps.
inline std::vector<Point> sample_support_points(const SolutionField& sol, SplitMix64& rng,
                                                int count, double phi2_fraction = 1e-8) {
    const PhLOConfig& cfg = sol.config();
    const double r = sol.r_support();
    const auto [s_lo, s_hi] = sol.s_support();
    const double floor = phi2_fraction * cfg.amplitude.phi0 * cfg.amplitude.phi0;
    std::vector<Point> pts;
    pts.reserve(count);
    int guard = 0;
    while (static_cast<int>(pts.size()) < count) {
        if (++guard > 1000 * count)
            throw NumericError("sample_support_points: support appears empty");
        const double xi = rng.uniform(-2 * cfg.l0, 2 * cfg.l0);
        const double s = rng.uniform(s_lo, s_hi);
        Point pt{rng.uniform(-r, r), rng.uniform(-r, r), cfg.epsilon * (s - xi), xi};
        if (sol.phi2(pt) > floor) pts.push_back(pt);
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Equation-of-motion and nonlinear-equation residuals
// ---------------------------------------------------------------------------

struct EomResiduals {
    double max_lie_phi2 = 0.0;     // sup |L_zb phi^2|
    double max_lie_psi_err = 0.0;  // sup |L_zb psi - kappa / l0| where defined
    int phase_points = 0;          // points that cleared the phase floor
};

inline EomResiduals eom_residuals(const SolutionField& sol, const std::vector<Point>& pts) {
    const PhLOConfig& cfg = sol.config();
    const double target = static_cast<double>(cfg.kappa) / cfg.l0;
    EomResiduals r;
    for (const Point& pt : pts) {
        const auto [u, p] = sol.jets(pt);
        const JetFrame f{cfg.epsilon, u, p};
        r.max_lie_phi2 = std::max(r.max_lie_phi2, std::abs(f.lie_phi2()));
        if (f.phi2() > cfg.tolerances.phase_floor) {
            r.max_lie_psi_err = std::max(r.max_lie_psi_err, std::abs(f.lie_psi() - target));
            ++r.phase_points;
        }
    }
    return r;
}

struct NonlinearCheck {
    double res_iF_dF = 0.0;       // sup |i(F-bar) dF|
    double res_isF_dsF = 0.0;     // sup |i(*F-bar) d*F|
    double res_cross_sum = 0.0;   // sup |i(*F-bar) dF + i(F-bar) d*F|
    double max_dF = 0.0;          // sup |dF|; nonzero inside the support
};

inline NonlinearCheck nonlinear_equation_check(const SolutionField& sol,
                                               const std::vector<Point>& pts) {
    NonlinearCheck r;
    for (const Point& pt : pts) {
        const auto [u, p] = sol.jets(pt);
        const JetFrame f{sol.config().epsilon, u, p};
        const KFormJet Fj = f.F();
        const KFormJet sFj = f.starF();
        const KForm dF = exterior_derivative(Fj);
        const KForm dsF = exterior_derivative(sFj);
        r.res_iF_dF = std::max(r.res_iF_dF, max_abs(interior_2_3(Fj.value(), dF)));
        r.res_isF_dsF = std::max(r.res_isF_dsF, max_abs(interior_2_3(sFj.value(), dsF)));
        r.res_cross_sum = std::max(
            r.res_cross_sum,
            max_abs(interior_2_3(sFj.value(), dF) + interior_2_3(Fj.value(), dsF)));
        r.max_dF = std::max(r.max_dF, max_abs(dF));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Energy and action integrals
// ---------------------------------------------------------------------------

struct EnergyResult {
    double E = 0.0;
    double richardson_error = 0.0;
};

/// E = integral of T_4^4 = phi^2 over the slice at fixed xi.
inline EnergyResult energy_integral(const SolutionField& sol, double xi) {
    const GridSpec grid = sol.support_box(xi);
    const QuadratureResult q =
        simpson_box([&sol](const Point& pt) { return sol.phi2(pt); }, grid, xi);
    return {q.value, q.richardson_error};
}

struct ActionResult {
    double action = 0.0;        // (2 pi l0 / c) * integral of the dA^A^zeta coefficient
    double action_star = 0.0;   // same with dA*^A*^zeta
    double action_error = 0.0;  // Richardson bar on the 4D quadrature
    double E = 0.0;
    double E_error = 0.0;
    double period = 0.0;  // T = 2 pi l0 / c
    double ratio = 0.0;   // action / (E T)
    bool ratio_defined = false;
};

/// Action over one period: the 4-volume integral of the integrability 4-form
/// coefficient over R^3 x [xi0, xi0 + l0], times the period. Both 4-forms are
/// integrated; they agree pointwise.
inline ActionResult action_integral(const SolutionField& sol, double xi0 = 0.0) {
    const PhLOConfig& cfg = sol.config();
    ActionResult out;
    out.period = sol.period();

    const int n_xi = cfg.grid.n_xi;
    const double h_xi = cfg.l0 / (n_xi - 1);

    auto coefficients = [&sol, &cfg](const Point& pt) {
        const auto [u, p] = sol.jets(pt);
        const JetFrame f{cfg.epsilon, u, p};
        const KFormJet Aj = f.A();
        const KFormJet Asj = f.Astar();
        const KForm zeta = zeta_form(cfg.epsilon);
        const double cA = wedge(wedge(exterior_derivative(Aj), Aj.value()), zeta).comp[0];
        const double cAs = wedge(wedge(exterior_derivative(Asj), Asj.value()), zeta).comp[0];
        return std::pair<double, double>{cA, cAs};
    };

    // 4D tensor-product Simpson: fine sums for both coefficients plus an
    // all-axes half-resolution sum of the first for the Richardson bar.
    CompensatedSum fine, fine_star, coarse4;
    for (int k = 0; k < n_xi; ++k) {
        const double xi = xi0 + k * h_xi;
        const double w = detail::simpson_weight(k, n_xi);
        const GridSpec grid = sol.support_box(xi);
        std::array<double, 3> h;
        for (int d = 0; d < 3; ++d)
            h[d] = (grid.ax[d].hi - grid.ax[d].lo) / (grid.ax[d].n - 1);
        const double scale3 = h[0] * h[1] * h[2] / 27.0;

        CompensatedSum slice, slice_star, slice_coarse;
        Point pt{0, 0, 0, xi};
        for (int kk = 0; kk < grid.ax[2].n; ++kk) {
            const double wk = detail::simpson_weight(kk, grid.ax[2].n);
            pt[2] = grid.ax[2].lo + kk * h[2];
            for (int jj = 0; jj < grid.ax[1].n; ++jj) {
                const double wj = detail::simpson_weight(jj, grid.ax[1].n);
                pt[1] = grid.ax[1].lo + jj * h[1];
                for (int ii = 0; ii < grid.ax[0].n; ++ii) {
                    pt[0] = grid.ax[0].lo + ii * h[0];
                    const double wi = detail::simpson_weight(ii, grid.ax[0].n);
                    const auto [cA, cAs] = coefficients(pt);
                    slice.add(wk * wj * wi * cA);
                    slice_star.add(wk * wj * wi * cAs);
                    if (ii % 2 == 0 && jj % 2 == 0 && kk % 2 == 0) {
                        const double cw =
                            detail::simpson_weight(ii / 2, (grid.ax[0].n + 1) / 2) *
                            detail::simpson_weight(jj / 2, (grid.ax[1].n + 1) / 2) *
                            detail::simpson_weight(kk / 2, (grid.ax[2].n + 1) / 2);
                        slice_coarse.add(cw * cA);
                    }
                }
            }
        }
        fine.add(w * slice.result() * scale3);
        fine_star.add(w * slice_star.result() * scale3);
        if (k % 2 == 0)
            coarse4.add(detail::simpson_weight(k / 2, (n_xi + 1) / 2) * slice_coarse.result() *
                        8.0 * scale3);
    }
    const double vol4 = fine.result() * h_xi / 3.0;
    const double vol4_star = fine_star.result() * h_xi / 3.0;
    const double vol4_coarse = coarse4.result() * 2.0 * h_xi / 3.0;

    out.action = out.period * vol4;
    out.action_star = out.period * vol4_star;
    out.action_error = out.period * std::abs(vol4 - vol4_coarse) / 15.0;

    const EnergyResult e = energy_integral(sol, xi0);
    out.E = e.E;
    out.E_error = e.richardson_error;
    if (out.E > 0) {
        out.ratio = out.action / (out.E * out.period);
        out.ratio_defined = true;
    }
    return out;
}

}  // namespace phlo
