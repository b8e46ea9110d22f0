// Frobenius curvature of the Pfaff systems (A, zeta) and (A*, zeta), and the
// four integrability 4-forms. Everything here is built from wedge products
// and exterior derivatives only; the metric never enters, so the values are
// independent of any sign convention.

#pragma once

#include <optional>

#include "phlo/field.hpp"

namespace phlo {

struct CurvatureSample {
    double R = 0.0;
    double phi2 = 0.0;
    std::optional<double> lie_psi;  // defined iff phi2 clears the floor

    /// R = phi^2 * L_zeta-bar psi wherever the phase is defined.
    double factorization_residual() const {
        return lie_psi ? std::abs(R - phi2 * *lie_psi) : 0.0;
    }
};

inline CurvatureSample curvature_R(const FieldPair& fp, const Point& pt,
                                   double phase_floor = 1e-14) {
    const JetFrame f = eval_frame(fp, pt);
    CurvatureSample s;
    s.R = f.curvature();
    s.phi2 = f.phi2();
    if (s.phi2 > phase_floor) s.lie_psi = f.lie_psi();
    return s;
}

/// Coefficients of omega_o in the four integrability 4-forms.
struct Integrability4Forms {
    double dA_A_Astar = 0.0;       // must vanish identically
    double dAstar_Astar_A = 0.0;   // must vanish identically
    double dA_A_zeta = 0.0;        // = eps R
    double dAstar_Astar_zeta = 0.0;  // = eps R
};

inline Integrability4Forms integrability_4forms(const FieldPair& fp, const Point& pt) {
    const JetFrame f = eval_frame(fp, pt);
    const KFormJet Aj = f.A();
    const KFormJet Asj = f.Astar();
    const KForm A = Aj.value();
    const KForm As = Asj.value();
    const KForm zeta = zeta_form(fp.epsilon);
    const KForm dA = exterior_derivative(Aj);
    const KForm dAs = exterior_derivative(Asj);

    Integrability4Forms r;
    r.dA_A_Astar = wedge(wedge(dA, A), As).comp[0];
    r.dAstar_Astar_A = wedge(wedge(dAs, As), A).comp[0];
    r.dA_A_zeta = wedge(wedge(dA, A), zeta).comp[0];
    r.dAstar_Astar_zeta = wedge(wedge(dAs, As), zeta).comp[0];
    return r;
}

/// Cubic-in-field tolerance scale for 4-form zero assertions.
inline double quartic_form_scale(const FieldPair& fp, const Point& pt) {
    const JetFrame f = eval_frame(fp, pt);
    double m = 0;
    m = std::max(m, std::abs(f.u.value));
    m = std::max(m, std::abs(f.p.value));
    for (int i = 0; i < 4; ++i) {
        m = std::max(m, std::abs(f.u.grad[i]));
        m = std::max(m, std::abs(f.p.grad[i]));
    }
    return (1.0 + m) * (1.0 + m) * (1.0 + m);
}

}  // namespace phlo
