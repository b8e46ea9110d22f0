// Shared numerical kernels: 4th-order central differences, a classical RK4
// flow step, tensor-product composite Simpson quadrature with a Richardson
// error estimate, and compensated summation.

#pragma once

#include <functional>
#include <vector>

#include "phlo/base.hpp"

namespace phlo {

struct TolerancePolicy {
    double algebraic_tol = 1e-12;
    double jet_oracle_tol = 1e-6;
    double fd_divergence_tol = 1e-6;
    double quadrature_rel_tol = 1e-3;
    double phase_floor = 1e-14;  // on phi^2; below it the phase is undefined

    void validate() const {
        if (algebraic_tol <= 0 || jet_oracle_tol <= 0 || fd_divergence_tol <= 0 ||
            quadrature_rel_tol <= 0 || phase_floor <= 0)
            throw ConfigError("tolerances must be positive");
    }
};

// ---------------------------------------------------------------------------
// Compensated (Neumaier) summation. Partial sums are associative enough that
// any partitioning of the same terms reproduces the result to ~1e-14 relative.
// ---------------------------------------------------------------------------

struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double result() const { return sum + carry; }
};

// ---------------------------------------------------------------------------
// Finite differences
// ---------------------------------------------------------------------------

/// 4th-order central difference along one axis:
/// (-f(+2h) + 8 f(+h) - 8 f(-h) + f(-2h)) / (12 h), grouped as symmetric
/// differences so constants cancel exactly.
template <class F>
double central_diff_4(F&& f, const Point& pt, int axis, double h) {
    if (!(h > 0)) throw NumericError("central_diff_4: step must be positive");
    const double fp2 = f(offset(pt, axis, +2 * h));
    const double fp1 = f(offset(pt, axis, +h));
    const double fm1 = f(offset(pt, axis, -h));
    const double fm2 = f(offset(pt, axis, -2 * h));
    const double d = (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h);
    if (!std::isfinite(d)) throw NumericError("central_diff_4: non-finite sample");
    return d;
}

// ---------------------------------------------------------------------------
// Flow integration
// ---------------------------------------------------------------------------

/// One classical RK4 step along the vector field X; local error O(t^5).
/// Accuracy degrades for large t, so callers keep single steps small.
template <class X>
Point rk4_flow(X&& field, const Point& pt, double t) {
    auto shift = [](const Point& p, const Vector4& v, double s) {
        Point q = p;
        for (int i = 0; i < 4; ++i) q[i] += s * v.c[i];
        return q;
    };
    const Vector4 k1 = field(pt);
    const Vector4 k2 = field(shift(pt, k1, t / 2));
    const Vector4 k3 = field(shift(pt, k2, t / 2));
    const Vector4 k4 = field(shift(pt, k3, t));
    Point out = pt;
    for (int i = 0; i < 4; ++i) {
        out[i] += t / 6.0 * (k1.c[i] + 2 * k2.c[i] + 2 * k3.c[i] + k4.c[i]);
        if (!std::isfinite(out[i])) throw NumericError("rk4_flow: non-finite state");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Composite Simpson quadrature
// ---------------------------------------------------------------------------

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    int n = 5;  // point count; odd, and (n-1) % 4 == 0 so a half grid exists

    void validate() const {
        if (n < 5 || n % 2 == 0) throw ConfigError("Simpson grid needs odd counts >= 5");
        if ((n - 1) % 4 != 0)
            throw ConfigError("Simpson grid needs (n-1) divisible by 4 for error estimates");
        if (!(hi > lo)) throw ConfigError("grid axis has empty extent");
    }
};

struct GridSpec {
    std::array<Axis, 3> ax;

    void validate() const {
        for (const Axis& a : ax) a.validate();
    }
};

struct QuadratureResult {
    double value = 0.0;
    double richardson_error = 0.0;
};

namespace detail {

inline double simpson_weight(int i, int n) {  // unscaled pattern 1,4,2,...,4,1
    if (i == 0 || i == n - 1) return 1.0;
    return (i % 2 == 1) ? 4.0 : 2.0;
}

}  // namespace detail

/// Composite Simpson over one axis with embedded half-resolution estimate.
template <class F>
QuadratureResult simpson_line(F&& f, const Axis& axis) {
    axis.validate();
    const double h = (axis.hi - axis.lo) / (axis.n - 1);
    CompensatedSum fine, coarse;
    for (int i = 0; i < axis.n; ++i) {
        const double v = f(axis.lo + i * h);
        if (!std::isfinite(v)) throw NumericError("simpson_line: non-finite sample");
        fine.add(detail::simpson_weight(i, axis.n) * v);
        if (i % 2 == 0) coarse.add(detail::simpson_weight(i / 2, (axis.n + 1) / 2) * v);
    }
    const double fine_val = fine.result() * h / 3.0;
    const double coarse_val = coarse.result() * 2.0 * h / 3.0;
    return {fine_val, std::abs(fine_val - coarse_val) / 15.0};
}

/// Tensor-product composite Simpson over a 3D box at fixed xi; the integrand
/// receives full points (x, y, z, xi). The Richardson estimate compares
/// against the embedded half-resolution grid.
template <class F>
QuadratureResult simpson_box(F&& f, const GridSpec& grid, double xi = 0.0) {
    grid.validate();
    std::array<double, 3> h;
    for (int d = 0; d < 3; ++d) h[d] = (grid.ax[d].hi - grid.ax[d].lo) / (grid.ax[d].n - 1);

    CompensatedSum fine, coarse;
    Point pt{0, 0, 0, xi};
    for (int k = 0; k < grid.ax[2].n; ++k) {
        const double wk = detail::simpson_weight(k, grid.ax[2].n);
        pt[2] = grid.ax[2].lo + k * h[2];
        for (int j = 0; j < grid.ax[1].n; ++j) {
            const double wj = detail::simpson_weight(j, grid.ax[1].n);
            pt[1] = grid.ax[1].lo + j * h[1];
            for (int i = 0; i < grid.ax[0].n; ++i) {
                pt[0] = grid.ax[0].lo + i * h[0];
                const double v = f(pt);
                if (!std::isfinite(v)) throw NumericError("simpson_box: non-finite sample");
                fine.add(wk * wj * detail::simpson_weight(i, grid.ax[0].n) * v);
                if (i % 2 == 0 && j % 2 == 0 && k % 2 == 0) {
                    const double cw = detail::simpson_weight(i / 2, (grid.ax[0].n + 1) / 2) *
                                      detail::simpson_weight(j / 2, (grid.ax[1].n + 1) / 2) *
                                      detail::simpson_weight(k / 2, (grid.ax[2].n + 1) / 2);
                    coarse.add(cw * v);
                }
            }
        }
    }
    const double scale = h[0] * h[1] * h[2] / 27.0;
    const double fine_val = fine.result() * scale;
    const double coarse_val = coarse.result() * 8.0 * scale;
    return {fine_val, std::abs(fine_val - coarse_val) / 15.0};
}

}  // namespace phlo
