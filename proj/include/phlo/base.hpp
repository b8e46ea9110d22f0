// Shared ground types for the phlo toolkit: points and tangent vectors on
// Minkowski R^4 with signature (-,-,-,+), and the error taxonomy used by
// every module.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace phlo {

/// Coordinates are (x, y, z, xi) with xi = c*t; indices 0..3 map to x^1..x^4.
using Point = std::array<double, 4>;

inline constexpr std::array<const char*, 4> kAxisName{"x", "y", "z", "xi"};

inline Point offset(Point p, int axis, double delta) {
    p[axis] += delta;
    return p;
}

/// Contravariant tangent vector.
struct Vector4 {
    std::array<double, 4> c{};

    double& operator[](int i) { return c[i]; }
    double operator[](int i) const { return c[i]; }

    friend Vector4 operator+(const Vector4& a, const Vector4& b) {
        Vector4 r;
        for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend Vector4 operator-(const Vector4& a, const Vector4& b) {
        Vector4 r;
        for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    friend Vector4 operator*(double s, const Vector4& a) {
        Vector4 r;
        for (int i = 0; i < 4; ++i) r.c[i] = s * a.c[i];
        return r;
    }
};

inline double max_abs(const Vector4& v) {
    double m = 0;
    for (double x : v.c) m = std::max(m, std::abs(x));
    return m;
}

/// Fixed Lorentzian signature (-,-,-,+) on (x, y, z, xi). Immutable by
/// construction; nothing in the library accepts any other metric.
struct MetricSignature {
    static constexpr std::array<double, 4> diag{-1.0, -1.0, -1.0, +1.0};

    static constexpr int minus_count() {
        int n = 0;
        for (double d : diag)
            if (d < 0) ++n;
        return n;
    }
    static constexpr int plus_count() {
        int n = 0;
        for (double d : diag)
            if (d > 0) ++n;
        return n;
    }

    // The star convention carries a factor (-1)^{index of eta}. Whether the
    // index counts minus or plus signs does not matter here because both
    // counts have the same parity; that equality is asserted below instead
    // of picking one reading.
    static constexpr double star_factor_from_minus() {
        return (minus_count() % 2 == 0) ? +1.0 : -1.0;
    }
    static constexpr double star_factor_from_plus() {
        return (plus_count() % 2 == 0) ? +1.0 : -1.0;
    }
    static constexpr double star_factor() { return star_factor_from_minus(); }
};

static_assert(MetricSignature::diag[0] == -1.0 && MetricSignature::diag[1] == -1.0 &&
              MetricSignature::diag[2] == -1.0 && MetricSignature::diag[3] == +1.0);
static_assert(MetricSignature::star_factor_from_minus() ==
              MetricSignature::star_factor_from_plus());

/// Grade/arity misuse of the algebra (wedge overflow, mixed-grade pairing).
struct DegreeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Non-finite samples or other floating-point breakdown.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid configuration values or malformed config files.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A quadrature grid that fails to cover the field support.
struct CoverageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace phlo
