// First-order jets: a scalar value together with its exact 4-gradient.
// Arithmetic on jets propagates derivatives by the usual calculus rules, so
// composite field expressions keep closed-form gradients.

#pragma once

#include "phlo/base.hpp"

namespace phlo {

struct ScalarJet {
    double value = 0.0;
    std::array<double, 4> grad{};

    static ScalarJet constant(double v) { return {v, {0, 0, 0, 0}}; }
    static ScalarJet coordinate(int axis, double v) {
        ScalarJet j;
        j.value = v;
        j.grad[axis] = 1.0;
        return j;
    }

    bool finite() const {
        if (!std::isfinite(value)) return false;
        for (double g : grad)
            if (!std::isfinite(g)) return false;
        return true;
    }

    friend ScalarJet operator+(const ScalarJet& a, const ScalarJet& b) {
        ScalarJet r{a.value + b.value, {}};
        for (int i = 0; i < 4; ++i) r.grad[i] = a.grad[i] + b.grad[i];
        return r;
    }
    friend ScalarJet operator-(const ScalarJet& a, const ScalarJet& b) {
        ScalarJet r{a.value - b.value, {}};
        for (int i = 0; i < 4; ++i) r.grad[i] = a.grad[i] - b.grad[i];
        return r;
    }
    friend ScalarJet operator-(const ScalarJet& a) {
        ScalarJet r{-a.value, {}};
        for (int i = 0; i < 4; ++i) r.grad[i] = -a.grad[i];
        return r;
    }
    friend ScalarJet operator*(const ScalarJet& a, const ScalarJet& b) {
        ScalarJet r{a.value * b.value, {}};
        for (int i = 0; i < 4; ++i) r.grad[i] = a.grad[i] * b.value + a.value * b.grad[i];
        return r;
    }
    friend ScalarJet operator*(double s, const ScalarJet& a) {
        ScalarJet r{s * a.value, {}};
        for (int i = 0; i < 4; ++i) r.grad[i] = s * a.grad[i];
        return r;
    }
    friend ScalarJet operator*(const ScalarJet& a, double s) { return s * a; }
    friend ScalarJet operator+(const ScalarJet& a, double s) {
        ScalarJet r = a;
        r.value += s;
        return r;
    }
    friend ScalarJet operator+(double s, const ScalarJet& a) { return a + s; }
    friend ScalarJet operator-(const ScalarJet& a, double s) { return a + (-s); }
};

/// Chain rule for a univariate function applied to a jet.
inline ScalarJet apply_univariate(const ScalarJet& a, double value, double derivative) {
    ScalarJet r{value, {}};
    for (int i = 0; i < 4; ++i) r.grad[i] = derivative * a.grad[i];
    return r;
}

inline ScalarJet sin(const ScalarJet& a) {
    return apply_univariate(a, std::sin(a.value), std::cos(a.value));
}
inline ScalarJet cos(const ScalarJet& a) {
    return apply_univariate(a, std::cos(a.value), -std::sin(a.value));
}
inline ScalarJet exp(const ScalarJet& a) {
    const double e = std::exp(a.value);
    return apply_univariate(a, e, e);
}

/// Integer power with exact gradient; pow_int(a, 0) is the constant 1.
inline ScalarJet pow_int(const ScalarJet& a, int n) {
    if (n == 0) return ScalarJet::constant(1.0);
    double vpow = 1.0;
    for (int i = 0; i < n - 1; ++i) vpow *= a.value;  // a^{n-1}
    return apply_univariate(a, vpow * a.value, n * vpow);
}

/// Two-argument arctangent jet; the denominator y^2 + x^2 must be nonzero.
inline ScalarJet atan2(const ScalarJet& y, const ScalarJet& x) {
    const double den = y.value * y.value + x.value * x.value;
    if (den == 0.0) throw NumericError("atan2 jet: undefined at the origin");
    ScalarJet r{std::atan2(y.value, x.value), {}};
    for (int i = 0; i < 4; ++i)
        r.grad[i] = (x.value * y.grad[i] - y.value * x.grad[i]) / den;
    return r;
}

}  // namespace phlo
