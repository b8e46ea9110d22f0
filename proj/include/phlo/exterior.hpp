// Coordinate-basis exterior algebra on Minkowski R^4: graded antisymmetric
// forms with dense components, wedge product, metric pairing, musical
// isomorphisms, Hodge star and the (2,3) interior product.
//
// The Hodge table is solved by brute force from its defining relation
//     alpha ^ (*beta) = star_factor * eta(alpha, beta) * omega_o
// over all basis elements; no closed-form sign rule is trusted.

#pragma once

#include <bit>
#include <cstdint>

#include "phlo/base.hpp"

namespace phlo {

// ---------------------------------------------------------------------------
// Basis bookkeeping
//
// A basis monomial of grade k is a strictly increasing multi-index over
// coordinates 1..4, stored as a 4-bit mask (bit i set = dx^{i+1} present).
// Within each grade, monomials are ordered lexicographically.
// ---------------------------------------------------------------------------

inline constexpr std::array<int, 5> kGradeCount{1, 4, 6, 4, 1};

inline constexpr std::array<std::array<uint8_t, 6>, 5> kBasisMask{{
    {0b0000, 0, 0, 0, 0, 0},
    {0b0001, 0b0010, 0b0100, 0b1000, 0, 0},
    {0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100},
    {0b0111, 0b1011, 0b1101, 0b1110, 0, 0},
    {0b1111, 0, 0, 0, 0, 0},
}};

constexpr int grade_of_mask(uint8_t mask) { return std::popcount(mask); }

constexpr int index_in_grade(uint8_t mask) {
    const int g = grade_of_mask(mask);
    for (int i = 0; i < kGradeCount[g]; ++i)
        if (kBasisMask[g][i] == mask) return i;
    return -1;  // unreachable for mask < 16
}

/// Parity sign of sorting the concatenation (A, B) of two disjoint ascending
/// index lists: (-1)^{#inversions}.
constexpr double merge_sign(uint8_t a, uint8_t b) {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
        if (a & (1u << i)) inversions += std::popcount(static_cast<uint8_t>(b & ((1u << i) - 1)));
    return (inversions % 2 == 0) ? +1.0 : -1.0;
}

/// Product of metric diagonal entries over a multi-index mask.
constexpr double eta_of_mask(uint8_t mask) {
    double s = 1.0;
    for (int i = 0; i < 4; ++i)
        if (mask & (1u << i)) s *= MetricSignature::diag[i];
    return s;
}

// ---------------------------------------------------------------------------
// KForm
// ---------------------------------------------------------------------------

/// Graded antisymmetric tensor, grades 0..4. Components follow the
/// lexicographic multi-index order of kBasisMask; only the first
/// kGradeCount[grade] entries are meaningful.
struct KForm {
    int grade = 0;
    std::array<double, 6> comp{};

    int count() const { return kGradeCount[grade]; }

    static KForm zero(int k) {
        KForm f;
        f.grade = k;
        return f;
    }
    static KForm scalar(double v) {
        KForm f;
        f.comp[0] = v;
        return f;
    }
    /// Unit basis monomial dx^{i1} ^ ... for the given mask.
    static KForm basis(uint8_t mask, double coeff = 1.0) {
        KForm f;
        f.grade = grade_of_mask(mask);
        f.comp[index_in_grade(mask)] = coeff;
        return f;
    }
    /// The unit volume form dx ^ dy ^ dz ^ dxi.
    static KForm volume(double coeff = 1.0) { return basis(0b1111, coeff); }

    double operator[](int i) const { return comp[i]; }
    double& operator[](int i) { return comp[i]; }

    friend KForm operator+(const KForm& a, const KForm& b) {
        if (a.grade != b.grade) throw DegreeError("KForm addition: grade mismatch");
        KForm r = a;
        for (int i = 0; i < a.count(); ++i) r.comp[i] += b.comp[i];
        return r;
    }
    friend KForm operator-(const KForm& a, const KForm& b) {
        if (a.grade != b.grade) throw DegreeError("KForm subtraction: grade mismatch");
        KForm r = a;
        for (int i = 0; i < a.count(); ++i) r.comp[i] -= b.comp[i];
        return r;
    }
    friend KForm operator*(double s, const KForm& a) {
        KForm r = a;
        for (int i = 0; i < a.count(); ++i) r.comp[i] *= s;
        return r;
    }
    friend KForm operator-(const KForm& a) { return -1.0 * a; }
};

inline double max_abs(const KForm& a) {
    double m = 0;
    for (int i = 0; i < a.count(); ++i) m = std::max(m, std::abs(a.comp[i]));
    return m;
}

inline double max_abs_diff(const KForm& a, const KForm& b) {
    if (a.grade != b.grade) throw DegreeError("max_abs_diff: grade mismatch");
    double m = 0;
    for (int i = 0; i < a.count(); ++i) m = std::max(m, std::abs(a.comp[i] - b.comp[i]));
    return m;
}

// ---------------------------------------------------------------------------
// Products and pairings
// ---------------------------------------------------------------------------

/// Exterior product. Throws DegreeError when the grades overflow dimension 4.
inline KForm wedge(const KForm& a, const KForm& b) {
    if (a.grade + b.grade > 4)
        throw DegreeError("wedge: grade " + std::to_string(a.grade) + " + " +
                          std::to_string(b.grade) + " exceeds dimension 4");
    KForm r = KForm::zero(a.grade + b.grade);
    for (int i = 0; i < a.count(); ++i) {
        if (a.comp[i] == 0.0) continue;
        const uint8_t ma = kBasisMask[a.grade][i];
        for (int j = 0; j < b.count(); ++j) {
            if (b.comp[j] == 0.0) continue;
            const uint8_t mb = kBasisMask[b.grade][j];
            if (ma & mb) continue;  // repeated coordinate factor
            const uint8_t mu = ma | mb;
            r.comp[index_in_grade(mu)] += merge_sign(ma, mb) * a.comp[i] * b.comp[j];
        }
    }
    return r;
}

/// Metric pairing eta(a, b) of equal-grade forms; for decomposables this is
/// the Gram determinant of the pairwise 1-form pairings. The diagonal metric
/// makes it componentwise here.
inline double metric_pairing(const KForm& a, const KForm& b) {
    if (a.grade != b.grade) throw DegreeError("metric_pairing: grade mismatch");
    double s = 0;
    for (int i = 0; i < a.count(); ++i)
        s += a.comp[i] * b.comp[i] * eta_of_mask(kBasisMask[a.grade][i]);
    return s;
}

/// eta-raising of a 1-form to a tangent vector.
inline Vector4 raise(const KForm& a) {
    if (a.grade != 1) throw DegreeError("raise: expected a 1-form");
    Vector4 v;
    for (int i = 0; i < 4; ++i) v.c[i] = a.comp[i] * MetricSignature::diag[i];
    return v;
}

/// eta-lowering of a tangent vector to a 1-form.
inline KForm lower(const Vector4& v) {
    KForm a = KForm::zero(1);
    for (int i = 0; i < 4; ++i) a.comp[i] = v.c[i] * MetricSignature::diag[i];
    return a;
}

// ---------------------------------------------------------------------------
// Hodge star
// ---------------------------------------------------------------------------

struct StarEntry {
    int target_index = -1;
    double sign = 0.0;
};

/// Per-basis-element star map: [grade][index] -> (index in grade 4-k, sign).
struct StarTable {
    std::array<std::array<StarEntry, 6>, 5> entry{};

    const StarEntry& at(int grade, int index) const { return entry[grade][index]; }
};

/// Solves the defining relation for every basis element: for each beta of
/// grade k, the unique monomial m and sign s of grade 4-k such that
/// alpha ^ (s m) = star_factor * eta(alpha, beta) * omega_o for ALL basis
/// alpha of grade k. Throws InvariantError if the solution is not unique.
inline StarTable derive_star_table() {
    StarTable table;
    const double factor = MetricSignature::star_factor();
    for (int k = 0; k <= 4; ++k) {
        const int n = kGradeCount[k];
        const int m = kGradeCount[4 - k];
        for (int b = 0; b < n; ++b) {
            const KForm beta = KForm::basis(kBasisMask[k][b]);
            int hits = 0;
            for (int t = 0; t < m; ++t) {
                for (double s : {+1.0, -1.0}) {
                    const KForm candidate = KForm::basis(kBasisMask[4 - k][t], s);
                    bool ok = true;
                    for (int a = 0; a < n && ok; ++a) {
                        const KForm alpha = KForm::basis(kBasisMask[k][a]);
                        const double lhs = wedge(alpha, candidate).comp[0];
                        const double rhs = factor * metric_pairing(alpha, beta);
                        ok = (lhs == rhs);
                    }
                    if (ok) {
                        ++hits;
                        table.entry[k][b] = StarEntry{t, s};
                    }
                }
            }
            if (hits != 1)
                throw InvariantError("derive_star_table: defining relation has " +
                                     std::to_string(hits) + " solutions for a basis element");
        }
    }
    return table;
}

/// The star table, derived once and immutable afterwards.
inline const StarTable& star_table() {
    static const StarTable table = derive_star_table();
    return table;
}

/// Hodge dual via the derived table.
inline KForm hodge(const KForm& a) {
    const StarTable& t = star_table();
    KForm r = KForm::zero(4 - a.grade);
    for (int i = 0; i < a.count(); ++i) {
        const StarEntry& e = t.at(a.grade, i);
        r.comp[e.target_index] += e.sign * a.comp[i];
    }
    return r;
}

// ---------------------------------------------------------------------------
// Interior product of a 2-form against a 3-form
// ---------------------------------------------------------------------------

/// i(K-sharp) G = K^{mu nu} G_{mu nu sigma} dx^sigma, summed over mu < nu,
/// with K raised on both indices and G extended antisymmetrically.
inline KForm interior_2_3(const KForm& K, const KForm& G) {
    if (K.grade != 2 || G.grade != 3)
        throw DegreeError("interior_2_3: expected grades (2, 3)");
    KForm r = KForm::zero(1);
    for (int i = 0; i < kGradeCount[2]; ++i) {
        const uint8_t mk = kBasisMask[2][i];
        const double K_up = K.comp[i] * eta_of_mask(mk);
        if (K_up == 0.0) continue;
        for (int sigma = 0; sigma < 4; ++sigma) {
            const uint8_t bit = static_cast<uint8_t>(1u << sigma);
            if (mk & bit) continue;
            // G_{mu nu sigma} = parity(move sigma into sorted place) * G[sorted]
            const int above = std::popcount(static_cast<uint8_t>(mk & ~((2u << sigma) - 1)));
            const double sign = (above % 2 == 0) ? +1.0 : -1.0;
            r.comp[sigma] += K_up * sign * G.comp[index_in_grade(mk | bit)];
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Formatting helpers (CLI star-table dump, diagnostics)
// ---------------------------------------------------------------------------

inline std::string multi_index_string(int grade, int index) {
    const uint8_t mask = kBasisMask[grade][index];
    std::string s = "(";
    bool first = true;
    for (int i = 0; i < 4; ++i) {
        if (mask & (1u << i)) {
            if (!first) s += ",";
            s += std::to_string(i + 1);
            first = false;
        }
    }
    s += ")";
    return s;
}

inline std::string basis_monomial_name(int grade, int index) {
    if (grade == 0) return "1";
    const uint8_t mask = kBasisMask[grade][index];
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (mask & (1u << i)) {
            if (!s.empty()) s += "^";
            s += "d";
            s += kAxisName[i];
        }
    }
    return s;
}

}  // namespace phlo
