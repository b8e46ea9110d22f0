// Test-only oracles, kept independent of the library code paths they check:
//   - full-tensor metric pairing (1/k! a_I b^I over all index tuples)
//   - Levi-Civita Hodge star (the closed-form sign rule the library refuses
//     to trust in production)
//   - minor-determinant wedge of 1-forms
// Only the component layout helpers of KForm are shared.

#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <vector>

#include "phlo/exterior.hpp"
#include "phlo/rng.hpp"

namespace oracle {

using phlo::KForm;

inline int perm_sign(const std::vector<int>& idx) {
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j)
            if (idx[i] == idx[j]) return 0;
    int sign = 1;
    std::vector<int> v = idx;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) {
                std::swap(v[i], v[j]);
                sign = -sign;
            }
    return sign;
}

/// Fully antisymmetric tensor entry of a k-form, lower indices.
inline double full_component(const KForm& f, const std::vector<int>& idx) {
    const int s = perm_sign(idx);
    if (s == 0) return 0.0;
    uint8_t mask = 0;
    for (int i : idx) mask |= static_cast<uint8_t>(1u << i);
    return s * f.comp[phlo::index_in_grade(mask)];
}

/// Same entry with every index raised by the diagonal metric.
inline double full_component_up(const KForm& f, const std::vector<int>& idx) {
    double v = full_component(f, idx);
    for (int i : idx) v *= phlo::MetricSignature::diag[i];
    return v;
}

inline void for_each_tuple(int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(k, 0);
    const int total = 1 << (2 * k);  // 4^k
    for (int t = 0; t < total; ++t) {
        int v = t;
        for (int i = 0; i < k; ++i) {
            idx[i] = v & 3;
            v >>= 2;
        }
        fn(idx);
    }
}

/// eta(a, b) = (1/k!) a_{I} b^{I}, full unconstrained index sums.
inline double pairing_full_contraction(const KForm& a, const KForm& b) {
    const int k = a.grade;
    if (k == 0) return a.comp[0] * b.comp[0];
    double sum = 0;
    for_each_tuple(k, [&](const std::vector<int>& idx) {
        sum += full_component(a, idx) * full_component_up(b, idx);
    });
    double fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    return sum / fact;
}

/// Hodge star through the Levi-Civita symbol:
/// (*b)_J = factor * (1/k!) * b^{I} eps_{I J}.
inline KForm hodge_levi_civita(const KForm& b) {
    const int k = b.grade;
    const double factor = phlo::MetricSignature::star_factor();
    KForm out = KForm::zero(4 - k);
    for (int j = 0; j < out.count(); ++j) {
        const uint8_t jmask = phlo::kBasisMask[4 - k][j];
        std::vector<int> jidx;
        for (int i = 0; i < 4; ++i)
            if (jmask & (1u << i)) jidx.push_back(i);
        double sum = 0;
        if (k == 0) {
            std::vector<int> eps_idx = jidx;
            sum = b.comp[0] * perm_sign(eps_idx);
        } else {
            for_each_tuple(k, [&](const std::vector<int>& idx) {
                std::vector<int> eps_idx = idx;
                eps_idx.insert(eps_idx.end(), jidx.begin(), jidx.end());
                sum += full_component_up(b, idx) * perm_sign(eps_idx);
            });
            double fact = 1;
            for (int i = 2; i <= k; ++i) fact *= i;
            sum /= fact;
        }
        out.comp[j] = factor * sum;
    }
    return out;
}

/// Wedge of k 1-forms through minor determinants of the coefficient matrix.
inline KForm wedge_determinant(const std::vector<KForm>& ones) {
    const int k = static_cast<int>(ones.size());
    KForm out = KForm::zero(k);
    for (int t = 0; t < out.count(); ++t) {
        const uint8_t mask = phlo::kBasisMask[k][t];
        std::vector<int> cols;
        for (int i = 0; i < 4; ++i)
            if (mask & (1u << i)) cols.push_back(i);
        // det of the k x k matrix M[r][c] = ones[r].comp[cols[c]] by expansion
        std::vector<int> perm(k);
        for (int i = 0; i < k; ++i) perm[i] = i;
        double det = 0;
        // iterate permutations (k <= 4)
        do {
            double prod = 1;
            for (int r = 0; r < k; ++r) prod *= ones[r].comp[cols[perm[r]]];
            det += perm_sign(perm) * prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.comp[t] = det;
    }
    return out;
}

inline KForm random_kform(phlo::SplitMix64& rng, int grade) {
    KForm f = KForm::zero(grade);
    for (int i = 0; i < f.count(); ++i) f.comp[i] = rng.uniform(-1, 1);
    return f;
}

}  // namespace oracle
