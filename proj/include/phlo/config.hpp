// Run configuration: a strict JSON schema covering the solution-family
// parameters, quadrature grid, tolerance policy, suite selection and sweep
// seed. Unknown keys are rejected so typos cannot silently fall back to
// defaults.

#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "phlo/rng.hpp"
#include "phlo/solutions.hpp"

namespace phlo {

inline const std::vector<std::string>& all_suite_names() {
    static const std::vector<std::string> names{"duality", "eq1",       "eq2",      "exterior",
                                                "frame",   "frobenius", "solutions", "strain"};
    return names;
}

struct RunConfig {
    PhLOConfig phlo{};
    std::vector<std::string> suites = all_suite_names();
    uint64_t seed = kDefaultSeed;
    double xi0 = 0.0;
};

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("config: unknown key \"" + it.key() + "\" in " + where);
}

template <class T>
T get_or(const json& obj, const std::string& key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: key \"" + key + "\" has the wrong type");
    }
}

}  // namespace detail

inline RunConfig parse_run_config(const std::string& text) {
    using detail::get_or;
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: JSON parse failure: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    detail::reject_unknown_keys(root,
                                {"epsilon", "kappa", "l0", "phase_const", "c_light", "xi0",
                                 "seed", "amplitude", "grid", "tolerances", "suites"},
                                "top level");

    RunConfig rc;
    rc.phlo.epsilon = get_or<int>(root, "epsilon", 1);
    rc.phlo.kappa = get_or<int>(root, "kappa", 1);
    rc.phlo.l0 = get_or<double>(root, "l0", 1.0);
    rc.phlo.phase_const = get_or<double>(root, "phase_const", 0.0);
    rc.phlo.c_light = get_or<double>(root, "c_light", 1.0);
    rc.xi0 = get_or<double>(root, "xi0", 0.0);
    rc.seed = get_or<uint64_t>(root, "seed", kDefaultSeed);

    rc.phlo.amplitude.s0 = std::numbers::pi * rc.phlo.l0;  // default scales with l0
    if (root.contains("amplitude")) {
        const auto& am = root.at("amplitude");
        if (!am.is_object()) throw ConfigError("config: \"amplitude\" must be an object");
        detail::reject_unknown_keys(am, {"kind", "phi0", "r0", "s0", "s_center"}, "amplitude");
        const std::string kind = get_or<std::string>(am, "kind", "product-mollifier");
        if (kind == "product-mollifier")
            rc.phlo.amplitude.kind = AmplitudeKind::product_mollifier;
        else if (kind == "truncated-gaussian")
            rc.phlo.amplitude.kind = AmplitudeKind::truncated_gaussian;
        else
            throw ConfigError("config: amplitude.kind must be \"product-mollifier\" or "
                              "\"truncated-gaussian\"");
        rc.phlo.amplitude.phi0 = get_or<double>(am, "phi0", 1.0);
        rc.phlo.amplitude.r0 = get_or<double>(am, "r0", 1.0);
        rc.phlo.amplitude.s0 = get_or<double>(am, "s0", rc.phlo.amplitude.s0);
        rc.phlo.amplitude.s_center = get_or<double>(am, "s_center", 0.0);
    }

    if (root.contains("grid")) {
        const auto& g = root.at("grid");
        if (!g.is_object()) throw ConfigError("config: \"grid\" must be an object");
        detail::reject_unknown_keys(g, {"n_space", "n_xi"}, "grid");
        rc.phlo.grid.n_space = get_or<int>(g, "n_space", rc.phlo.grid.n_space);
        rc.phlo.grid.n_xi = get_or<int>(g, "n_xi", rc.phlo.grid.n_xi);
    }

    if (root.contains("tolerances")) {
        const auto& t = root.at("tolerances");
        if (!t.is_object()) throw ConfigError("config: \"tolerances\" must be an object");
        detail::reject_unknown_keys(t,
                                    {"algebraic_tol", "jet_oracle_tol", "fd_divergence_tol",
                                     "quadrature_rel_tol", "phase_floor"},
                                    "tolerances");
        TolerancePolicy& tp = rc.phlo.tolerances;
        tp.algebraic_tol = get_or<double>(t, "algebraic_tol", tp.algebraic_tol);
        tp.jet_oracle_tol = get_or<double>(t, "jet_oracle_tol", tp.jet_oracle_tol);
        tp.fd_divergence_tol = get_or<double>(t, "fd_divergence_tol", tp.fd_divergence_tol);
        tp.quadrature_rel_tol = get_or<double>(t, "quadrature_rel_tol", tp.quadrature_rel_tol);
        tp.phase_floor = get_or<double>(t, "phase_floor", tp.phase_floor);
    }

    if (root.contains("suites")) {
        const auto& s = root.at("suites");
        if (!s.is_array()) throw ConfigError("config: \"suites\" must be an array of names");
        rc.suites.clear();
        for (const auto& item : s) {
            if (!item.is_string()) throw ConfigError("config: suite names must be strings");
            const std::string name = item.get<std::string>();
            bool known = false;
            for (const auto& n : all_suite_names()) known = known || (n == name);
            if (!known) throw ConfigError("config: unknown suite \"" + name + "\"");
            rc.suites.push_back(name);
        }
    }

    rc.phlo.validate();
    return rc;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline RunConfig load_run_config(const std::string& path) {
    return parse_run_config(read_file(path));
}

/// FNV-1a over the raw file bytes; recorded in reports for round-tripping.
inline uint64_t fnv1a_hash(const std::string& bytes) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace phlo
