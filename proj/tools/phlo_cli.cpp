// phlo command-line driver.
//
//   verify     run the identity suites against a config, write a report
//   sample     dump a solution field on a grid as CSV
//   energy     energy / action / period block for a config
//   star-table print the derived Hodge table
//
// Exit codes: 0 all checks pass, 1 check failure, 2 usage/config error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "phlo/phlo.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int cmd_verify(const std::string& config_path, const std::string& report_path,
               std::optional<uint64_t> seed_override) {
    const std::string text = phlo::read_file(config_path);
    phlo::RunConfig rc = phlo::parse_run_config(text);
    if (seed_override) rc.seed = *seed_override;
    const phlo::Report rep = phlo::run_verification(rc, phlo::fnv1a_hash(text));
    const std::string rendered = phlo::render_report(rep);
    if (report_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw phlo::ConfigError("cannot write report: " + report_path);
        out << rendered;
        std::cout << "report written to " << report_path << " ("
                  << rep.passed() << "/" << rep.total() << " passed)\n";
    }
    return rep.all_pass() ? kExitPass : kExitCheckFailure;
}

int cmd_sample(const std::string& config_path, const std::string& grid_arg, double xi,
               const std::string& out_path) {
    const phlo::RunConfig rc = phlo::load_run_config(config_path);
    int nx = 0, ny = 0, nz = 0;
    if (std::sscanf(grid_arg.c_str(), "%d,%d,%d", &nx, &ny, &nz) != 3 || nx < 1 || ny < 1 ||
        nz < 1)
        throw phlo::ConfigError("sample: --grid expects nx,ny,nz positive integers");

    const phlo::SolutionField sol = phlo::build_solution(rc.phlo);
    const phlo::FieldPair fp = sol.field_pair();
    const double r = sol.r_support();
    const auto [s_lo, s_hi] = sol.s_support();
    const double za = rc.phlo.epsilon * (s_lo - xi);
    const double zb = rc.phlo.epsilon * (s_hi - xi);
    const double z_lo = std::min(za, zb), z_hi = std::max(za, zb);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw phlo::ConfigError("sample: cannot write " + out_path);
    out << "x,y,z,xi,u,p,phi2,psi,R,energy_density\n";
    auto coord = [](double lo, double hi, int i, int n) {
        return (n == 1) ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1);
    };
    // deterministic row order: z major, then y, then x
    for (int kz = 0; kz < nz; ++kz) {
        const double z = coord(z_lo, z_hi, kz, nz);
        for (int ky = 0; ky < ny; ++ky) {
            const double y = coord(-r, r, ky, ny);
            for (int kx = 0; kx < nx; ++kx) {
                const double x = coord(-r, r, kx, nx);
                const phlo::Point pt{x, y, z, xi};
                const phlo::NullFrame fr =
                    phlo::build_null_frame(fp, pt, rc.phlo.tolerances.phase_floor);
                const phlo::CurvatureSample c =
                    phlo::curvature_R(fp, pt, rc.phlo.tolerances.phase_floor);
                out << fmt(x) << ',' << fmt(y) << ',' << fmt(z) << ',' << fmt(xi) << ','
                    << fmt(fr.A.comp[0]) << ',' << fmt(fr.A.comp[1]) << ',' << fmt(fr.phi2)
                    << ',' << fmt(fr.phase_defined ? fr.psi : 0.0) << ',' << fmt(c.R) << ','
                    << fmt(fr.phi2) << '\n';
            }
        }
    }
    if (!out) throw phlo::ConfigError("sample: write failure on " + out_path);
    return kExitPass;
}

int cmd_energy(const std::string& config_path) {
    const phlo::RunConfig rc = phlo::load_run_config(config_path);
    const phlo::SolutionField sol = phlo::build_solution(rc.phlo);
    const phlo::ActionResult ar = phlo::action_integral(sol, rc.xi0);
    const double target = static_cast<double>(rc.phlo.epsilon * rc.phlo.kappa);

    std::cout << "E: " << fmt(ar.E) << "\n";
    std::cout << "E_error: " << fmt(ar.E_error) << "\n";
    std::cout << "T: " << fmt(ar.period) << "\n";
    std::cout << "action: " << fmt(ar.action) << "\n";
    std::cout << "action_star: " << fmt(ar.action_star) << "\n";
    std::cout << "action_error: " << fmt(ar.action_error) << "\n";
    std::cout << "expected_ratio: " << fmt(target) << "\n";
    if (!ar.ratio_defined) {
        std::cout << "ratio: undefined (E = 0)\n";
        return kExitCheckFailure;
    }
    std::cout << "ratio: " << fmt(ar.ratio) << "\n";
    const bool ok = std::abs(ar.ratio - target) < 1e-3;
    std::cout << "ratio_check: " << (ok ? "pass" : "FAIL") << "\n";
    return ok ? kExitPass : kExitCheckFailure;
}

int cmd_star_table() {
    const phlo::StarTable& table = phlo::star_table();
    for (int g = 0; g <= 4; ++g) {
        for (int i = 0; i < phlo::kGradeCount[g]; ++i) {
            const phlo::StarEntry& e = table.at(g, i);
            std::printf("%d %s -> %+d %s   # *(%s) = %s%s\n", g,
                        phlo::multi_index_string(g, i).c_str(), static_cast<int>(e.sign),
                        phlo::multi_index_string(4 - g, e.target_index).c_str(),
                        phlo::basis_monomial_name(g, i).c_str(), e.sign < 0 ? "-" : "",
                        phlo::basis_monomial_name(4 - g, e.target_index).c_str());
        }
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical exterior-calculus toolkit for null electromagnetic fields"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run the identity verification suites");
    std::string v_config, v_report;
    std::optional<uint64_t> v_seed;
    verify->add_option("--config", v_config, "config file (JSON)")->required();
    verify->add_option("--report", v_report, "write the report here instead of stdout");
    verify->add_option("--seed", v_seed, "override the sweep seed");

    auto* sample = app.add_subcommand("sample", "dump a solution field on a grid as CSV");
    std::string s_config, s_grid, s_out;
    double s_xi = 0.0;
    sample->add_option("--config", s_config, "config file (JSON)")->required();
    sample->add_option("--grid", s_grid, "nx,ny,nz")->required();
    sample->add_option("--xi", s_xi, "time slice xi = c t")->required();
    sample->add_option("--out", s_out, "output CSV path")->required();

    auto* energy = app.add_subcommand("energy", "energy, period and action for a config");
    std::string e_config;
    energy->add_option("--config", e_config, "config file (JSON)")->required();

    app.add_subcommand("star-table", "print the derived Hodge star table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfigError;
    }

    try {
        if (verify->parsed()) return cmd_verify(v_config, v_report, v_seed);
        if (sample->parsed()) return cmd_sample(s_config, s_grid, s_xi, s_out);
        if (energy->parsed()) return cmd_energy(e_config);
        return cmd_star_table();
    } catch (const phlo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const phlo::CoverageError& e) {
        std::cerr << "coverage error: " << e.what() << "\n";
        return kExitCheckFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}
