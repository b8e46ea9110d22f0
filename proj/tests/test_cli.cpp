// End-to-end checks of the CLI surface: exit-code contract, sample dump
// shape and determinism, report reproducibility, star-table dump.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "phlo/config.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = PHLO_CLI_PATH;

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "phlo_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

int run_capture(const std::string& args, const fs::path& out) {
    const std::string cmd = cli + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = work_dir() / name;
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

// quick verify config: cheap suites, small grids
const char* kQuickVerify = R"({
  "grid": {"n_space": 9, "n_xi": 5},
  "suites": ["duality", "exterior"]
})";

}  // namespace

TEST_CASE("star-table dump") {
    const fs::path out = work_dir() / "star.txt";
    CHECK(run_capture("star-table", out) == 0);
    const auto lines = lines_of(slurp(out));
    CHECK(lines.size() == 16);
    bool has_dxdy = false, has_unit = false;
    for (const auto& l : lines) {
        if (l.find("2 (1,2) -> -1 (3,4)") == 0) has_dxdy = true;
        if (l.find("0 () -> -1 (1,2,3,4)") == 0) has_unit = true;
    }
    CHECK(has_dxdy);
    CHECK(has_unit);
}

TEST_CASE("verify exit codes and config validation") {
    const fs::path ok = write_config("quick.json", kQuickVerify);
    CHECK(run("verify --config " + ok.string()) == 0);

    const fs::path bad_l0 = write_config("bad_l0.json", R"({"l0": -1})");
    CHECK(run("verify --config " + bad_l0.string()) == 2);

    const fs::path unknown = write_config("unknown.json", R"({"epsilonn": 1})");
    CHECK(run("verify --config " + unknown.string()) == 2);

    const fs::path bad_json = write_config("bad.json", "{not json");
    CHECK(run("verify --config " + bad_json.string()) == 2);

    CHECK(run("verify --config " + (work_dir() / "missing.json").string()) == 2);
    CHECK(run("bogus-subcommand") == 2);
}

TEST_CASE("verify reports are byte-identical for a fixed seed") {
    const fs::path cfg = write_config("quick2.json", kQuickVerify);
    const fs::path r1 = work_dir() / "rep1.txt";
    const fs::path r2 = work_dir() / "rep2.txt";
    CHECK(run("verify --config " + cfg.string() + " --report " + r1.string()) == 0);
    CHECK(run("verify --config " + cfg.string() + " --report " + r2.string()) == 0);
    const std::string a = slurp(r1);
    CHECK(!a.empty());
    CHECK(a == slurp(r2));

    // a different seed changes the sweeps but still passes
    const fs::path r3 = work_dir() / "rep3.txt";
    CHECK(run("verify --config " + cfg.string() + " --seed 7 --report " + r3.string()) == 0);
    CHECK(slurp(r3) != a);
}

TEST_CASE("report records the config file hash") {
    const fs::path cfg = write_config("hashcheck.json", kQuickVerify);
    const fs::path rep = work_dir() / "rep_hash.txt";
    CHECK(run("verify --config " + cfg.string() + " --report " + rep.string()) == 0);
    const uint64_t expect = phlo::fnv1a_hash(slurp(cfg));
    char line[64];
    std::snprintf(line, sizeof line, "config_hash: 0x%016llx",
                  static_cast<unsigned long long>(expect));
    CHECK(slurp(rep).find(line) != std::string::npos);
}

TEST_CASE("suite selection limits the report sections") {
    const fs::path cfg = write_config("strain_only.json", R"({"suites": ["strain"]})");
    const fs::path rep = work_dir() / "rep_strain.txt";
    CHECK(run("verify --config " + cfg.string() + " --report " + rep.string()) == 0);
    const std::string text = slurp(rep);
    CHECK(text.find("[strain]") != std::string::npos);
    for (const char* other : {"[exterior]", "[frame]", "[eq1]", "[eq2]", "[duality]",
                              "[frobenius]", "[solutions]"})
        CHECK(text.find(other) == std::string::npos);
}

TEST_CASE("sample grid dump") {
    const fs::path cfg = write_config("sample.json", R"({})");
    const fs::path out = work_dir() / "sample.csv";
    CHECK(run("sample --config " + cfg.string() + " --grid 3,4,5 --xi 0.25 --out " +
              out.string()) == 0);
    const auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() == 1 + 3 * 4 * 5);
    CHECK(lines[0] == "x,y,z,xi,u,p,phi2,psi,R,energy_density");

    // deterministic z-major order: z constant over each 3*4 block, x fastest
    auto field = [&lines](size_t row, int col) {
        std::istringstream ss(lines[1 + row]);
        std::string item;
        for (int i = 0; i <= col; ++i) std::getline(ss, item, ',');
        return std::stod(item);
    };
    CHECK(field(0, 0) == field(1, 0) * 0 + field(0, 0));  // parses
    for (size_t r = 0; r + 1 < 3 * 4 * 5; ++r) CHECK(field(r, 2) <= field(r + 1, 2));
    CHECK(field(0, 2) == field(11, 2));   // first z-block spans 12 rows
    CHECK(field(0, 1) == field(2, 1));    // y constant across an x-run
    CHECK(field(0, 0) < field(1, 0));     // x strictly increases within a run

    // determinism
    const fs::path out2 = work_dir() / "sample2.csv";
    CHECK(run("sample --config " + cfg.string() + " --grid 3,4,5 --xi 0.25 --out " +
              out2.string()) == 0);
    CHECK(slurp(out) == slurp(out2));

    // amplitude peaks on the tube axis (odd grid so the axis is sampled)
    const fs::path out5 = work_dir() / "sample5.csv";
    CHECK(run("sample --config " + cfg.string() + " --grid 5,5,5 --xi 0.25 --out " +
              out5.string()) == 0);
    const auto lines5 = lines_of(slurp(out5));
    REQUIRE(lines5.size() == 1 + 125);
    auto field5 = [&lines5](size_t row, int col) {
        std::istringstream ss(lines5[1 + row]);
        std::string item;
        for (int i = 0; i <= col; ++i) std::getline(ss, item, ',');
        return std::stod(item);
    };
    double best = -1, bx = 1, by = 1;
    for (size_t r = 0; r < 125; ++r) {
        if (field5(r, 6) > best) {
            best = field5(r, 6);
            bx = field5(r, 0);
            by = field5(r, 1);
        }
    }
    CHECK(best > 0);
    CHECK(bx == 0.0);
    CHECK(by == 0.0);
}

TEST_CASE("sample of the zero field and error paths") {
    const fs::path cfg = write_config("zero.json", R"({"amplitude": {"phi0": 0.0}})");
    const fs::path out = work_dir() / "zero.csv";
    CHECK(run("sample --config " + cfg.string() + " --grid 3,3,3 --xi 0 --out " +
              out.string()) == 0);
    const auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() == 28);
    for (size_t r = 1; r < lines.size(); ++r) {
        std::istringstream ss(lines[r]);
        std::string item;
        for (int i = 0; i <= 6; ++i) std::getline(ss, item, ',');
        CHECK(std::stod(item) == 0.0);
    }

    CHECK(run("sample --config " + cfg.string() + " --grid 3,3 --xi 0 --out " +
              out.string()) == 2);
    CHECK(run("sample --config " + cfg.string() +
              " --grid 3,3,3 --xi 0 --out /nonexistent-dir/x.csv") == 2);
}

TEST_CASE("energy block and exit codes") {
    const fs::path cfg =
        write_config("energy.json", R"({"grid": {"n_space": 17, "n_xi": 5}})");
    const fs::path out = work_dir() / "energy.txt";
    CHECK(run_capture("energy --config " + cfg.string(), out) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("E: ") != std::string::npos);
    CHECK(text.find("T: ") != std::string::npos);
    CHECK(text.find("ratio: ") != std::string::npos);
    CHECK(text.find("ratio_check: pass") != std::string::npos);

    const fs::path degenerate = write_config(
        "energy0.json", R"({"grid": {"n_space": 17, "n_xi": 5}, "amplitude": {"phi0": 0}})");
    const fs::path out0 = work_dir() / "energy0.txt";
    CHECK(run_capture("energy --config " + degenerate.string(), out0) == 1);
    CHECK(slurp(out0).find("ratio: undefined") != std::string::npos);
}
