#include <doctest.h>

#include "fkg/config.hpp"
#include "fkg/errors.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace fkg;
namespace fs = std::filesystem;

namespace {

const char* kGoodConfig = R"([structure]
weights = [1]

[grid]
extents = [4.0]
counts = [32]

[operator]
exponents = [1]
s = 0.4

[mass]
kind = "dirac_delta"
weight = 1.0

[data]
u0 = "gaussian"
u0_width = 1.0
u1 = "zero"

[time]
T = 0.25
dt = "auto"
snapshot_stride = 10

[net]
eps0 = 0.5
rho = 0.7
count = 5

[output]
dir = "out"
prefix = "run"
)";

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

#ifdef FKGLAB_BIN
fs::path scratch_dir(const std::string& name) {
    fs::path p = fs::path("cli_scratch") / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string("'") + FKGLAB_BIN + "' " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string strip_runtime_lines(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    bool first = true;
    int drop_col = -1; // CSV: a header naming a runtime column switches modes
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            std::istringstream hs(line);
            std::string cell;
            for (int idx = 0; std::getline(hs, cell, ','); ++idx)
                if (contains(cell, "runtime")) drop_col = idx;
        }
        if (drop_col >= 0) {
            std::istringstream ls(line);
            std::string cell;
            bool wrote = false;
            for (int idx = 0; std::getline(ls, cell, ','); ++idx) {
                if (idx == drop_col) continue;
                if (wrote) out << ',';
                out << cell;
                wrote = true;
            }
            out << '\n';
        } else if (!contains(line, "runtime")) {
            out << line << '\n';
        }
    }
    return out.str();
}
#endif

} // namespace

TEST_SUITE("config_cli") {

TEST_CASE("table parsing") {
    SUBCASE("values, arrays, comments, quotes") {
        auto t = ConfigTable::parse_text("[a]\n"
                                         "x = 3.5 # trailing comment\n"
                                         "name = \"hello # not a comment\"\n"
                                         "flag = true\n"
                                         "arr = [1, 2, 3]\n"
                                         "mixed = [\"a\", \"b\"]\n");
        CHECK(t.get_double("a", "x") == doctest::Approx(3.5));
        CHECK(t.get_string("a", "name") == "hello # not a comment");
        CHECK(t.get_bool("a", "flag", false));
        CHECK(t.get_ints("a", "arr") == std::vector<long long>{1, 2, 3});
        CHECK(t.get_strings("a", "mixed") == std::vector<std::string>{"a", "b"});
        CHECK(t.has("a", "x"));
        CHECK_FALSE(t.has("a", "missing"));
        CHECK(t.get_double("a", "missing", 7.0) == 7.0);
    }
    SUBCASE("errors carry file and line") {
        CHECK(contains(error_of([] { (void)ConfigTable::parse_text("x = 1\n", "f.toml"); }),
                       "f.toml:1"));
        CHECK(contains(error_of([] {
                           (void)ConfigTable::parse_text("[a]\nx = 1\nx = 2\n", "f.toml");
                       }),
                       "f.toml:3"));
        CHECK(contains(error_of([] {
                           (void)ConfigTable::parse_text("[a]\nbad line\n", "f.toml");
                       }),
                       "f.toml:2"));
        CHECK(contains(error_of([] {
                           (void)ConfigTable::parse_text("[a]\nx = \"unterminated\n",
                                                         "f.toml");
                       }),
                       "f.toml:2"));
        CHECK(contains(error_of([] {
                           (void)ConfigTable::parse_text("[a]\nx = [1, 2\n", "f.toml");
                       }),
                       "f.toml:2"));
        CHECK_THROWS_AS((void)ConfigTable::parse_text("[a]\nx = 1\nx = 2\n"), ConfigError);
    }
    SUBCASE("typed getter failures name the key") {
        auto t = ConfigTable::parse_text("[a]\nx = hello\narr = [1]\n");
        CHECK(contains(error_of([&] { (void)t.get_double("a", "x"); }), "[a].x"));
        CHECK(contains(error_of([&] { (void)t.get_double("a", "arr"); }), "expected a scalar"));
        CHECK(contains(error_of([&] { (void)t.get_double("b", "y"); }), "[b].y"));
    }
    SUBCASE("overrides replace and extend") {
        auto t = ConfigTable::parse_text("[a]\nx = 1\n");
        t.set("a.x=2");
        t.set("b.fresh=[3, 4]");
        CHECK(t.get_int("a", "x") == 2);
        CHECK(t.get_ints("b", "fresh") == std::vector<long long>{3, 4});
        CHECK_THROWS_AS(t.set("no_dot=1"), ConfigError);
        CHECK_THROWS_AS(t.set("a.x"), ConfigError);
    }
    SUBCASE("canonical dump is a fixed point") {
        auto t = ConfigTable::parse_text("[b]\nz = 1\n[a]\ny = [2, 3]\nx = \"s\"\n");
        std::string dump = t.canonical_dump();
        CHECK(ConfigTable::parse_text(dump).canonical_dump() == dump);
        CHECK(dump.find("[a]") < dump.find("[b]"));
    }
    SUBCASE("hash is stable and value-sensitive") {
        auto t1 = ConfigTable::parse_text("[a]\nx = 1\n");
        auto t2 = ConfigTable::parse_text("[a]   \nx =    1\n");
        auto t3 = ConfigTable::parse_text("[a]\nx = 2\n");
        CHECK(t1.hash_hex().size() == 16);
        CHECK(t1.hash_hex() == t2.hash_hex());
        CHECK(t1.hash_hex() != t3.hash_hex());
    }
}

TEST_CASE("experiment building") {
    SUBCASE("valid config round-trips into a runnable experiment") {
        ExperimentConfig cfg = build_config(ConfigTable::parse_text(kGoodConfig));
        CHECK(cfg.grid->size() == 32);
        CHECK(cfg.s == doctest::Approx(0.4));
        CHECK(cfg.symbol.degree() == doctest::Approx(2.0));
        CHECK(cfg.net.size() == 5);
        CHECK(cfg.mass.kind == MassSpec::Kind::DiracDelta);
        CHECK(cfg.solver.dt == 0.0);
        CHECK(cfg.out_dir == "out");
        CHECK(cfg.hash.size() == 16);
        CHECK(contains(cfg.echo, "[structure]"));
        LabSetup lab = cfg.lab();
        CHECK(lab.q() == doctest::Approx(1.0));
        CHECK(lab.nu_s() == doctest::Approx(0.8));
    }
    SUBCASE("anisotropic weights parse as rationals") {
        std::string text = kGoodConfig;
        text.replace(text.find("weights = [1]"), 13, "weights = [1, 1/2]");
        text.replace(text.find("extents = [4.0]"), 15, "extents = [4.0, 4.0]");
        text.replace(text.find("counts = [32]"), 13, "counts = [32, 32]");
        text.replace(text.find("exponents = [1]"), 15, "exponents = [1, 2]");
        ExperimentConfig cfg = build_config(ConfigTable::parse_text(text));
        CHECK(cfg.structure.q() == doctest::Approx(1.5));
        CHECK(cfg.symbol.degree() == doctest::Approx(2.0));
    }
    auto expect_reject = [](const std::string& from, const std::string& to,
                            const std::string& needle) {
        std::string text = kGoodConfig;
        auto pos = text.find(from);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, from.size(), to);
        std::string msg =
            error_of([&] { (void)build_config(ConfigTable::parse_text(text)); });
        CAPTURE(to);
        CAPTURE(msg);
        CHECK(contains(msg, needle));
    };
    SUBCASE("violations are rejected with the offending key") {
        expect_reject("s = 0.4", "s = -1", "[operator].s");
        expect_reject("s = 0.4", "s = 1.5", "[operator].s");
        expect_reject("counts = [32]", "counts = [31]", "even");
        expect_reject("kind = \"dirac_delta\"", "kind = \"mystery\"", "[mass].kind");
        expect_reject("u0 = \"gaussian\"", "u0 = \"cubic\"", "[data].u0");
        expect_reject("T = 0.25", "T = 0", "[time].T");
        expect_reject("eps0 = 0.5", "eps0 = 1.7", "eps0");
    }
    SUBCASE("exponent and weight mismatch is inconsistent homogeneity") {
        std::string text = kGoodConfig;
        text.replace(text.find("weights = [1]"), 13, "weights = [1, 1]");
        text.replace(text.find("extents = [4.0]"), 15, "extents = [4.0, 4.0]");
        text.replace(text.find("counts = [32]"), 13, "counts = [32, 32]");
        text.replace(text.find("exponents = [1]"), 15, "exponents = [1, 2]");
        CHECK(contains(error_of([&] { (void)build_config(ConfigTable::parse_text(text)); }),
                       "homogeneity"));
    }
    SUBCASE("plane wave mode must respect the grid") {
        std::string text = kGoodConfig;
        text.replace(text.find("u0 = \"gaussian\""), 15, "u0 = \"plane_wave\"");
        ExperimentConfig ok = build_config(ConfigTable::parse_text(text));
        (void)ok;
        auto t = ConfigTable::parse_text(text);
        t.set("data.u0_mode=[17]");
        CHECK(contains(error_of([&] { (void)build_config(t); }), "Nyquist"));
    }
    SUBCASE("random band is capped at a quarter of the counts") {
        std::string text = kGoodConfig;
        text.replace(text.find("u0 = \"gaussian\""), 15, "u0 = \"random\"");
        auto t = ConfigTable::parse_text(text);
        t.set("data.u0_band=[9]");
        CHECK(contains(error_of([&] { (void)build_config(t); }), "band"));
        t.set("data.u0_band=[8]");
        CHECK_NOTHROW((void)build_config(t));
    }
}

#ifdef FKGLAB_BIN
TEST_CASE("cli end to end") {
    SUBCASE("selftest exits cleanly") { CHECK(run_cli("selftest") == 0); }
    SUBCASE("solve writes its artifact set inside the output dir") {
        fs::path dir = scratch_dir("solve");
        std::string args = "--set 'output.dir=\"" + dir.string() +
                           "\"' --set 'grid.counts=[32]' --set 'grid.extents=[4.0]' --set "
                           "'time.T=0.25' solve";
        CHECK(run_cli(args) == 0);
        for (const char* f : {"run_config.toml", "run_energy.csv", "run_ratio_sup.csv",
                              "run_ratio_crit.csv", "run_final_field.csv", "run_report.json"})
            CHECK(fs::exists(dir / f));
        std::string energy = slurp(dir / "run_energy.csv");
        CHECK(energy.rfind("t,kinetic,elastic,potential,total\n", 0) == 0);
        std::string json = slurp(dir / "run_report.json");
        CHECK(contains(json, "\"config_hash\""));
    }
    SUBCASE("config errors exit 2") {
        CHECK(run_cli("--set 'operator.s=-1' selftest") == 2);
        CHECK(run_cli("-c /nonexistent.toml solve") == 2);
        CHECK(run_cli("") == 2);           // missing subcommand
        CHECK(run_cli("--bogus solve") == 2);
        CHECK(run_cli("--set 'grid.counts=[31]' solve") == 2);
    }
    SUBCASE("unresolvable single run exits 3 as a numerical failure") {
        fs::path dir = scratch_dir("unresolved");
        std::string args = "--set 'output.dir=\"" + dir.string() +
                           "\"' --set 'grid.counts=[8]' --set 'grid.extents=[4.0]' --set "
                           "'net.refine_limit=1' --set 'solve.eps=0.01' solve";
        CHECK(run_cli(args) == 3);
    }
    SUBCASE("mollifier subcommand emits the norm table") {
        fs::path dir = scratch_dir("moll");
        std::string args = "--set 'output.dir=\"" + dir.string() +
                           "\"' --set 'grid.counts=[64]' --set 'grid.extents=[4.0]' --set "
                           "'net.count=5' --set 'net.rho=0.7' mollifier";
        CHECK(run_cli(args) == 0);
        std::string csv = slurp(dir / "run_norms.csv");
        CHECK(csv.rfind("epsilon,p,norm,resolved_flag\n", 0) == 0);
        CHECK(contains(slurp(dir / "run_report.json"), "\"tables\""));
    }
    SUBCASE("identical configs reproduce reports byte for byte") {
        fs::path dir = scratch_dir("det");
        std::string args =
            "--set 'grid.counts=[32]' --set 'grid.extents=[4.0]' --set 'time.T=0.25' --set "
            "'net.count=5' --set 'net.rho=0.7' --set 'mass.kind=\"zero\"' --set "
            "'output.dir=\"" + dir.string() + "\"' sweep";
        CHECK(run_cli(args) == 0);
        std::string r1 = strip_runtime_lines(slurp(dir / "run_report.json"));
        std::string s1 = strip_runtime_lines(slurp(dir / "run_series.csv"));
        CHECK(run_cli(args) == 0);
        CHECK(strip_runtime_lines(slurp(dir / "run_report.json")) == r1);
        CHECK(strip_runtime_lines(slurp(dir / "run_series.csv")) == s1);
        CHECK(!r1.empty());
        CHECK(!s1.empty());
    }
    SUBCASE("uniqueness subcommand completes on a small net") {
        fs::path dir = scratch_dir("uniq");
        std::string args =
            "--set 'output.dir=\"" + dir.string() +
            "\"' --set 'grid.counts=[32]' --set 'grid.extents=[4.0]' --set 'time.T=0.25' "
            "--set 'net.count=5' --set 'net.rho=0.7' --set "
            "'uniqueness.crossval_tol=1e-4' uniqueness";
        CHECK(run_cli(args) == 0);
        std::string json = slurp(dir / "run_report.json");
        CHECK(contains(json, "\"negligibility\""));
        CHECK(contains(json, "\"crossval_rel\""));
    }
}
#endif

} // TEST_SUITE
