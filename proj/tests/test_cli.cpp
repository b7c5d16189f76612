// End-to-end checks of the installed command-line surface: subcommands,
// config-file precedence, exit codes and byte-stable output files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = SPINPAIR_CLI_PATH;

struct Invocation {
    int exit_code = -1;
    std::string stdout_text;
};

Invocation run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out = dir / "stdout.txt";
    const std::string cmd = kCli + " " + args + " > " + out.string() + " 2> " +
                            (dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    Invocation inv;
    inv.exit_code = WEXITSTATUS(status);
    std::ifstream f(out);
    std::stringstream buf;
    buf << f.rdbuf();
    inv.stdout_text = buf.str();
    return inv;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "spinpair-cli-test";
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const std::string kRefFlags =
    "--scenario bell-phi --p 1 --jp 1 --jm 0.5 --jz 1 --lambda 0.5 --dm 1 --field 1 "
    "--gamma 0.05";

}  // namespace

TEST_CASE("steady subcommand prints the reference values") {
    TempDir tmp;
    const auto inv = run_cli("steady " + kRefFlags, tmp.path);
    CHECK(inv.exit_code == 0);
    CHECK(inv.stdout_text.find("0.7,0,0,0.3,0.1,0,0,0,0.2,0.02,0.2,0.6") != std::string::npos);
}

TEST_CASE("repeated evolve runs write byte-identical files") {
    TempDir tmp;
    const std::string base = "evolve " + kRefFlags +
                             " --engine spectral --t-max 10 --dt-sample 0.05 "
                             "--outputs correlations,elements,purity --out ";
    const auto a = run_cli(base + (tmp.path / "a.csv").string(), tmp.path);
    const auto b = run_cli(base + (tmp.path / "b.csv").string(), tmp.path);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    const std::string file_a = slurp(tmp.path / "a.csv");
    CHECK(!file_a.empty());
    CHECK(file_a == slurp(tmp.path / "b.csv"));
    CHECK(file_a.rfind("t,concurrence,min_hs,min_trace,purity,re_r14", 0) == 0);
}

TEST_CASE("config files load with flag precedence") {
    TempDir tmp;
    SUBCASE("flat key=value") {
        const fs::path cfg = tmp.path / "run.cfg";
        std::ofstream(cfg) << "scenario=bell-phi\np=1\njp=1\njm=0.5\njz=1\nlambda=0.5\n"
                              "dm=1\nfield=1\ngamma=0.05\n";
        const auto inv = run_cli("steady --config " + cfg.string(), tmp.path);
        CHECK(inv.exit_code == 0);
        CHECK(inv.stdout_text.find("0.2,0.02,0.2") != std::string::npos);

        // flag overrides the file: dm has no effect on this steady state
        const auto inv2 = run_cli("steady --config " + cfg.string() + " --p 0.6", tmp.path);
        CHECK(inv2.exit_code == 0);
        CHECK(inv2.stdout_text.find("0.52,") != std::string::npos);  // r11 = 0.52 at p=0.6
    }
    SUBCASE("json object") {
        const fs::path cfg = tmp.path / "run.json";
        std::ofstream(cfg) << R"({
  "params": {"j_plus": 1, "j_minus": 0.5, "j_z": 1, "dm": 1, "field": 1,
              "inhomogeneity": 0.5, "gamma": 0.05},
  "scenario": {"kind": "bell-phi", "p": 1.0},
  "engine": "xclosed", "t_max": 1.0, "dt_sample": 0.5, "format": "csv"
})";
        const auto inv = run_cli("evolve --config " + cfg.string(), tmp.path);
        CHECK(inv.exit_code == 0);
        CHECK(inv.stdout_text.rfind("t,concurrence", 0) == 0);
        CHECK(inv.stdout_text.find("\n0,1,0.5,1,1\n") != std::string::npos);
    }
    SUBCASE("json raw state") {
        const fs::path cfg = tmp.path / "raw.json";
        std::ofstream(cfg) << R"({
  "scenario": {"kind": "raw",
               "raw_state": {"a": 0.5, "b": 0, "c": 0, "d": 0.5, "w_re": 0.5}}
})";
        const auto inv = run_cli("validate --config " + cfg.string(), tmp.path);
        CHECK(inv.exit_code == 0);
        CHECK(inv.stdout_text.find("valid density matrix") != std::string::npos);
    }
}

TEST_CASE("figure subcommand writes the bundled panels") {
    TempDir tmp;
    const auto inv = run_cli("figure 2 --out-dir " + tmp.path.string(), tmp.path);
    CHECK(inv.exit_code == 0);
    for (const char* name : {"fig2_gamma0.05.csv", "fig2_gamma0.1.csv", "fig2_gamma0.3.csv"})
        CHECK(fs::exists(tmp.path / name));
}

TEST_CASE("sweep emits one ordered row per grid cell") {
    TempDir tmp;
    const auto inv = run_cli("sweep " + kRefFlags +
                                 " --sweep gamma=0.05,0.1,0.3 --t-max 20 --dt-sample 0.05",
                             tmp.path);
    CHECK(inv.exit_code == 0);
    std::istringstream lines(inv.stdout_text);
    std::string line;
    std::getline(lines, line);
    CHECK(line ==
          "gamma,steady_concurrence,steady_min_hs,steady_min_trace,sudden_death_time,skipped");
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        ++rows;
        // identical steady columns for every gamma
        CHECK(line.find(",0.2,0.02,0.2,") != std::string::npos);
    }
    CHECK(rows == 3);
}

TEST_CASE("exit codes distinguish config, domain and io failures") {
    TempDir tmp;
    CHECK(run_cli("evolve --scenario nosuch", tmp.path).exit_code == 2);
    CHECK(run_cli("evolve --engine warp " + kRefFlags, tmp.path).exit_code == 2);
    CHECK(run_cli("badcommand", tmp.path).exit_code == 2);

    // xclosed on a singular slice (eta^2 = lambda^2) is a physics-domain error
    CHECK(run_cli("evolve --scenario bell-phi --p 1 --jm 0.5 --field 1 --lambda 0.5 "
                  "--gamma 0.05 --engine xclosed --t-max 1 --dt-sample 0.5",
                  tmp.path)
              .exit_code == 3);

    CHECK(run_cli("evolve " + kRefFlags + " --t-max 1 --dt-sample 0.5 --out /nonexistent/x.csv",
                  tmp.path)
              .exit_code == 4);

    CHECK(run_cli("validate --scenario raw --raw-state 0.1,0.4,0.4,0.1,0.2,0,0,0", tmp.path)
              .exit_code == 3);
    CHECK(run_cli("--help", tmp.path).exit_code == 0);
}
