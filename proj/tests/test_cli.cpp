#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "plsstop/cli.hpp"
#include "plsstop/evaluation.hpp"

using namespace plsstop;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    static std::mt19937_64 eng{std::random_device{}()};
    const fs::path p = fs::temp_directory_path() /
                       ("plsstop_cli_" + tag + "_" +
                        std::to_string(eng()));
    fs::create_directories(p);
    return p;
}

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    std::streambuf* old_out = std::cout.rdbuf(out.rdbuf());
    std::streambuf* old_err = std::cerr.rdbuf(err.rdbuf());
    CliRun r;
    r.code = run_cli(args);
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    f << content;
}

bool kv_contains(const std::string& text, const std::string& line) {
    return text.find(line + "\n") != std::string::npos ||
           text.rfind(line + "\n", 0) == 0;
}

}  // namespace

TEST_CASE("help exits zero and lists the subcommands") {
    const CliRun r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("simulate") != std::string::npos);
    CHECK(r.out.find("select") != std::string::npos);
    CHECK(r.out.find("compare") != std::string::npos);
}

TEST_CASE("usage problems exit with code 1") {
    CHECK(run({}).code == 1);                       // a subcommand is required
    CHECK(run({"frobnicate"}).code == 1);           // unknown subcommand
    CHECK(run({"select", "--no-such-flag"}).code == 1);
    CHECK(run({"select"}).code == 1);               // missing required options
    CHECK(run({"simulate", "--out-dir", "/tmp/x", "--reps", "0"}).code == 1);
}

TEST_CASE("simulate writes datasets, latent sidecars, and the run config") {
    const fs::path dir = fresh_dir("sim");
    const CliRun r = run({"simulate", "--n", "30", "--p", "6", "--reps", "2",
                          "--test-rows", "10", "--seed", "3",
                          "--out-dir", dir.string()});
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "dataset_001.csv"));
    CHECK(fs::exists(dir / "dataset_001_latent.csv"));
    CHECK(fs::exists(dir / "dataset_001_test.csv"));
    CHECK(fs::exists(dir / "dataset_002.csv"));
    const std::string kv = slurp(dir / "run_config.txt");
    CHECK(kv_contains(kv, "command=simulate"));
    CHECK(kv_contains(kv, "seed=3"));
    CHECK(kv_contains(kv, "reps=2"));

    // single replicate: unnumbered stem, no test file unless requested
    const fs::path single = fresh_dir("sim1");
    CHECK(run({"simulate", "--n", "30", "--p", "6",
               "--out-dir", single.string()}).code == 0);
    CHECK(fs::exists(single / "dataset.csv"));
    CHECK(fs::exists(single / "dataset_latent.csv"));
    CHECK(!fs::exists(single / "dataset_test.csv"));
}

TEST_CASE("select prints K and writes trace plus config when asked") {
    const fs::path sim = fresh_dir("sel_in");
    REQUIRE(run({"simulate", "--n", "100", "--p", "8", "--seed", "1",
                 "--out-dir", sim.string()}).code == 0);

    const fs::path out = fresh_dir("sel_out");
    const CliRun r = run({"select", "--data", (sim / "dataset.csv").string(),
                          "--criterion", "q2", "--seed", "4",
                          "--out-dir", out.string()});
    CHECK(r.code == 0);
    CHECK(r.out == "K=3\n");  // strong three-component data

    const std::string trace = slurp(out / "trace.csv");
    CHECK(trace.rfind("k,statistic,decision", 0) == 0);
    const std::string kv = slurp(out / "run_config.txt");
    CHECK(kv_contains(kv, "command=select"));
    CHECK(kv_contains(kv, "criterion=q2"));
    CHECK(kv_contains(kv, "selected_K=3"));
}

TEST_CASE("select reads the response column by name") {
    const fs::path dir = fresh_dir("resp");
    std::string csv = "a,b,outcome\n";
    std::mt19937_64 eng(5);
    std::normal_distribution<double> g;
    for (int i = 0; i < 40; ++i) {
        const double a = g(eng), b = g(eng);
        csv += std::to_string(a) + "," + std::to_string(b) + "," +
               std::to_string(2.0 * a - b) + "\n";
    }
    spit(dir / "d.csv", csv);
    const CliRun r = run({"select", "--data", (dir / "d.csv").string(),
                          "--response", "outcome", "--criterion", "q2"});
    CHECK(r.code == 0);
    CHECK(r.out == "K=2\n");  // y is an exact function of both predictors
}

TEST_CASE("the master seed can come from PLSSTOP_SEED") {
    const fs::path sim = fresh_dir("env_in");
    REQUIRE(run({"simulate", "--n", "60", "--p", "7", "--seed", "2",
                 "--out-dir", sim.string()}).code == 0);
    const std::string data = (sim / "dataset.csv").string();

    const fs::path via_flag = fresh_dir("env_a");
    REQUIRE(run({"select", "--data", data, "--criterion", "q2",
                 "--seed", "123", "--out-dir", via_flag.string()}).code == 0);

    ::setenv("PLSSTOP_SEED", "123", 1);
    const fs::path via_env = fresh_dir("env_b");
    const CliRun r = run({"select", "--data", data, "--criterion", "q2",
                          "--out-dir", via_env.string()});
    ::unsetenv("PLSSTOP_SEED");
    CHECK(r.code == 0);
    CHECK(slurp(via_env / "trace.csv") == slurp(via_flag / "trace.csv"));
    CHECK(kv_contains(slurp(via_env / "run_config.txt"), "seed=123"));
}

TEST_CASE("config file supplies defaults, command line wins") {
    const fs::path dir = fresh_dir("cfg");
    spit(dir / "cfg.toml", "[simulate]\nn=40\nseed=7\np=6\n");
    const fs::path out = fresh_dir("cfg_out");
    const CliRun r = run({"--config", (dir / "cfg.toml").string(),
                          "simulate", "--n", "30",
                          "--out-dir", out.string()});
    CHECK(r.code == 0);
    const std::string kv = slurp(out / "run_config.txt");
    CHECK(kv_contains(kv, "n=30"));    // flag overrides config
    CHECK(kv_contains(kv, "seed=7"));  // config fills the gap
    CHECK(kv_contains(kv, "p_min=6"));
}

TEST_CASE("partition-count prints the exact integer") {
    CHECK(run({"partition-count", "--n", "4", "--q", "2"}).out == "3\n");
    CHECK(run({"partition-count", "--n", "5", "--q", "2"}).out == "10\n");
    const CliRun big = run({"partition-count", "--n", "100", "--q", "5"});
    CHECK(big.code == 0);
    CHECK(big.out == partition_count(100, 5).str() + "\n");
    CHECK(run({"partition-count", "--n", "3", "--q", "9"}).code == 1);
}

TEST_CASE("robustness prints the modal line and writes the histogram") {
    const fs::path sim = fresh_dir("rob_in");
    REQUIRE(run({"simulate", "--n", "40", "--p", "6", "--seed", "8",
                 "--out-dir", sim.string()}).code == 0);
    const fs::path out = fresh_dir("rob_out");
    const CliRun r = run({"robustness", "--data",
                          (sim / "dataset.csv").string(),
                          "--criterion", "q2", "--mode", "jackknife",
                          "--seed", "5", "--out-dir", out.string()});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("modal K=", 0) == 0);
    CHECK(r.out.find("mean K=") != std::string::npos);
    CHECK(r.out.find("errors=") != std::string::npos);
    CHECK(r.out.find("/40)") != std::string::npos);  // jackknife: n runs
    CHECK(slurp(out / "histogram.csv").rfind("k,count", 0) == 0);

    CHECK(run({"robustness", "--data", (sim / "dataset.csv").string(),
               "--criterion", "q2", "--mode", "nonsense"}).code == 1);
}

TEST_CASE("unreadable or malformed data files exit with code 2") {
    CHECK(run({"select", "--data", "/nonexistent/nope.csv",
               "--criterion", "q2"}).code == 2);

    const fs::path dir = fresh_dir("bad");
    spit(dir / "bad.csv", "x1,y\n1,2\noops,4\n");
    const CliRun r = run({"select", "--data", (dir / "bad.csv").string(),
                          "--criterion", "q2"});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);

    // structurally fine file that fails family validation
    spit(dir / "notbin.csv", "x1,y\n1,0\n2,2\n3,1\n");
    CHECK(run({"select", "--data", (dir / "notbin.csv").string(),
               "--family", "binomial", "--criterion", "pval"}).code == 2);
}

TEST_CASE("criterion and family mismatches are usage errors") {
    const fs::path sim = fresh_dir("mismatch");
    REQUIRE(run({"simulate", "--family", "binomial", "--n", "60", "--p", "6",
                 "--seed", "9", "--out-dir", sim.string()}).code == 0);
    const CliRun r = run({"select", "--data", (sim / "dataset.csv").string(),
                          "--family", "binomial", "--criterion", "q2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("gaussian") != std::string::npos);

    CHECK(run({"select", "--data", (sim / "dataset.csv").string(),
               "--family", "binomial", "--criterion", "zzz"}).code == 1);
}

TEST_CASE("compare outputs are byte-identical across reruns and jobs") {
    const std::vector<std::string> common = {
        "compare", "--criteria", "q2,bic", "--sigma4", "0.01",
        "--sigma5", "0.01,2", "--n", "50", "--p-min", "6", "--p-max", "6",
        "--datasets-per-cell", "3", "--test-rows", "20", "--seed", "11"};

    auto run_into = [&](const fs::path& dir, const std::string& jobs) {
        std::vector<std::string> args = common;
        args.push_back("--jobs");
        args.push_back(jobs);
        args.push_back("--out-dir");
        args.push_back(dir.string());
        return run(args);
    };

    const fs::path a = fresh_dir("cmp_a");
    const fs::path b = fresh_dir("cmp_b");
    const fs::path c = fresh_dir("cmp_c");
    CHECK(run_into(a, "1").code == 0);
    CHECK(run_into(b, "4").code == 0);
    CHECK(run_into(c, "4").code == 0);

    CHECK(slurp(a / "grid.csv") == slurp(b / "grid.csv"));
    CHECK(slurp(b / "grid.csv") == slurp(c / "grid.csv"));
    CHECK(slurp(a / "summary.csv") == slurp(b / "summary.csv"));

    // 1 couple-pair x 2 sigma5 values x 3 replicates x 2 criteria + header
    const std::string grid = slurp(a / "grid.csv");
    CHECK(std::count(grid.begin(), grid.end(), '\n') == 13);
}

TEST_CASE("compare flags partial failures with exit code 3") {
    const fs::path dir = fresh_dir("cmp_fail");
    // q2 cannot run on a binomial response; pval can
    const CliRun r = run({"compare", "--family", "binomial",
                          "--criteria", "q2,pval", "--sigma4", "0.01",
                          "--sigma5", "0.1", "--n", "50",
                          "--p-min", "6", "--p-max", "6",
                          "--datasets-per-cell", "2", "--test-rows", "10",
                          "--seed", "2", "--out-dir", dir.string()});
    CHECK(r.code == 3);
    CHECK(r.err.find("failed") != std::string::npos);
    const std::string grid = slurp(dir / "grid.csv");
    CHECK(grid.find("gaussian") != std::string::npos);  // the error text
}
