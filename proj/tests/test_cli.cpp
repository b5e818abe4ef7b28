#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Runs the built command-line binary through the shell and captures stdout.
int run_cli(const std::string& args, std::string* out = nullptr) {
    const std::string cmd =
        std::string("'") + DUPDEL_CLI_PATH + "' " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string captured;
    std::array<char, 4096> buffer;
    std::size_t got = 0;
    while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        captured.append(buffer.data(), got);
    const int status = ::pclose(pipe);
    if (out != nullptr) *out = captured;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_all(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("dupdel-cli-test-" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

}  // namespace

TEST_CASE("theory table prints schema line, header and known values") {
    std::string out;
    const int rc = run_cli("theory --theta 0.5 --what c --kmax 5", &out);
    CHECK(rc == 0);
    CHECK(out.rfind("# dupdel-schema v1\n", 0) == 0);
    CHECK(out.find("k,c_k,recursion_residual,asympt_ratio") != std::string::npos);
    // Digit-exact agreement is covered by the library tests; the CSV check
    // tolerates the final-ulp wobble of the shortest round-trip form.
    CHECK(out.find("\n0,0.4036526") != std::string::npos);
    // Six data rows: k = 0 .. 5.
    CHECK(out.find("\n5,") != std::string::npos);
}

TEST_CASE("theory p0 table carries the critical-point Laguerre column") {
    std::string out;
    CHECK(run_cli("theory --theta 0.5 --what p0 --rmax 4", &out) == 0);
    CHECK(out.find("r,a_r,p0,laguerre_delta,asympt_ratio") != std::string::npos);
    CHECK(out.find("\n2,3.5,") != std::string::npos);

    CHECK(run_cli("theory --theta 0.3 --what p0 --rmax 4", &out) == 0);
    CHECK(out.find("r,a_r,p0,binomial_sum_delta,asympt_ratio") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2 and help with 0") {
    CHECK(run_cli("theory --theta 1.5 --what c") == 2);
    CHECK(run_cli("theory --what c") == 2);          // missing --theta
    CHECK(run_cli("theory --theta 0.5") == 2);       // missing --what
    CHECK(run_cli("theory --theta 0.5 --what bogus") == 2);
    CHECK(run_cli("") == 2);                         // a subcommand is required
    CHECK(run_cli("no_such_command") == 2);
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("selfcheck --criterion 11") == 2);  // out of range
}

TEST_CASE("simulate writes deterministic histogram and summary files") {
    TempDir tmp;
    const std::string prefix_a = (tmp.path / "run_a").string();
    const std::string prefix_b = (tmp.path / "run_b").string();
    const std::string args = "simulate --version 1 --theta 0.5 --steps 2000 "
                             "--seed 42 --snapshot 1000 --out ";
    CHECK(run_cli(args + "'" + prefix_a + "'") == 0);
    CHECK(run_cli(args + "'" + prefix_b + "'") == 0);

    const std::string hist = read_all(prefix_a + ".hist.csv");
    CHECK(hist == read_all(prefix_b + ".hist.csv"));
    CHECK(read_all(prefix_a + ".summary.csv") == read_all(prefix_b + ".summary.csv"));

    CHECK(hist.rfind("# dupdel-schema v1\n", 0) == 0);
    CHECK(hist.find("version,theta,seed,step_or_time,N,max_degree,k,count") !=
          std::string::npos);
    CHECK(hist.find("1,0.5,42,1000,") != std::string::npos);  // snapshot row
    CHECK(hist.find(",overflow,") != std::string::npos);

    const std::string summary = read_all(prefix_a + ".summary.csv");
    CHECK(summary.find(
              "version,theta,seed,step_or_time,N,max_degree,scaling_estimate,S1,S2,S3") !=
          std::string::npos);
    CHECK(summary.find("1,0.5,42,2000,") != std::string::npos);  // horizon row
}

TEST_CASE("simulate rejects a horizon flag of the wrong flavour") {
    TempDir tmp;
    const std::string out = (tmp.path / "x").string();
    CHECK(run_cli("simulate --version 1 --theta 0.5 --tmax 5 --out '" + out + "'") == 2);
    CHECK(run_cli("simulate --version 3 --theta 0.5 --steps 5 --out '" + out + "'") == 2);
    CHECK(run_cli("simulate --version 3 --theta 0.5 --out '" + out + "'") == 2);
}

TEST_CASE("oracle enumeration emits a normalized JSON law") {
    std::string out;
    CHECK(run_cli("oracle --theta 0.3 --enumerate 2", &out) == 0);
    const json doc = json::parse(out);
    CHECK(doc.at("schema_version") == 1);
    CHECK(doc.at("kind") == "enumeration");
    CHECK(doc.at("n") == 2);
    double total = 0.0;
    for (const auto& state : doc.at("states")) total += state.at("p").get<double>();
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(std::abs(doc.at("expected_vertices").get<double>() - 1.6) < 1e-12);
}

TEST_CASE("oracle first passage reports solve, inverse scale and Monte Carlo") {
    std::string out;
    CHECK(run_cli("oracle --theta 0.5 --first-passage 2 --mc 20000 --seed 3", &out) == 0);
    const json doc = json::parse(out);
    CHECK(doc.at("kind") == "first_passage");
    const double p0 = doc.at("p0").get<double>();
    CHECK(std::abs(p0 - 2.0 / 7.0) < 1e-12);
    CHECK(std::abs(doc.at("inv_a").get<double>() - p0) < 1e-12);
    CHECK(std::abs(doc.at("mc").get<double>() - p0) < 0.02);
}

TEST_CASE("oracle demands exactly one mode") {
    CHECK(run_cli("oracle --theta 0.5") == 2);
    CHECK(run_cli("oracle --theta 0.5 --enumerate 2 --stationary 50") == 2);
    CHECK(run_cli("oracle --theta 0.5 --enumerate 9") == 2);  // over the guard
}

TEST_CASE("experiment runs a spec file and writes both artifacts") {
    TempDir tmp;
    const fs::path spec_path = tmp.path / "spec.json";
    {
        std::ofstream spec(spec_path);
        spec << R"({"kind": "growth_law", "version": 1, "theta": 0.5,
                    "horizon": 20000, "replicas": 3, "master_seed": 5,
                    "tolerance": 0.05})";
    }
    const std::string prefix = (tmp.path / "result").string();
    CHECK(run_cli("experiment --spec '" + spec_path.string() + "' --out '" +
                  prefix + "'") == 0);

    const json doc = json::parse(read_all(prefix + ".json"));
    CHECK(doc.at("schema_version") == 1);
    CHECK(doc.at("overall_pass") == true);
    CHECK(doc.at("spec").at("kind") == "growth_law");

    const std::string csv = read_all(prefix + ".csv");
    CHECK(csv.rfind("# dupdel-schema v1\n", 0) == 0);
    CHECK(csv.find("at,metric,value,reference,tolerance,pass") != std::string::npos);
}

TEST_CASE("experiment rejects malformed specs with exit 2") {
    TempDir tmp;
    const fs::path bad = tmp.path / "bad.json";
    {
        std::ofstream spec(bad);
        spec << R"({"kind": "growth_law", "surprise": true})";
    }
    CHECK(run_cli("experiment --spec '" + bad.string() + "'") == 2);
    CHECK(run_cli("experiment --spec '" + (tmp.path / "missing.json").string() + "'") == 2);
}
