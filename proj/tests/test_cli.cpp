#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qrepro/commands.hpp"
#include "qrepro/states.hpp"

using namespace qrepro;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kData = QREPRO_TEST_DATA;

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

/// Runs the installed binary through the shell; stderr is discarded.
Run run_binary(const std::string& args) {
    const std::string cmd = std::string("\"") + QREPRO_CLI_PATH + "\" " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qrepro_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string gen(const std::string& kind, int n, int m = -1) {
        const std::string out = path(kind + std::to_string(n) + (m >= 0 ? "_" + std::to_string(m) : "") + ".json");
        std::vector<std::string> args{"gen", "--kind", kind, "--n", std::to_string(n), "--out", out};
        if (m >= 0) {
            args.push_back("--m");
            args.push_back(std::to_string(m));
        }
        EXPECT_EQ(run(args).code, 0);
        return out;
    }

    fs::path dir_;
};

} // namespace

TEST(parse_angle, accepts_pi_multiples_and_radians) {
    EXPECT_DOUBLE_EQ(cli::parse_angle("0.25pi"), std::numbers::pi / 4);
    EXPECT_DOUBLE_EQ(cli::parse_angle("pi"), std::numbers::pi);
    EXPECT_DOUBLE_EQ(cli::parse_angle("-0.5pi"), -std::numbers::pi / 2);
    EXPECT_DOUBLE_EQ(cli::parse_angle("0.3"), 0.3);
    EXPECT_THROW(cli::parse_angle("abc"), std::exception);
    EXPECT_THROW(cli::parse_angle("0.3x"), std::exception);
    EXPECT_EQ(cli::parse_angle_list("0,0.5pi").size(), 2u);
}

TEST(round_sig12, twelve_significant_digits) {
    EXPECT_EQ(cli::round_sig12(2.0 / 3.0), 0.666666666667);
    EXPECT_EQ(cli::round_sig12(-1e-20), -1e-20);
    EXPECT_EQ(cli::round_sig12(0.0), 0.0);
}

TEST_F(CliTest, gen_fixtures) {
    const double r2 = 1 / std::sqrt(2.0), r3 = 1 / std::sqrt(3.0), r6 = 1 / std::sqrt(6.0);
    auto ghz = load_state(gen("ghz", 3));
    EXPECT_NEAR(ghz[0].real(), r2, 1e-15);
    EXPECT_NEAR(ghz[7].real(), r2, 1e-15);
    auto w = load_state(gen("w", 3));
    for (std::size_t b : {1u, 2u, 4u})
        EXPECT_NEAR(w[b].real(), r3, 1e-15);
    auto d = load_state(gen("dicke", 4, 2));
    int nonzero = 0;
    for (const auto& a : d.amplitudes())
        if (std::abs(a) > 0) {
            ++nonzero;
            EXPECT_NEAR(a.real(), r6, 1e-15);
        }
    EXPECT_EQ(nonzero, 6);
}

TEST_F(CliTest, gen_rejects_bad_combinations) {
    EXPECT_EQ(run({"gen", "--kind", "w", "--n", "2"}).code, 1);
    EXPECT_EQ(run({"gen", "--kind", "dicke", "--n", "3"}).code, 1);
    EXPECT_EQ(run({"gen", "--kind", "nope", "--n", "3"}).code, 1);
    EXPECT_EQ(run({"gen", "--kind", "ghz", "--n", "3", "--out", path("missing/dir/x.json")}).code, 1);
}

TEST_F(CliTest, check_dicke22_passes) {
    const auto r = run({"check", "--state", gen("dicke", 4, 2), "--ops", (kData / "dicke22_ops.json").string()});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("verdict: pass"), std::string::npos);
}

TEST_F(CliTest, check_w3_fails_with_two_thirds) {
    const std::string report = path("report.json");
    const auto r = run({"check", "--state", gen("w", 3), "--ops", (kData / "flip3_ops.json").string(), "--json",
                        "--out", report});
    EXPECT_EQ(r.code, 2);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["result"]["verdict"], "fail");
    EXPECT_EQ(j["result"]["max_offdiag"].get<double>(), 0.666666666667);
    EXPECT_EQ(j["exit_code"], 2);
    EXPECT_EQ(j["inputs"]["ops"]["sha256"].get<std::string>().size(), 64u);
    EXPECT_EQ(slurp(report), r.out);
}

TEST_F(CliTest, check_malformed_input_exits_one) {
    std::ofstream(path("bad.json")) << "{ not json";
    const auto ops = (kData / "flip3_ops.json").string();
    EXPECT_EQ(run({"check", "--state", path("bad.json"), "--ops", ops}).code, 1);
    EXPECT_EQ(run({"check", "--state", path("absent.json"), "--ops", ops}).code, 1);
    EXPECT_EQ(run({"check", "--state", gen("ghz", 2), "--ops", ops}).code, 1); // 3 players vs 2 qubits
    EXPECT_EQ(run({"check", "--ops", ops}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
}

TEST_F(CliTest, search_ghz4_writes_checkable_operators) {
    const std::string state = gen("ghz", 4), ops = path("ghz4_ops.json");
    const auto r = run({"search", "--state", state, "--restarts", "8", "--seed", "7", "--tol", "1e-6", "--out", ops,
                        "--json"});
    ASSERT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_TRUE(json::parse(r.out)["result"]["converged"].get<bool>());
    ASSERT_TRUE(fs::exists(ops));
    EXPECT_EQ(run({"check", "--state", state, "--ops", ops, "--tol", "1e-5"}).code, 0);
}

TEST_F(CliTest, search_w3_does_not_converge) {
    const auto r = run({"search", "--state", gen("w", 3), "--restarts", "6", "--seed", "42", "--json", "--out",
                        path("never.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(json::parse(r.out)["result"]["converged"].get<bool>());
    EXPECT_FALSE(fs::exists(path("never.json")));
}

TEST_F(CliTest, search_zero_restarts_is_input_error) {
    EXPECT_EQ(run({"search", "--state", gen("ghz", 3), "--restarts", "0"}).code, 1);
}

TEST_F(CliTest, reproduce_prisoners_dilemma) {
    const std::string bell = gen("bell", 2), game = (kData / "pd.json").string(),
                      ops = (kData / "bell_ops.json").string();
    auto r = run({"reproduce", "--game", game, "--state", bell, "--ops", ops, "--theta", "0.25pi,0.25pi", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out)["result"];
    EXPECT_EQ(j["classical_payoff"], json::array({2.25, 2.25}));
    EXPECT_EQ(j["quantum_payoff"], json::array({2.25, 2.25}));
    r = run({"reproduce", "--game", game, "--state", bell, "--ops", ops, "--theta", "0,0", "--json"});
    ASSERT_EQ(r.code, 0);
    j = json::parse(r.out)["result"];
    EXPECT_EQ(j["quantum_payoff"], json::array({3.0, 3.0}));
    EXPECT_EQ(j["classical_payoff"], json::array({3.0, 3.0}));
}

TEST_F(CliTest, reproduce_w3_reports_failed_precondition) {
    const std::string game = path("g3.json");
    std::ofstream(game) << R"({"n_players":3,"strategy_counts":[2,2,2],"payoffs":[[1,1,1],[2,0,0],[0,2,0],[1,1,0],
        [0,0,2],[1,0,1],[0,1,1],[3,3,3]]})";
    const auto r = run({"reproduce", "--game", game, "--state", gen("w", 3), "--ops",
                        (kData / "flip3_ops.json").string(), "--theta", "0.1,0.2,0.3"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("precondition fails"), std::string::npos);
}

TEST_F(CliTest, payoff_pure_selection_and_angles) {
    const std::string bell = gen("bell", 2), game = (kData / "pd.json").string(),
                      ops = (kData / "bell_ops.json").string();
    auto r = run({"payoff", "--game", game, "--state", bell, "--ops", ops, "--select", "2,2", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["result"]["payoff"], json::array({1.0, 1.0}));

    r = run({"payoff", "--game", game, "--state", bell, "--ops", ops, "--angles", "0.3,1.1,-0.4;0.7pi,0.2,2", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto probs = json::parse(r.out)["result"]["probabilities"];
    double total = 0;
    for (double p : probs)
        total += p;
    EXPECT_NEAR(total, 1.0, 1e-11);

    EXPECT_EQ(run({"payoff", "--game", game, "--state", bell, "--ops", ops}).code, 1);
    EXPECT_EQ(run({"payoff", "--game", game, "--state", bell, "--ops", ops, "--select", "3,1"}).code, 1);
}

TEST_F(CliTest, payoff_shots_are_seeded) {
    const std::string bell = gen("bell", 2), game = (kData / "pd.json").string(),
                      ops = (kData / "bell_ops.json").string();
    const std::vector<std::string> args{"payoff", "--game", game,   "--state", bell,  "--ops",
                                        ops,      "--theta", "0.3,1.0", "--shots", "1000", "--seed", "1", "--json"};
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto counts = json::parse(a.out)["result"]["counts"];
    long total = 0;
    for (long c : counts)
        total += c;
    EXPECT_EQ(total, 1000);
}

TEST_F(CliTest, binary_reports_are_byte_identical) {
    const std::string state = gen("dicke", 3, 1);
    const std::string args = "search --state \"" + state + "\" --restarts 6 --max-iters 200 --seed 3 --json";
    const auto a = run_binary(args + " --threads 1"), b = run_binary(args + " --threads 4");
    EXPECT_EQ(a.code, 2);
    EXPECT_EQ(b.code, 2);
    auto ja = json::parse(a.out), jb = json::parse(b.out);
    // Only the echoed argument lists differ.
    ja.erase("args");
    jb.erase("args");
    EXPECT_EQ(ja.dump(), jb.dump());
    EXPECT_EQ(run_binary(args).out, run_binary(args).out);
}

TEST_F(CliTest, binary_exit_codes) {
    EXPECT_EQ(run_binary("--version").code, 0);
    EXPECT_EQ(run_binary("--help").code, 0);
    EXPECT_EQ(run_binary("").code, 1);
    EXPECT_EQ(run_binary("check --state \"" + gen("w", 3) + "\" --ops \"" + (kData / "flip3_ops.json").string() + "\"").code,
              2);
}
