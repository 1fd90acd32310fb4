#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>
#include <vector>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

Run cli(const std::vector<std::string>& args) {
    std::string cmd = quote(TEAMLOGIC_CLI);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::string kData = std::string(TEAMLOGIC_SOURCE_DIR) + "/tests/data/";
const std::string kScripts = std::string(TEAMLOGIC_SOURCE_DIR) + "/scripts/";

Run check(const std::string& formula) {
    return cli({"check", "--model", kData + "ab.model", "--team", kData + "xy.team", "--formula", formula});
}

TEST(Cli, CheckVerdictsAndExitCodes) {
    auto unsat = check("=(x;y)");
    EXPECT_EQ(unsat.code, 1);
    EXPECT_EQ(unsat.out, "UNSAT\n");
    auto sat = check("=(y;x)");
    EXPECT_EQ(sat.code, 0);
    EXPECT_EQ(sat.out, "SAT\n");
}

TEST(Cli, ParseErrorExitsTwo) {
    auto r = check("=(x;");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("error"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(cli({"frobnicate"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"check", "--formula", "x = y"}).code, 2);
    EXPECT_EQ(cli({"prove", "--script", kData + "no_such.proof"}).code, 2);
    EXPECT_EQ(cli({"props", "--suite", "nonsense"}).code, 2);
}

TEST(Cli, EntailArmstrongTransitivity) {
    auto r = cli({"entail", "--hyp", "=(x;y)", "--hyp", "=(y;z)", "--concl", "=(x;z)"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("VALID-UP-TO 2\n", 0), 0u) << r.out;
}

TEST(Cli, EntailCounterexampleDump) {
    auto r = cli({"entail", "--hyp", "=(x;y)", "--concl", "=(y;x)"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out.rfind("COUNTEREXAMPLE\n", 0), 0u) << r.out;
    EXPECT_NE(r.out.find("domain "), std::string::npos);
    EXPECT_NE(r.out.find("vars x y"), std::string::npos);
}

TEST(Cli, EntailDumpFilesRoundTripThroughCheck) {
    std::string prefix = testing::TempDir() + "teamlogic_cex";
    auto r = cli({"entail", "--hyp", "=(x;y)", "--concl", "=(y;x)", "--dump", prefix});
    ASSERT_EQ(r.code, 1);
    auto hyp = cli({"check", "--model", prefix + ".model", "--team", prefix + ".team", "--formula", "=(x;y)"});
    auto concl = cli({"check", "--model", prefix + ".model", "--team", prefix + ".team", "--formula", "=(y;x)"});
    EXPECT_EQ(hyp.out, "SAT\n");
    EXPECT_EQ(concl.out, "UNSAT\n");
}

TEST(Cli, MachineOutput) {
    auto r = cli({"entail", "--machine", "--hyp", "=(x;y)", "--concl", "=(y;x)"});
    EXPECT_EQ(r.out.rfind("verdict=COUNTEREXAMPLE\n", 0), 0u) << r.out;
    EXPECT_NE(r.out.find("team.0=vars x y"), std::string::npos);
    auto p = cli({"prove", "--machine", "--script", kScripts + "inc_compress_eq.proof"});
    EXPECT_EQ(p.out.rfind("verdict=ACCEPTED\n", 0), 0u) << p.out;
}

TEST(Cli, NegateAndTranslate) {
    auto n = cli({"negate", "--formula", "=(x;y)"});
    EXPECT_EQ(n.code, 0);
    EXPECT_NE(n.out.find("inc("), std::string::npos);
    auto bad = cli({"negate", "--formula", "E x. =(x;y)"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("NOT-NEGATABLE"), std::string::npos);
    auto eso = cli({"translate", "--formula", "=(x;y)"});
    EXPECT_EQ(eso.code, 0);
    EXPECT_NE(eso.out.find("R("), std::string::npos);
    auto sigma = cli({"translate", "--to", "sigma", "--formula", "inc(x;y)"});
    EXPECT_EQ(sigma.code, 0);
}

TEST(Cli, ProveCorpusAndRejection) {
    for (const char* f : {"inc_compress_eq", "dep_inc_transfer", "dep_transitivity", "ind_exchange", "ind_symmetry", "ind_decomposition", "ind_permutation"}) {
        auto r = cli({"prove", "--script", kScripts + f + ".proof"});
        EXPECT_EQ(r.code, 0) << f << "\n" << r.out;
        EXPECT_EQ(r.out.rfind("ACCEPTED\n", 0), 0u) << f;
    }
    auto bad = cli({"prove", "--script", kData + "bad_eigen.proof"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("REJECTED"), std::string::npos);
    EXPECT_NE(bad.out.find("step: 4"), std::string::npos);
}

TEST(Cli, PropsSuite) {
    auto r = cli({"props", "--suite", "lem", "--suite", "empty-team"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("PASS lem"), std::string::npos);
    EXPECT_NE(r.out.find("PASS empty-team"), std::string::npos);
}

}  // namespace

TEST(Cli, EmptyTeamSatisfiesBottom) {
    auto r = cli({"check", "--model", kData + "ab.model", "--team", kData + "empty.team", "--formula", "bot"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("SAT"), std::string::npos);
    EXPECT_EQ(r.out.find("UNSAT"), std::string::npos);
}
