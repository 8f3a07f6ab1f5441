#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

Outcome run_cli(const std::string& args) {
    const std::string cmd = std::string(BETTIMC_CLI) + " " + args + " 2>/dev/null";
    Outcome o;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return o;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), got);
    const int status = pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

std::string data(const char* name) {
    return std::string(BETTIMC_TEST_DATA) + "/" + name;
}

} // namespace

TEST(Cli, EstimateIsByteIdenticalAcrossRuns) {
    const std::string args = "estimate " + data("cycle6.txt") + " --k 1 --seed 5 --max-budget 20000";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("\"nu_tilde\""), std::string::npos);
}

TEST(Cli, WorkerCountDoesNotChangeEstimate) {
    const std::string base = "estimate " + data("octahedron.txt") + " --k 2 --seed 5 --max-budget 20000";
    const auto a = run_cli(base + " --workers 1");
    const auto b = run_cli(base + " --workers 3");
    ASSERT_EQ(a.code, 0);
    const auto pick = [](const std::string& s) { return s.substr(s.find("\"result\"")); };
    EXPECT_EQ(pick(a.out), pick(b.out));
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("exact " + data("hollow_triangle.txt") + " --k 1").code, 0);
    EXPECT_EQ(run_cli("exact " + data("bad_vertex.txt") + " --k 1").code, 2);
    EXPECT_EQ(run_cli("exact " + data("missing.txt") + " --k 1").code, 2);
    EXPECT_EQ(run_cli("estimate " + data("hollow_triangle.txt") + " --k 2").code, 2);
    EXPECT_EQ(run_cli("estimate " + data("hollow_triangle.txt") + " --k 1 --strict-budget").code, 3);
    EXPECT_EQ(run_cli("validate " + data("octahedron.txt") + " --k 2").code, 0);
}

TEST(Cli, TextFormatAndGenerator) {
    const auto t = run_cli("exact " + data("octahedron.txt") + " --k 2 --format text");
    ASSERT_EQ(t.code, 0);
    EXPECT_NE(t.out.find("betti: 1"), std::string::npos);
    const auto g1 = run_cli("gen --family er --n 8 --p 0.5 --seed 3");
    const auto g2 = run_cli("gen --family er --n 8 --p 0.5 --seed 3");
    ASSERT_EQ(g1.code, 0);
    EXPECT_EQ(g1.out, g2.out);
    EXPECT_EQ(g1.out.rfind("# gen family=er n=8", 0), 0u);
    const std::string path = ::testing::TempDir() + "/bettimc_gen.txt";
    ASSERT_EQ(run_cli("gen --family er --n 8 --p 0.5 --seed 3 -o " + path).code, 0);
    const auto rep = run_cli("exact " + path + " --k 0");
    EXPECT_NE(rep.out.find("\"generator\": \"family=er n=8 p=0.5 seed=3\""), std::string::npos) << rep.out;
}
