#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

using namespace qhp;
using namespace fixtures;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

/// Runs the CLI with `input` on stdin; stderr is discarded.
Run run_cli(const std::string& args, const std::string& input, const std::string& env = "") {
    const std::string in_path = ::testing::TempDir() + "qhp_cli_in.json";
    std::ofstream(in_path) << input;
    const std::string cmd = env + " " + QHP_CLI_PATH + " " + args + " < " + in_path + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

}  // namespace

TEST(Json, IntegersAndRationals) {
    const Int big = Int(1) << 90;
    EXPECT_TRUE(int_to_json(big).is_string());
    EXPECT_EQ(int_from_json(int_to_json(big)), big);
    EXPECT_EQ(int_from_json(int_to_json(-7)), -7);
    const Rational r = Rational(-3) / Rational(8);
    const json rj = rational_to_json(r);
    EXPECT_EQ(rj.at("num"), "-3");
    EXPECT_EQ(rj.at("den"), "8");
    EXPECT_EQ(rational_from_json(rj), r);
}

TEST(Json, ForestFiberProgramRoundTrips) {
    const auto f = Chain{2, 0, 3}.to_forest();
    EXPECT_EQ(forest_to_json(forest_from_json(forest_to_json(f))), forest_to_json(f));
    EXPECT_EQ(forest_to_json(forest_from_json(json{{"chain", {2, 0, 3}}})), forest_to_json(f));

    const auto p = moduli_params(2).fibers.back();
    EXPECT_EQ(program_to_json(program_from_json(program_to_json(p))), program_to_json(p));
    EXPECT_EQ(program_from_json(program_to_json(p)).encode(), p.encode());

    const FiberTree fib = replay(new_fiber({"H"}), p);
    EXPECT_EQ(fiber_to_json(fiber_from_json(fiber_to_json(fib))), fiber_to_json(fib));

    const FlowMove mv{"v2", "v3"};
    EXPECT_EQ(move_to_json(move_from_json(move_to_json(mv))), move_to_json(mv));
}

TEST(Json, ModelRoundTripPreservesReport) {
    for (const auto& m : {construct_affine(moduli_params(2)), construct_twisted(twisted_Ai()),
                          construct_untwisted_c1(c1_Bi()), construct_untwisted_p1(p1_two_columns())}) {
        const json j = model_to_json(m);
        const RulingModel back = model_from_json(j);
        EXPECT_EQ(model_to_json(back), j);
        EXPECT_EQ(report_to_json(classify(back)), report_to_json(classify(m)));
    }
}

TEST(Json, MalformedInputs) {
    EXPECT_THROW(parse_json("{not json"), MalformedInput);
    EXPECT_THROW(forest_from_json(json{{"vertices", 3}}), MalformedInput);
    EXPECT_THROW(step_from_json(json{{"blowup", "c0"}}), MalformedInput);
    EXPECT_THROW(step_from_json(json{{"subdivide", {"c0"}}}), MalformedInput);
    EXPECT_THROW(p1_params_from_json(json::object()), MalformedInput);
}

TEST(Cli, Det) {
    const auto r = run_cli("det", R"({"chain":[2,1,2]})");
    ASSERT_EQ(r.status, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(int_from_json(j.at("d")), 0);
    EXPECT_FALSE(j.at("negative_definite").get<bool>());
}

TEST(Cli, Normalize) {
    const auto r = run_cli("normalize", R"({"chain":[2,0,3,2]})");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(json::parse(r.out).at("chain"), json({0, 0, 2, 5}));
}

TEST(Cli, ConstructAndClassify) {
    const json params = {{"fibers", {program_to_json(column_212("H"))}}};
    const auto c = run_cli("construct --kind affine", params.dump());
    ASSERT_EQ(c.status, 0);
    const json out = json::parse(c.out);
    const auto r = run_cli("classify", out.at("model").dump());
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(json::parse(r.out), out.at("report"));
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("det", "{oops").status, 2);
    EXPECT_EQ(run_cli("no-such-command", "{}").status, 2);
    EXPECT_EQ(run_cli("construct --kind affine", R"({"fibers":[{"steps":[{"sprout":"c0","at":"H"}]}]})").status, 1);
    EXPECT_EQ(run_cli("construct --kind nonsense", "{}").status, 2);
    EXPECT_EQ(run_cli("enumerate --kind twisted --depth 9", "", "QHP_MAX_DEPTH=6").status, 1);
}

TEST(Cli, EnumerateIsDeterministic) {
    const auto a = run_cli("enumerate --kind untwisted-c1 --depth 5 --seed 7 --limit 20", "");
    const auto b = run_cli("enumerate --kind untwisted-c1 --depth 5 --seed 7 --limit 20", "");
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 20);

    const auto e = run_cli("enumerate --kind affine --depth 4", "");
    ASSERT_EQ(e.status, 0);
    std::istringstream lines(e.out);
    std::string line, prev;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        const json j = json::parse(line);
        ASSERT_TRUE(j.contains("report") || j.contains("error"));
        const std::string key = j.at("key");
        EXPECT_LT(prev, key);
        prev = key;
        ++n;
    }
    EXPECT_EQ(n, enumerate_instances(RulingKind::Affine, 4).size());
}
