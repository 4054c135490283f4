#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "relaynet/cli.hpp"
#include "relaynet/evaluate.hpp"
#include "relaynet/netlist.hpp"

using namespace relaynet;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("relaynet_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string write(const std::string &name, const std::string &text) {
        const auto path = dir_ / name;
        std::ofstream(path) << text;
        return path.string();
    }

    std::filesystem::path dir_;
};

// (((1/2 + 1/2) * 1/2) + 1/2) over two states.
const char *kChain = R"({"states": 2, "circuit": {"op": "parallel", "children": [
  {"op": "series", "children": [
    {"op": "parallel", "children": [
      {"op": "pswitch", "dist": ["1/2", "1/2"], "id": "a"},
      {"op": "pswitch", "dist": ["1/2", "1/2"], "id": "b"}]},
    {"op": "pswitch", "dist": ["1/2", "1/2"], "id": "c"}]},
  {"op": "pswitch", "dist": ["1/2", "1/2"], "id": "d"}]}})";

}  // namespace

TEST_F(CliTest, eval_chain) {
    const auto path = write("chain.json", kChain);
    const auto r = run({"eval", "--netlist", path});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(Json::parse(r.out).dump(), R"(["5/16","11/16"])");
    const auto o = run({"oracle-eval", "--netlist", path});
    EXPECT_EQ(o.out, r.out);
}

TEST_F(CliTest, eval_with_inputs) {
    const auto path = write("in.json", R"({"states": 3, "circuit": {"op": "series", "children": [
        {"op": "input", "name": "r0", "complemented": true},
        {"op": "pswitch", "dist": ["1/2", "0", "1/2"], "id": "p"}]}})");
    EXPECT_EQ(Json::parse(run({"eval", "--netlist", path, "--assign", "r0=0"}).out).dump(), R"(["1/2","0","1/2"])");
    EXPECT_EQ(Json::parse(run({"eval", "--netlist", path, "--assign", "r0=2"}).out).dump(), R"(["1","0","0"])");
    EXPECT_EQ(run({"eval", "--netlist", path}).code, 2);
    EXPECT_EQ(run({"eval", "--netlist", path, "--assign", "r0"}).code, 2);
    EXPECT_EQ(run({"eval", "--netlist", path, "--assign", "r0=7"}).code, 2);
}

TEST_F(CliTest, synth_binary_within_bound) {
    const auto r = run({"synth", "--target", "5/8,1/4,1/8", "--method", "binary"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_LE(j["pswitch_count"].get<int>(), 5);
    EXPECT_EQ(j["bound"].get<int>(), 5);
    const Circuit c = netlist_from_json(j["netlist"]);
    EXPECT_EQ(eval(c), Distribution::parse("5/8,1/4,1/8"));
}

TEST_F(CliTest, synth_other_methods) {
    for (const char *method : {"state_reduction", "denominator", "composite"}) {
        const auto r = run({"synth", "--target", "1/6,1/2,1/3", "--method", method});
        ASSERT_EQ(r.code, 0) << method << ": " << r.err;
        const Json j = Json::parse(r.out);
        EXPECT_EQ(j["q"].get<int>(), 6) << method;
        EXPECT_EQ(eval(netlist_from_json(j["netlist"])), Distribution::parse("1/6,1/2,1/3")) << method;
    }
    EXPECT_EQ(run({"synth", "--target", "1/3,2/3", "--method", "binary"}).code, 2);
    EXPECT_EQ(run({"synth", "--target", "1/3,2/3", "--method", "magic"}).code, 2);
    EXPECT_EQ(run({"synth", "--target", "1/2,1/3"}).code, 2);
}

TEST_F(CliTest, bound) {
    const auto r = run({"bound", "--n", "4", "--states", "9"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "15\n");
    EXPECT_EQ(run({"bound", "--n", "10", "--states", "2"}).out, "10\n");
    EXPECT_EQ(run({"bound", "--n", "2", "--states", "3", "--kind", "denominator", "--q", "3"}).out, "6\n");
    EXPECT_EQ(run({"bound", "--n", "2", "--states", "1"}).code, 2);
}

TEST_F(CliTest, dual_and_render) {
    const auto path = write("chain.json", kChain);
    const auto d = run({"dual", "--netlist", path});
    ASSERT_EQ(d.code, 0) << d.err;
    const auto dual_path = write("dual.json", d.out);
    EXPECT_EQ(Json::parse(run({"eval", "--netlist", dual_path}).out).dump(), R"(["11/16","5/16"])");
    EXPECT_EQ(run({"render", "--netlist", path}).out, "(((1/2 + 1/2) * 1/2) + 1/2)\n");
    const auto dot = run({"render", "--netlist", path, "--format", "dot"});
    EXPECT_EQ(dot.code, 0);
    EXPECT_EQ(dot.out.rfind("graph circuit {", 0), 0u);
}

TEST_F(CliTest, robustness) {
    const auto synth = Json::parse(run({"synth", "--target", "5/8,1/4,1/8"}).out);
    const auto path = write("n.json", synth["netlist"].dump());
    const auto r = run({"robustness", "--netlist", path, "--epsilon", "1/100", "--family", "binary"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_TRUE(j["bounds_hold"].get<bool>());
    EXPECT_EQ(j["per_state_max_error"].size(), 3u);

    const std::vector<std::string> sampled{"robustness", "--netlist", path,     "--epsilon", "1/100",
                                           "--mode",     "sample",  "--trials", "40",        "--seed",
                                           "9"};
    const auto a = run(sampled);
    const auto b = run(sampled);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(Json::parse(a.out)["exhaustive"].get<bool>());

    EXPECT_EQ(run({"robustness", "--netlist", path, "--epsilon", "1/100", "--corner-cap", "2"}).code, 3);
    EXPECT_EQ(run({"robustness", "--netlist", path, "--epsilon", "abc"}).code, 2);
    EXPECT_EQ(run({"robustness", "--netlist", path, "--epsilon", "1/100", "--family", "denom:x"}).code, 2);
}

TEST_F(CliTest, upg) {
    const auto row = run({"upg", "--states", "2", "--bits", "3", "--construction", "reduced_sp", "--target", "5/8,3/8"});
    ASSERT_EQ(row.code, 0) << row.err;
    EXPECT_EQ(Json::parse(row.out).dump(), R"({"inputs":{"r":"0101"},"output":["5/8","3/8"]})");

    const auto table = run({"upg", "--states", "3", "--bits", "2", "--construction", "reduced_nonsp", "--truth-table"});
    ASSERT_EQ(table.code, 0) << table.err;
    const Json rows = Json::parse(table.out);
    EXPECT_EQ(rows.size(), 15u);
    for (const auto &r : rows) {
        EXPECT_EQ(r["output"], r["expected"]);
    }

    const auto netlist = run({"upg", "--states", "2", "--bits", "2", "--construction", "bit_removed_sp"});
    const Circuit c = parse_netlist(netlist.out);
    EXPECT_EQ(eval(c, {{"r0", 0}, {"r2", 1}, {"r1", 1}}), Distribution::parse("3/4,1/4"));

    EXPECT_EQ(run({"upg", "--states", "2", "--bits", "3", "--target", "1/3,2/3"}).code, 2);
    EXPECT_EQ(run({"upg", "--states", "3", "--bits", "3", "--target", "1/2,1/2"}).code, 2);
    EXPECT_EQ(run({"upg", "--states", "2", "--bits", "3", "--construction", "nope"}).code, 2);
}

TEST_F(CliTest, lattice_search) {
    const auto r = run({"lattice-search", "--lattice", "diamond", "--target", "0,1/2,1/2,0", "--switchset",
                        "1/4,1/4,1/4,1/4", "--max-switches", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_FALSE(j["realizable"].get<bool>());
    EXPECT_NE(j["message"].get<std::string>().find("not realizable within explored space"), std::string::npos);

    const auto lattice = write("diamond.json", R"({"elements": ["00","01","10","11"],
        "leq": [["00","01"],["00","10"],["01","11"],["10","11"]]})");
    const auto switches = write("set.json", R"({"switches": [["1/4","1/4","1/4","1/4"]], "deterministic": true})");
    const auto f = run({"lattice-search", "--lattice", lattice, "--target", "0,1/2,1/2,0", "--switchset", switches,
                        "--max-switches", "4"});
    EXPECT_EQ(f.out, r.out);

    const auto found = run({"lattice-search", "--lattice", "chain:2", "--target", "1/4,3/4", "--switchset", "1/2,1/2",
                            "--max-switches", "2"});
    EXPECT_TRUE(Json::parse(found.out)["realizable"].get<bool>());

    const auto bad = write("bad.json", R"({"elements": ["a","b","c"], "leq": [["a","b"],["a","c"]]})");
    EXPECT_EQ(run({"lattice-search", "--lattice", bad, "--target", "1,0,0", "--switchset", "1,0,0"}).code, 2);
    EXPECT_EQ(run({"lattice-search", "--lattice", "diamond", "--target", "0,1/2,1/2,0", "--switchset",
                   "1/4,1/4,1/4,1/4", "--max-switches", "6", "--cap", "50"})
                  .code,
              3);
}

TEST_F(CliTest, usage_errors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"eval"}).code, 2);
    EXPECT_EQ(run({"eval", "--netlist", (dir_ / "missing.json").string()}).code, 2);
    EXPECT_EQ(run({"eval", "--netlist", write("bad.json", "{\"states\": 2}")}).code, 2);
    const auto help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("synth"), std::string::npos);
}

TEST_F(CliTest, outputs_are_byte_identical_across_runs) {
    const std::vector<std::string> args{"synth", "--target", "3/16,5/16,1/2", "--method", "binary"};
    EXPECT_EQ(run(args).out, run(args).out);
    const auto first = run({"synth", "--target", "3/16,5/16,1/2"});
    const auto path = write("n.json", Json::parse(first.out)["netlist"].dump(2));
    const auto again = Json::parse(first.out)["netlist"].dump(2);
    EXPECT_EQ(dump_netlist(parse_netlist(again)), again);
    EXPECT_EQ(run({"render", "--netlist", path}).out, run({"render", "--netlist", path}).out);
}
