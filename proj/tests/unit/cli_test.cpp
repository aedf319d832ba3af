#include "cli.hpp"

#include <normfsi/automaton_json.hpp>
#include <normfsi/builtins.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = normfsi::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string golden(const std::string& name) { return slurp(std::filesystem::path(NORMFSI_TEST_GOLDEN) / name); }

std::string fixture(const std::string& name) {
  return (std::filesystem::path(NORMFSI_TEST_DATA) / (name + ".json")).string();
}

struct GoldenCase {
  const char* file;
  std::vector<std::string> args;
};

class Golden : public ::testing::TestWithParam<GoldenCase> {};

}  // namespace

TEST_P(Golden, MatchesRecordedOutput) {
  const auto& c = GetParam();
  const Result r = call(c.args);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden(c.file));
}

INSTANTIATE_TEST_SUITE_P(
    Cli, Golden,
    ::testing::Values(
        GoldenCase{"stationary_fig3.txt", {"stationary", "--builtin", "fig3"}},
        GoldenCase{"stationary_fig5.txt", {"stationary", "--builtin", "fig5"}},
        GoldenCase{"shuffle_fig7.txt",
                   {"shuffle", "--builtin", "fig7-shuffler", "--x", "explicit:0011010001", "--y",
                    "explicit:01000110001", "--n", "18"}},
        GoldenCase{"split_fig7.txt",
                   {"split", "--builtin", "fig7-shuffler", "--z", "explicit:001011000101100010", "--n", "18"}},
        GoldenCase{"construct_zero.txt", {"construct-pair", "--mode", "relaxed", "--steps", "0"}},
        GoldenCase{"construct_relaxed8.txt", {"construct-pair", "--mode", "relaxed", "--steps", "8", "--emit", "json"}},
        GoldenCase{"generate_champernowne10.txt", {"generate", "--stream", "champernowne:10", "--n", "20"}},
        GoldenCase{"select_fig6.txt",
                   {"select", "--builtin", "fig6-selector", "--x", "explicit:0110100110010110", "--y", "periodic:10",
                    "--steps", "32"}},
        GoldenCase{"enumerate_first3.txt", {"enumerate-shufflers", "--base", "2", "--from", "1", "--count", "3"}},
        GoldenCase{"block_product_fig3.txt",
                   {"block-product", "--builtin", "fig3", "--k", "1", "--l", "1", "--stationary"}},
        GoldenCase{"stats_periodic.csv",
                   {"normality-stats", "--stream", "periodic:01", "--n", "10000", "--max-ell", "2", "--format",
                    "csv"}},
        GoldenCase{"bounds_n0.txt", {"bounds", "--kind", "n0", "--base", "2"}}));

TEST(Cli, KeyValues) {
  EXPECT_EQ(call({"stationary", "--builtin", "fig3"}).out, "{\"q0\":\"2/3\",\"q1\":\"1/3\"}\n");
  EXPECT_EQ(call({"shuffle", "--builtin", "fig7-shuffler", "--x", "explicit:0011010001", "--y",
                  "explicit:01000110001", "--n", "18"})
                .out,
            "001011000101100010\n");
  EXPECT_EQ(call({"construct-pair", "--mode", "relaxed", "--steps", "0"}).out, "0 ε ε\n");
}

TEST(Cli, FixturesMatchBuiltins) {
  for (const char* name : {"fig2-join", "fig2-shuffle", "fig3", "fig5", "fig6-selector", "fig7-shuffler"}) {
    EXPECT_EQ(normfsi::load_automaton(fixture(name)), normfsi::builtin(name)) << name;
  }
}

TEST(Cli, FixtureTables) {
  const auto fig7 = normfsi::load_automaton(fixture("fig7-shuffler"));
  ASSERT_EQ(fig7.state_count(), 2U);
  using L = normfsi::Label;
  const std::optional<normfsi::Symbol> e;
  const std::vector<normfsi::Transition> expected{
      {0, L{0, e, 0}, 0}, {0, L{1, e, 1}, 1}, {1, L{e, 1, 1}, 0}, {1, L{e, 0, 0}, 1}};
  EXPECT_EQ(fig7.transitions(), expected);
  const auto fig3 = normfsi::load_automaton(fixture("fig3"));
  EXPECT_EQ(fig3.transitions(),
            (std::vector<normfsi::Transition>{{0, L{0, e}, 0}, {0, L{1, e}, 1}, {1, L{e, 0}, 0}, {1, L{e, 1}, 0}}));
}

TEST(Cli, AutomatonFileSource) {
  const Result r = call({"validate", "--automaton", fixture("fig7-shuffler"), "--kind", "shuffler"});
  EXPECT_EQ(r.code, 0);
  const Result s = call({"stationary", "--automaton", fixture("fig5")});
  EXPECT_EQ(s.out, golden("stationary_fig5.txt"));
}

TEST(Cli, ValidationFailureExitsThree) {
  const Result r = call({"validate", "--builtin", "fig4", "--kind", "deterministic", "--l", "2"});
  EXPECT_EQ(r.code, 3);
  const auto doc = nlohmann::json::parse(r.err.empty() ? r.out : r.err);
  EXPECT_FALSE(doc.at("ok").get<bool>());
  EXPECT_EQ(doc["violations"][0]["kind"], "support");
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"no-such-command"}).code, 1);
  EXPECT_EQ(call({"shuffle", "--builtin", "fig7-shuffler"}).code, 1);
  EXPECT_EQ(call({"generate", "--stream", "bogus:1", "--n", "3"}).code, 1);
}

TEST(Cli, PaperModeRefusesWithBudgetCode) {
  const Result r = call({"construct-pair", "--mode", "paper"});
  EXPECT_EQ(r.code, 2);
  const auto last = r.err.substr(r.err.rfind('{'));
  const auto doc = nlohmann::json::parse(last);
  EXPECT_EQ(doc.at("error"), "budget");
  EXPECT_EQ(doc.at("n0"), 2);
  EXPECT_EQ(doc.at("step"), 1);
  EXPECT_EQ(doc.at("required"), "17179869184");
}

TEST(Cli, CheckpointResume) {
  const auto dir = std::filesystem::temp_directory_path() / "normfsi_cli_test";
  std::filesystem::create_directories(dir);
  const auto ck = (dir / "ck.json").string();
  std::filesystem::remove(ck);
  const Result first =
      call({"construct-pair", "--mode", "relaxed", "--steps", "4", "--checkpoint", ck, "--emit", "json"});
  ASSERT_EQ(first.code, 0) << first.err;
  const Result rest = call({"construct-pair", "--mode", "relaxed", "--steps", "4", "--checkpoint", ck, "--resume",
                            "--emit", "json"});
  ASSERT_EQ(rest.code, 0) << rest.err;
  const std::string all = golden("construct_relaxed8.txt");
  // resumed output continues where the first run stopped
  EXPECT_NE(rest.out.find("\"step\":8"), std::string::npos);
  EXPECT_NE(all.find(rest.out.substr(rest.out.find("{\"measure\""))), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cli, MeasureParams) {
  const Result r = call({"measure", "--params", R"({"schedule":{},"g":3,"cylinder":{"u":"01","v":"0"}})"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("measure"), "7/64");
  const Result refused =
      call({"measure", "--budget", "10", "--params", R"({"schedule":{},"g":3,"cylinder":{"u":"01","v":"0"}})"});
  EXPECT_EQ(refused.code, 2);
}

TEST(Cli, EmittedAutomataReload) {
  const Result r = call({"enumerate-shufflers", "--base", "2", "--from", "60", "--count", "10"});
  ASSERT_EQ(r.code, 0);
  for (const auto& item : nlohmann::json::parse(r.out)) {
    const auto a = normfsi::automaton_from_json(item.at("automaton"));
    EXPECT_EQ(normfsi::to_json(a), item.at("automaton"));
  }
}
