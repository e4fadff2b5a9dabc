#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

const fs::path kWork = CLI_WORKDIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

// Runs the CLI with `args`; `env` is prepended to the command line.
Result run(const std::string& args, const std::string& env = "") {
  fs::create_directories(kWork);
  const fs::path err = kWork / "stderr.txt";
  const std::string cmd = env + " \"" SCENESEM_CLI "\" " + args + " 2>\"" + err.string() + "\"";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = kWork / ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  std::string out() const { return "--out " + q(dir); }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 64);
  EXPECT_EQ(run("frobnicate").code, 64);
  EXPECT_EQ(run("navcheck --plan x").code, 64);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, MalformedFrameIsParseErrorCitingLine) {
  spit(dir / "bad.jsonl", "{\"t\":0}\n{\"t\":0.1,\"persons\":[{\"id\":\"p1\",\"joints\":{\"hand_left\":[1,2]}}]}\n");
  const auto r = run(out() + " recognize " + q(dir / "bad.jsonl"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("hand_left"), std::string::npos) << r.err;
}

TEST_F(Cli, BadConfigExitsThree) {
  spit(dir / "cfg.json", R"({"patterns":{"no_such_key":1}})");
  spit(dir / "s.jsonl", "");
  const auto r = run("--config " + q(dir / "cfg.json") + " " + out() + " recognize " + q(dir / "s.jsonl"));
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("no_such_key"), std::string::npos) << r.err;
}

TEST_F(Cli, EmptySceneGivesEmptyEvents) {
  spit(dir / "empty.jsonl", "");
  const auto r = run(out() + " recognize " + q(dir / "empty.jsonl"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "events.json"));
  EXPECT_TRUE(j.at("events").empty());
  EXPECT_TRUE(j.contains("config"));
}

TEST_F(Cli, EventsFileIsStableUnderReserialization) {
  ASSERT_EQ(run(out() + " synth sandwich").code, 0);
  const auto r = run(out() + " --format json recognize " + q(dir / "sandwich.jsonl"));
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = slurp(dir / "events.json");
  EXPECT_EQ(nlohmann::ordered_json::parse(text).dump(2) + "\n", text);
  EXPECT_EQ(r.out, text);
  const auto j = nlohmann::json::parse(text);
  ASSERT_EQ(j.at("events").size(), 3u);
  EXPECT_EQ(j.at("events")[0].at("name"), "reach_for");
  EXPECT_EQ(run("validate " + q(dir / "events.json")).out, "OK\n");
}

TEST_F(Cli, OnlyFiltersReportedEvents) {
  ASSERT_EQ(run(out() + " synth sandwich").code, 0);
  ASSERT_EQ(run(out() + " recognize --only pick_up " + q(dir / "sandwich.jsonl")).code, 0);
  const auto j = nlohmann::json::parse(slurp(dir / "events.json"));
  ASSERT_EQ(j.at("events").size(), 1u);
  EXPECT_EQ(j.at("events")[0].at("name"), "pick_up");
  EXPECT_EQ(run(out() + " recognize --only fly " + q(dir / "sandwich.jsonl")).code, 3);
}

TEST_F(Cli, ValidateReportsViolations) {
  spit(dir / "ok.jsonl", "{\"t\":0}\n{\"t\":1}\n");
  spit(dir / "bad.jsonl", "{\"t\":1}\n{\"t\":0}\n{\"t\":2,\"nope\":0}\n");
  const auto ok = run("validate " + q(dir / "ok.jsonl"));
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "OK\n");
  const auto bad = run("validate " + q(dir / "bad.jsonl"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("line 2"), std::string::npos) << bad.out;
  EXPECT_NE(bad.out.find("line 3"), std::string::npos) << bad.out;

  spit(dir / "cfg.json", R"({"floorplan":{"min_dim":-1}})");
  EXPECT_EQ(run("validate " + q(dir / "cfg.json")).code, 1);
  spit(dir / "path.json", "[[0,0]]");
  EXPECT_EQ(run("validate " + q(dir / "path.json")).code, 1);
  EXPECT_EQ(run("validate " + q(dir / "missing.jsonl")).code, 2);
}

TEST_F(Cli, NavcheckExitCodes) {
  for (auto [kind, code] : {std::pair{"empty", 0}, {"same_direction", 0}, {"opposing", 1}, {"loitering", 1}}) {
    const fs::path d = dir / kind;
    ASSERT_EQ(run("--out " + q(d) + " synth corridor-" + kind).code, 0);
    const auto r = run("--out " + q(d) + " navcheck --plan " + q(d / "plan.json") + " --scene " +
                       q(d / ("corridor-" + std::string(kind) + ".jsonl")) + " --path " + q(d / "path.json") +
                       " --t 6");
    EXPECT_EQ(r.code, code) << kind << r.err;
    const auto j = nlohmann::json::parse(slurp(d / "verdicts.json"));
    EXPECT_TRUE(j.contains("config"));
    EXPECT_EQ(j.at("all_possible"), code == 0);
    if (code) EXPECT_NE(r.out.find("ped1"), std::string::npos) << r.out;
  }
}

TEST_F(Cli, NavcheckWithEmptyPlanHasNothingToCheck) {
  ASSERT_EQ(run(out() + " synth corridor-empty").code, 0);
  spit(dir / "plan.json", R"({"structures":[],"adjacency":[],"warnings":[]})");
  const auto r = run(out() + " navcheck --plan " + q(dir / "plan.json") + " --scene " +
                     q(dir / "corridor-empty.jsonl") + " --path " + q(dir / "path.json") + " --t 6");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(slurp(dir / "verdicts.json")).at("verdicts").empty());
}

TEST_F(Cli, FloorplanOnNoiseWarnsAndSucceeds) {
  std::string cloud;
  std::uint64_t s = 12345;
  for (int i = 0; i < 3000; ++i) {
    auto next = [&] {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      return static_cast<double>(s >> 11) / 9007199254740992.0 * 4.0;
    };
    const double x = next(), y = next(), z = next();
    cloud += std::to_string(x) + " " + std::to_string(y) + " " + std::to_string(z) + "\n";
  }
  spit(dir / "noise.xyz", cloud);
  const auto r = run(out() + " floorplan " + q(dir / "noise.xyz"));
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "plan.json"));
  EXPECT_TRUE(j.at("structures").empty());
  ASSERT_FALSE(j.at("warnings").empty());
  EXPECT_EQ(j.at("warnings")[0].get<std::string>().rfind("NoRoomsFound", 0), 0u);
  EXPECT_TRUE(j.contains("config"));
}

TEST_F(Cli, FloorplanBadCloudIsParseError) {
  spit(dir / "bad.xyz", "1 2 3\n4 5\n");
  const auto r = run(out() + " floorplan " + q(dir / "bad.xyz"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(Cli, ConfigFromEnvironmentIsEchoed) {
  spit(dir / "cfg.json", R"({"patterns":{"d_touch":0.0625}})");
  spit(dir / "empty.jsonl", "");
  const auto r = run(out() + " recognize " + q(dir / "empty.jsonl"), "SCENESEM_CONFIG=" + q(dir / "cfg.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "events.json"));
  EXPECT_DOUBLE_EQ(j.at("config").at("patterns").at("d_touch").get<double>(), 0.0625);

  spit(dir / "broken.json", "{");
  EXPECT_EQ(run(out() + " recognize " + q(dir / "empty.jsonl"), "SCENESEM_CONFIG=" + q(dir / "broken.json")).code, 3);
}
