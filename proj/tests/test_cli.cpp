#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "cli/run.hpp"
#include "graphondyn/io.hpp"

namespace fs = std::filesystem;
using graphondyn::read_file;
using graphondyn::write_file;
namespace cli = graphondyn::cli;

namespace {

const fs::path kConfigs = GRAPHONDYN_CONFIG_DIR;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("graphondyn_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const fs::path& config, const fs::path& out) {
    log_.str("");
    err_.str("");
    return cli::run({config, out, std::nullopt}, log_, err_);
  }

  fs::path write_config(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    write_file(p, body);
    return p;
  }

  fs::path dir_;
  std::ostringstream log_;
  std::ostringstream err_;
};

}  // namespace

TEST_F(CliTest, TwistedSucceeds) {
  EXPECT_EQ(run(kConfigs / "twisted.json", dir_ / "out"), cli::kSuccess) << err_.str();
  const auto report = nlohmann::json::parse(read_file(dir_ / "out" / "report.json"));
  EXPECT_LE(report["residual"].get<double>(), 1e-12);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "state.csv"));
  const auto manifest = nlohmann::json::parse(read_file(dir_ / "out" / "manifest.json"));
  EXPECT_EQ(manifest["command"], "twisted");
  EXPECT_EQ(manifest["exit_code"], 0);
}

TEST_F(CliTest, GhostWritesSeries) {
  EXPECT_EQ(run(kConfigs / "ghost.json", dir_ / "out"), cli::kSuccess) << err_.str();
  const std::string series = read_file(dir_ / "out" / "series.csv");
  EXPECT_EQ(series.rfind("t,measured,bound\n", 0), 0u);
  const auto manifest = nlohmann::json::parse(read_file(dir_ / "out" / "manifest.json"));
  EXPECT_FALSE(manifest["seeds"].empty());
}

TEST_F(CliTest, MalformedConfigNamesField) {
  EXPECT_EQ(run(kConfigs / "malformed_missing_step.json", dir_ / "out"), cli::kUsageError);
  EXPECT_NE(err_.str().find("integration.step"), std::string::npos) << err_.str();
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  for (const char* name : {"ghost.json", "meanfield_blocks.json", "audit_torus.json", "norms.json"}) {
    ASSERT_EQ(run(kConfigs / name, dir_ / "a"), cli::kSuccess) << name << ": " << err_.str();
    ASSERT_EQ(run(kConfigs / name, dir_ / "b"), cli::kSuccess) << name;
    for (const auto& entry : fs::directory_iterator(dir_ / "a")) {
      const auto file = entry.path().filename();
      if (file == "manifest.json") continue;
      EXPECT_EQ(read_file(dir_ / "a" / file), read_file(dir_ / "b" / file)) << name << " " << file;
    }
    fs::remove_all(dir_ / "a");
    fs::remove_all(dir_ / "b");
  }
}

TEST_F(CliTest, ThreadCountDoesNotChangeResults) {
  ASSERT_EQ(cli::run({kConfigs / "simulate_ring.json", dir_ / "a", 1}, log_, err_), cli::kSuccess);
  ASSERT_EQ(cli::run({kConfigs / "simulate_ring.json", dir_ / "b", 3}, log_, err_), cli::kSuccess);
  EXPECT_EQ(read_file(dir_ / "a" / "trajectory.csv"), read_file(dir_ / "b" / "trajectory.csv"));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run(write_config("unknown.json", R"({"command": "dance"})"), dir_ / "out"), cli::kUsageError);
  EXPECT_EQ(run(write_config("broken.json", "{ not json"), dir_ / "out"), cli::kUsageError);
  EXPECT_EQ(run(dir_ / "missing.json", dir_ / "out"), cli::kUsageError);
  EXPECT_EQ(run(write_config("seven.json", R"({"command": "ghost", "n": 7, "p": 0.5, "seed": 1,
      "initial": {"type": "constant", "value": 0}, "map": {"type": "shift", "by": 1},
      "integration": {"t_end": 1, "step": 0.1}})"),
                dir_ / "out"),
            cli::kSuccess)
      << err_.str();
  EXPECT_EQ(run(write_config("bad_p.json", R"({"command": "ghost", "n": 8, "p": 3, "seed": 1,
      "initial": {"type": "constant", "value": 0},
      "integration": {"t_end": 1, "step": 0.1}})"),
                dir_ / "out"),
            cli::kUsageError);
}

TEST_F(CliTest, FailedAuditExitsOne) {
  // The half shift is not an automorphism of a two-block kernel with unequal blocks.
  const fs::path cfg = write_config("audit.json", R"({"command": "audit",
      "space": {"geometry": "interval", "n": 8},
      "kernel": {"type": "block", "boundaries": [0, 0.5, 1], "values": [[0.9, 0.1], [0.1, 0.3]]},
      "initial": {"type": "random", "seed": 2},
      "map": {"type": "shift", "by": 4},
      "integration": {"t_end": 1, "step": 0.01}})");
  EXPECT_EQ(run(cfg, dir_ / "out"), cli::kCheckFailed) << err_.str();
  const auto report = nlohmann::json::parse(read_file(dir_ / "out" / "report.json"));
  EXPECT_EQ(report["pass"], false);
}
