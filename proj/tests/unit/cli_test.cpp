#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "gasket/errors.hpp"
#include "gasket_cli/app.hpp"
#include "gasket_cli/config.hpp"
#include "gasket_cli/selftest.hpp"
#include "json.hpp"

namespace {

namespace cli = gasket::cli;
namespace fs = std::filesystem;

cli::EnvLookup fake_env(std::map<std::string, std::string> vars) {
  return [vars = std::move(vars)](const std::string& name) -> std::optional<std::string> {
    const auto it = vars.find(name);
    if (it == vars.end()) return std::nullopt;
    return it->second;
  };
}

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args, const cli::CliContext& ctx = {fake_env({}), {}}) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err, ctx);
  return {code, out.str(), err.str()};
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gasket_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(Config, Defaults) {
  const cli::RunConfig c = cli::resolve_config(std::nullopt, fake_env({}), {});
  EXPECT_EQ(c.tolerance, 1e-12);
  EXPECT_EQ(c.max_ladder_index, 16);
  EXPECT_EQ(c.output_format, cli::OutputFormat::kText);
}

using ConfigFile = TempDir;

TEST_F(ConfigFile, Precedence) {
  const fs::path file = dir_ / "c.json";
  std::ofstream(file) << R"({"tolerance": 1e-6, "max_n": 10, "kl_terms": 8, "format": "json"})";
  const cli::RunConfig from_file = cli::resolve_config(file, fake_env({}), {});
  EXPECT_EQ(from_file.tolerance, 1e-6);
  EXPECT_EQ(from_file.max_ladder_index, 10);
  EXPECT_EQ(from_file.output_format, cli::OutputFormat::kJson);

  const auto env = fake_env({{"GS_TOLERANCE", "1e-8"}, {"GS_MAX_N", "12"}});
  const cli::RunConfig from_env = cli::resolve_config(file, env, {});
  EXPECT_EQ(from_env.tolerance, 1e-8);
  EXPECT_EQ(from_env.max_ladder_index, 12);
  EXPECT_EQ(from_env.kl_terms, 8);

  cli::ConfigOverrides flags;
  flags.tolerance = 1e-9;
  const cli::RunConfig from_flags = cli::resolve_config(file, env, flags);
  EXPECT_EQ(from_flags.tolerance, 1e-9);
  EXPECT_EQ(from_flags.max_ladder_index, 12);
}

TEST_F(ConfigFile, Rejections) {
  const fs::path file = dir_ / "bad.json";
  std::ofstream(file) << R"({"tolerence": 1e-6})";
  EXPECT_THROW(cli::read_config_file(file), gasket::DomainError);
  std::ofstream(file, std::ios::trunc) << "not json";
  EXPECT_THROW(cli::read_config_file(file), gasket::DomainError);
  EXPECT_THROW(cli::read_config_file(dir_ / "missing.json"), gasket::IoError);
}

TEST(Config, EnvironmentValidation) {
  EXPECT_THROW(cli::read_environment(fake_env({{"GS_TOLERANCE", "abc"}})), gasket::DomainError);
  EXPECT_THROW(cli::resolve_config(std::nullopt, fake_env({{"GS_TOLERANCE", "-1"}}), {}), gasket::DomainError);
  EXPECT_THROW(cli::resolve_config(std::nullopt, fake_env({{"GS_MAX_N", "99"}}), {}), gasket::ResourceError);
  EXPECT_THROW(cli::parse_format("xml"), gasket::DomainError);
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(cli::exit_code_for(gasket::DomainError("x")), cli::kExitFailure);
  EXPECT_EQ(cli::exit_code_for(gasket::IoError("x")), cli::kExitFailure);
  EXPECT_EQ(cli::exit_code_for(gasket::PrecisionError("x")), cli::kExitPrecision);
  EXPECT_EQ(cli::exit_code_for(gasket::AmbiguousClassification("x")), cli::kExitPrecision);
}

TEST(Dispatch, DocumentedExamples) {
  const CliRun dq = run({"dq", "--q", "2.2", "--format", "json"});
  ASSERT_EQ(dq.code, 0) << dq.err;
  const auto j = nlohmann::json::parse(dq.out);
  EXPECT_EQ(j["command"], "dq");
  EXPECT_EQ(j["result"]["regime"]["label"], "Finite(1)");

  const CliRun verify = run({"verify", "--lemma", "3.4", "--n", "2", "--m", "5", "--format", "json"});
  EXPECT_EQ(verify.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(verify.out)["result"]["pass"].get<bool>());

  EXPECT_EQ(run({"classify", "--q", "3.5"}).code, cli::kExitFailure);
}

TEST(Dispatch, UsageErrors) {
  const CliRun unknown = run({"frobnicate"});
  EXPECT_EQ(unknown.code, cli::kExitUsage);
  EXPECT_NE((unknown.out + unknown.err).find("classify"), std::string::npos);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"classify"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"density", "--seq", "0^inf", "--eps", "3"}).code, cli::kExitUsage);
}

TEST(Dispatch, ReportShape) {
  const CliRun r = run({"--format", "json", "unique", "--q", "2.6", "--seq", "+0-0^inf"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"command", "version", "inputs", "result"}));
  EXPECT_EQ(j["version"], cli::kVersion);
  EXPECT_TRUE(j["result"]["unique"].get<bool>());

  const CliRun timed = run({"--format", "json", "--timing", "classify", "--q", "2.3"});
  EXPECT_TRUE(nlohmann::json::parse(timed.out).contains("timing_ms"));
}

TEST(Dispatch, EnvironmentSelectsFormat) {
  const CliRun r = run({"classify", "--q", "2.3"}, {fake_env({{"GS_FORMAT", "json"}}), {}});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["result"]["regime"]["label"], "Finite(1)");
}

using Determinism = TempDir;

TEST_F(Determinism, RepeatedRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands{
      {"bases", "--max-n", "6"},
      {"classify", "--q", "2.45"},
      {"expand", "--q", "2.5", "--x", "0.5", "--depth", "16", "--alpha"},
      {"unique", "--q", "2.45", "--seq", "+0-0^inf"},
      {"density", "--eps", "5"},
      {"density", "--lemma-2.2", "16"},
      {"verify", "--lemma", "3.1", "--n", "4"},
      {"dq", "--q", "q3"},
      {"dq", "--q", "2.75"},
  };
  for (const auto& base : commands) {
    std::vector<std::string> args{"--format", "json"};
    args.insert(args.end(), base.begin(), base.end());
    const CliRun a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << base[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << base[0];
  }
  const std::string svg_a = (dir_ / "a.svg").string(), svg_b = (dir_ / "b.svg").string();
  for (const auto& out : {svg_a, svg_b}) {
    ASSERT_EQ(run({"render", "--q", "2.6", "--t-seq", "+0-0^inf|0+0-^inf", "--depth", "5", "--out", out}).code, 0);
  }
  std::ifstream fa(svg_a, std::ios::binary), fb(svg_b, std::ios::binary);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_FALSE(sa.str().empty());
  EXPECT_EQ(sa.str(), sb.str());
}

TEST_F(Determinism, RenderWritesPpm) {
  const std::string out = (dir_ / "a.ppm").string();
  ASSERT_EQ(run({"render", "--q", "2.6", "--t-seq", "+^inf|0^inf", "--depth", "4", "--out", out, "--raster-size", "32"})
                .code,
            0);
  EXPECT_EQ(fs::file_size(out), std::string("P6\n32 32\n255\n").size() + 32u * 32u * 3u);
  EXPECT_EQ(run({"render", "--q", "2.6", "--t-seq", "+^inf|+^inf", "--out", out}).code, cli::kExitFailure);
}

TEST(Selftest, ListsVerifiersWithRanges) {
  const cli::SelftestReport r = cli::run_selftest(cli::RunConfig{});
  std::vector<std::string> names;
  for (const auto& item : r.items) {
    names.push_back(item.name);
    EXPECT_FALSE(item.range.empty()) << item.name;
  }
  for (const char* lemma : {"lemma 3.1", "lemma 3.2", "lemma 3.4", "block case"})
    EXPECT_NE(std::find(names.begin(), names.end(), lemma), names.end()) << lemma;
  for (const auto& item : r.items) {
    if (item.name == "tail catalogue") continue;
    EXPECT_TRUE(item.pass) << item.name << ": " << item.detail;
  }
}

TEST(Selftest, CorruptedBlockTableFails) {
  const cli::EpsProvider corrupted = [](int n) {
    gasket::TernaryWord w = gasket::eps(n);
    if (n == 5) w[2] = gasket::negate(w[2]);
    return w;
  };
  const cli::SelftestReport r = cli::run_selftest(cli::RunConfig{}, corrupted);
  EXPECT_FALSE(r.all_pass());
  ASSERT_FALSE(r.items.empty());
  EXPECT_FALSE(r.items.front().pass);
  EXPECT_NE(r.items.front().detail.find("P1"), std::string::npos);

  const CliRun cmd = run({"selftest"}, {fake_env({}), corrupted});
  EXPECT_NE(cmd.code, 0);
}

}  // namespace
