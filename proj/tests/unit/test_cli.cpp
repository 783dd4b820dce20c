#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include <json.hpp>

#include "ctxgen/cli.hpp"
#include "support/test_support.hpp"

using namespace ctxgen;
using namespace ctxgen::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

EnvLookup env_of(std::map<std::string, std::string> vars) {
  return [vars = std::move(vars)](const std::string& name) -> std::optional<std::string> {
    if (auto it = vars.find(name); it != vars.end()) return it->second;
    return std::nullopt;
  };
}

const EnvLookup kNoEnv = env_of({});

RunOptions run_on(const fs::path& input, const fs::path& output) {
  RunOptions o;
  o.input_dir = input;
  o.output = output;
  return o;
}

}  // namespace

TEST(CliRun, GoldenManifestIsFrozen) {
  const auto out = testsupport::scratch_dir("cli_run") / "manifest.json";
  std::ostringstream err;
  ASSERT_EQ(cmd_run(run_on(testsupport::fixture("golden"), out), err, kNoEnv), kExitOk) << err.str();
  EXPECT_EQ(testsupport::slurp(out), testsupport::slurp(testsupport::fixture("expected/golden_manifest.json")));
}

TEST(CliRun, ParallelJobsGiveSameBytes) {
  const auto dir = testsupport::scratch_dir("cli_jobs");
  const auto input = dir / "in";
  fs::create_directories(input);
  for (const char* rel : {"golden/office_speaker.json", "halts/empty_street.json", "halts/kitchen_objects.json"}) {
    fs::copy(testsupport::fixture(rel), input / fs::path(rel).filename());
  }
  std::ostringstream err;
  auto serial = run_on(input, dir / "serial.json");
  auto parallel = run_on(input, dir / "parallel.json");
  parallel.jobs = 3;
  ASSERT_EQ(cmd_run(serial, err, kNoEnv), kExitOk) << err.str();
  ASSERT_EQ(cmd_run(parallel, err, kNoEnv), kExitOk) << err.str();
  EXPECT_EQ(testsupport::slurp(dir / "serial.json"), testsupport::slurp(dir / "parallel.json"));

  const auto rows = json::parse(testsupport::slurp(dir / "serial.json")).at("rows");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].at("status"), "no_person");
  EXPECT_EQ(rows[1].at("status"), "no_content");
  EXPECT_EQ(rows[2].at("status"), "ok");
}

TEST(CliRun, CorruptInputIsPartialFailure) {
  const auto out = testsupport::scratch_dir("cli_corrupt") / "m.json";
  std::ostringstream err;
  EXPECT_EQ(cmd_run(run_on(testsupport::fixture("corrupt"), out), err, kNoEnv), kExitPartial);
  const auto rows = json::parse(testsupport::slurp(out)).at("rows");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].at("status"), "error");
  EXPECT_TRUE(rows[0].contains("error"));
  EXPECT_NE(err.str().find("broken"), std::string::npos);
}

TEST(CliRun, SetupErrorsAreUsageErrors) {
  const auto dir = testsupport::scratch_dir("cli_setup");
  std::ostringstream err;
  EXPECT_EQ(cmd_run(run_on(testsupport::fixture("missing_dir"), dir / "m.json"), err, kNoEnv), kExitUsage);

  auto bad_resource = run_on(testsupport::fixture("golden"), dir / "m.json");
  bad_resource.overrides = {"embeddings=" + (dir / "absent.txt").string()};
  EXPECT_EQ(cmd_run(bad_resource, err, kNoEnv), kExitUsage);

  auto bad_value = run_on(testsupport::fixture("golden"), dir / "m.json");
  bad_value.overrides = {"alpha=3"};
  EXPECT_EQ(cmd_run(bad_value, err, kNoEnv), kExitUsage);

  auto bad_backend = run_on(testsupport::fixture("golden"), dir / "m.json");
  bad_backend.backend = "telepathy";
  EXPECT_EQ(cmd_run(bad_backend, err, kNoEnv), kExitUsage);
  EXPECT_FALSE(fs::exists(dir / "m.json"));
}

TEST(CliRun, EnvironmentOverridesFlagsAndFile) {
  const auto dir = testsupport::scratch_dir("cli_env");
  testsupport::write_file(dir / "config.json", R"({"alpha": 0.8, "beta": 0.4})");
  auto opts = run_on(testsupport::fixture("golden"), dir / "m.json");
  opts.config_path = dir / "config.json";
  opts.overrides = {"beta=0.45"};
  opts.backend = "http:127.0.0.1:9";
  std::ostringstream err;
  ASSERT_EQ(cmd_run(opts, err, env_of({{"CTXGEN_ALPHA", "0.75"}, {"CTXGEN_BACKEND", "fallback"}})), kExitOk)
      << err.str();
  const auto m = json::parse(testsupport::slurp(dir / "m.json"));
  EXPECT_EQ(m.at("backend"), "fallback");
  EXPECT_EQ(m.at("config").at("alpha"), 0.75);
  EXPECT_EQ(m.at("config").at("beta"), 0.45);
}

TEST(CliRun, TimingsOnlyWhenAsked) {
  const auto dir = testsupport::scratch_dir("cli_timings");
  auto opts = run_on(testsupport::fixture("golden"), dir / "m.json");
  opts.timings = true;
  std::ostringstream err;
  ASSERT_EQ(cmd_run(opts, err, kNoEnv), kExitOk);
  EXPECT_TRUE(json::parse(testsupport::slurp(dir / "m.json")).at("rows")[0].contains("timings"));
}

TEST(CliEval, ScoresFixtureMethods) {
  const auto dir = testsupport::scratch_dir("cli_eval");
  EvalOptions o;
  o.candidates = testsupport::fixture("eval/candidates.json");
  o.references = testsupport::fixture("eval/references.json");
  o.output = dir / "eval.json";
  o.ablate = {0.25};
  o.seed = 4;
  std::ostringstream err;
  ASSERT_EQ(cmd_eval(o, err, kNoEnv), kExitOk) << err.str();
  const auto j = json::parse(testsupport::slurp(o.output));
  for (const char* m : {"ours", "concat", "concat_filter", "concat_filter_25"}) {
    ASSERT_TRUE(j.at("methods").contains(m)) << m;
    EXPECT_EQ(j.at("methods").at(m).at("images"), 5);
    EXPECT_TRUE(j.at("methods").at(m).at("metrics").contains("cider"));
  }
  EXPECT_EQ(j.at("references").at("images"), 5);

  const auto first = testsupport::slurp(o.output);
  ASSERT_EQ(cmd_eval(o, err, kNoEnv), kExitOk);
  EXPECT_EQ(testsupport::slurp(o.output), first);
}

TEST(CliEval, RunManifestAsCandidates) {
  const auto dir = testsupport::scratch_dir("cli_eval_run");
  std::ostringstream err;
  ASSERT_EQ(cmd_run(run_on(testsupport::fixture("golden"), dir / "run.json"), err, kNoEnv), kExitOk);
  testsupport::write_file(dir / "refs.json",
                          R"([{"image_id": "office_speaker", "references": ["A man speaks to an audience."]}])");
  EvalOptions o;
  o.candidates = dir / "run.json";
  o.references = dir / "refs.json";
  o.output = dir / "eval.json";
  ASSERT_EQ(cmd_eval(o, err, kNoEnv), kExitOk) << err.str();
  EXPECT_TRUE(json::parse(testsupport::slurp(o.output)).at("methods").contains("ours"));
}

TEST(CliEval, MismatchedIdsAreUsageErrors) {
  const auto dir = testsupport::scratch_dir("cli_eval_bad");
  testsupport::write_file(dir / "refs.json", R"([{"image_id": "other", "references": ["x"]}])");
  EvalOptions o;
  o.candidates = testsupport::fixture("eval/candidates.json");
  o.references = dir / "refs.json";
  o.output = dir / "eval.json";
  std::ostringstream err;
  EXPECT_EQ(cmd_eval(o, err, kNoEnv), kExitUsage);
  o.references = dir / "absent.json";
  EXPECT_EQ(cmd_eval(o, err, kNoEnv), kExitUsage);
}

TEST(CliPrep, FixtureDirectory) {
  const auto dir = testsupport::scratch_dir("cli_prep");
  PrepOptions o;
  o.input_dir = testsupport::fixture("prep");
  o.output_dir = dir / "out";
  std::ostringstream err;
  ASSERT_EQ(cmd_prep(o, err, kNoEnv), kExitOk) << err.str();
  EXPECT_EQ(json::parse(testsupport::slurp(o.output_dir / "manifest.json")).at("kept").size(), 4u);

  // Prep output feeds eval as a reference directory.
  testsupport::write_file(dir / "cands.json", R"([
      {"image_id": "2301", "candidate": "A man rides a bike."},
      {"image_id": "2302", "candidate": "A woman."},
      {"image_id": "2303", "candidate": "A boy."},
      {"image_id": "2304", "candidate": "A man."}])");
  EvalOptions e;
  e.candidates = dir / "cands.json";
  e.references = o.output_dir;
  e.output = dir / "eval.json";
  EXPECT_EQ(cmd_eval(e, err, kNoEnv), kExitOk) << err.str();
}

TEST(CliPrep, CorruptRecordIsPartial) {
  const auto dir = testsupport::scratch_dir("cli_prep_bad");
  testsupport::write_file(dir / "in" / "a.json", "{");
  PrepOptions o;
  o.input_dir = dir / "in";
  o.output_dir = dir / "out";
  std::ostringstream err;
  EXPECT_EQ(cmd_prep(o, err, kNoEnv), kExitPartial);
  o.input_dir = dir / "nowhere";
  EXPECT_EQ(cmd_prep(o, err, kNoEnv), kExitUsage);
}

TEST(CliMain, ArgumentErrors) {
  std::vector<std::string> args{"ctxgen", "run", "--bogus"};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  EXPECT_EQ(ctxgen::cli::main(static_cast<int>(argv.size()), argv.data()), kExitUsage);
}
