#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ctxgen/config.hpp"

namespace ctxgen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitUsage = 2;

struct RunOptions {
  std::filesystem::path input_dir;
  std::optional<std::filesystem::path> config_path;
  std::string backend = "fallback";
  std::filesystem::path output;
  int jobs = 1;
  std::vector<std::string> overrides;  // key=value, applied after the config file
  bool timings = false;
  int http_attempts = 3;
  int http_backoff_ms = 500;
};

struct EvalOptions {
  std::filesystem::path candidates;
  std::filesystem::path references;
  std::filesystem::path output;
  std::optional<std::filesystem::path> config_path;
  std::vector<double> ablate;  // keep fractions for concat_filter_NN rows
  unsigned long long seed = 0;
};

struct PrepOptions {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  std::optional<std::filesystem::path> config_path;
  std::vector<std::string> overrides;
};

// Each command writes diagnostics to `err` and returns the process exit code.
int cmd_run(const RunOptions& options, std::ostream& err, const EnvLookup& env = process_env);
int cmd_eval(const EvalOptions& options, std::ostream& err, const EnvLookup& env = process_env);
int cmd_prep(const PrepOptions& options, std::ostream& err, const EnvLookup& env = process_env);

int main(int argc, char** argv);

}  // namespace ctxgen::cli
