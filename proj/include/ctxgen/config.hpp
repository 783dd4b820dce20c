#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ctxgen {

// An age bin covers [previous upper, upper); the last bin has no upper bound.
struct AgeBin {
  std::optional<double> upper;
  std::string label;

  friend bool operator==(const AgeBin&, const AgeBin&) = default;
};

std::vector<AgeBin> default_age_bins();

// Where the on-disk resources live. Relative paths are resolved against the
// config file's directory.
struct ResourcePaths {
  std::filesystem::path lexicon;
  std::filesystem::path embeddings;
  std::filesystem::path wordnet_data;   // data.noun, or a synset TSV
  std::filesystem::path wordnet_index;  // index.noun; empty for TSV
  std::optional<std::string> person_root;

  friend bool operator==(const ResourcePaths&, const ResourcePaths&) = default;
};

ResourcePaths default_resource_paths();

struct PipelineConfig {
  double t_text_sim = 0.95;
  double t_model_confidence = 0.6;
  double alpha = 0.7;
  double beta = 0.5;
  double min_person_prob = 0.6;
  double person_area_ratio = 0.5;
  std::vector<int> beam_widths = {2, 3, 4, 5, 6};
  std::vector<AgeBin> age_boundaries = default_age_bins();
  ResourcePaths resources = default_resource_paths();

  // Throws InputError naming the first violated constraint.
  void validate() const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

nlohmann::json to_json(const PipelineConfig& config);

// Missing keys keep their defaults; unknown keys are rejected. Relative
// resource paths are resolved against `base_dir`.
PipelineConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);

// Applies `key=value` with a config field name as key (e.g. "alpha=0.8",
// "beam_widths=2,4"). Throws InputError for unknown keys or bad values.
void apply_override(PipelineConfig& config, std::string_view assignment);

// Reads CTXGEN_<FIELD> for every scalar/list field (CTXGEN_ALPHA,
// CTXGEN_BEAM_WIDTHS, CTXGEN_EMBEDDINGS, ...). `getenv` is injectable for tests.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
void apply_env_overrides(PipelineConfig& config, const EnvLookup& getenv);
std::optional<std::string> process_env(const std::string& name);

}  // namespace ctxgen
