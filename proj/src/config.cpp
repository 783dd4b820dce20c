#include "ctxgen/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "ctxgen/error.hpp"

#ifndef CTXGEN_DATA_DIR
#define CTXGEN_DATA_DIR "data"
#endif

namespace ctxgen {

namespace {

using nlohmann::json;

constexpr std::string_view kScalarFields[] = {"t_text_sim",      "t_model_confidence", "alpha",
                                              "beta",            "min_person_prob",    "person_area_ratio"};

double* scalar_field(PipelineConfig& c, std::string_view name) {
  if (name == "t_text_sim") return &c.t_text_sim;
  if (name == "t_model_confidence") return &c.t_model_confidence;
  if (name == "alpha") return &c.alpha;
  if (name == "beta") return &c.beta;
  if (name == "min_person_prob") return &c.min_person_prob;
  if (name == "person_area_ratio") return &c.person_area_ratio;
  return nullptr;
}

std::filesystem::path* path_field(ResourcePaths& r, std::string_view name) {
  if (name == "lexicon") return &r.lexicon;
  if (name == "embeddings") return &r.embeddings;
  if (name == "wordnet_data") return &r.wordnet_data;
  if (name == "wordnet_index") return &r.wordnet_index;
  return nullptr;
}

double parse_real(std::string_view key, std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw InputError("config '" + std::string(key) + "': '" + std::string(text) + "' is not a number");
  }
  return v;
}

std::vector<int> parse_int_list(std::string_view key, std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw InputError("config '" + std::string(key) + "': '" + std::string(text) + "' is not an integer list");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.empty() || path.is_absolute() || base.empty()) return path;
  return base / path;
}

bool assign(PipelineConfig& c, std::string_view key, std::string_view value) {
  if (double* d = scalar_field(c, key)) {
    *d = parse_real(key, value);
    return true;
  }
  if (key == "beam_widths") {
    c.beam_widths = parse_int_list(key, value);
    return true;
  }
  if (std::filesystem::path* p = path_field(c.resources, key)) {
    *p = std::filesystem::path(std::string(value));
    return true;
  }
  if (key == "person_root") {
    c.resources.person_root = value.empty() ? std::nullopt : std::optional<std::string>(std::string(value));
    return true;
  }
  return false;
}

}  // namespace

std::vector<AgeBin> default_age_bins() {
  return {{15.0, "Child"}, {25.0, "Young"}, {45.0, "Adult"}, {60.0, "Middle-aged"}, {std::nullopt, "Elderly"}};
}

ResourcePaths default_resource_paths() {
  const std::filesystem::path dir(CTXGEN_DATA_DIR);
  return {dir / "lexicon.tsv", dir / "vectors.txt", dir / "wordnet" / "data.noun", dir / "wordnet" / "index.noun",
          std::nullopt};
}

void PipelineConfig::validate() const {
  auto in_range = [](std::string_view name, double v, double lo, double hi) {
    if (!(v >= lo && v <= hi)) {
      throw InputError("config '" + std::string(name) + "' = " + std::to_string(v) + " outside [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  };
  // Cosine thresholds live on the cosine scale.
  in_range("t_text_sim", t_text_sim, -1.0, 1.0);
  in_range("alpha", alpha, -1.0, 1.0);
  in_range("beta", beta, -1.0, 1.0);
  in_range("t_model_confidence", t_model_confidence, 0.0, 1.0);
  in_range("min_person_prob", min_person_prob, 0.0, 1.0);
  in_range("person_area_ratio", person_area_ratio, 0.0, 1.0);

  if (beam_widths.empty()) throw InputError("config 'beam_widths' is empty");
  for (int w : beam_widths) {
    if (w < 1) throw InputError("config 'beam_widths' entry " + std::to_string(w) + " < 1");
  }

  if (age_boundaries.empty()) throw InputError("config 'age_boundaries' is empty");
  for (std::size_t i = 0; i < age_boundaries.size(); ++i) {
    const bool last = i + 1 == age_boundaries.size();
    const auto& bin = age_boundaries[i];
    if (bin.label.empty()) throw InputError("config 'age_boundaries' has an empty label");
    if (last != !bin.upper.has_value()) {
      throw InputError("config 'age_boundaries': only the last bin may be (and must be) unbounded");
    }
    if (!last && i > 0 && !(*bin.upper > *age_boundaries[i - 1].upper)) {
      throw InputError("config 'age_boundaries' upper ages must be strictly increasing");
    }
  }
}

nlohmann::json to_json(const PipelineConfig& c) {
  json bins = json::array();
  for (const auto& b : c.age_boundaries) {
    bins.push_back({{"upper", b.upper ? json(*b.upper) : json(nullptr)}, {"label", b.label}});
  }
  json res = {{"lexicon", c.resources.lexicon.string()},
              {"embeddings", c.resources.embeddings.string()},
              {"wordnet_data", c.resources.wordnet_data.string()},
              {"wordnet_index", c.resources.wordnet_index.string()},
              {"person_root", c.resources.person_root ? json(*c.resources.person_root) : json(nullptr)}};
  return {{"t_text_sim", c.t_text_sim},
          {"t_model_confidence", c.t_model_confidence},
          {"alpha", c.alpha},
          {"beta", c.beta},
          {"min_person_prob", c.min_person_prob},
          {"person_area_ratio", c.person_area_ratio},
          {"beam_widths", c.beam_widths},
          {"age_boundaries", bins},
          {"resources", res}};
}

PipelineConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  PipelineConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (double* d = scalar_field(c, key)) {
        *d = value.get<double>();
      } else if (key == "beam_widths") {
        c.beam_widths = value.get<std::vector<int>>();
      } else if (key == "age_boundaries") {
        c.age_boundaries.clear();
        for (const auto& b : value) {
          AgeBin bin;
          bin.label = b.at("label").get<std::string>();
          if (b.contains("upper") && !b.at("upper").is_null()) bin.upper = b.at("upper").get<double>();
          c.age_boundaries.push_back(std::move(bin));
        }
      } else if (key == "resources") {
        for (const auto& [rkey, rvalue] : value.items()) {
          if (auto* p = path_field(c.resources, rkey)) {
            *p = resolve(base_dir, rvalue.get<std::string>());
          } else if (rkey == "person_root") {
            c.resources.person_root =
                rvalue.is_null() ? std::nullopt : std::optional<std::string>(rvalue.get<std::string>());
          } else {
            throw InputError("unknown resources key '" + rkey + "'");
          }
        }
      } else {
        throw InputError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError(path.string(), "cannot open config file");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path.string(), ParseError::Where::ByteOffset, 0, e.what());
  }
  return config_from_json(j, path.parent_path());
}

void apply_override(PipelineConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw InputError("override '" + std::string(assignment) + "' is not key=value");
  const auto key = assignment.substr(0, eq);
  if (!assign(config, key, assignment.substr(eq + 1))) {
    throw InputError("unknown config key '" + std::string(key) + "'");
  }
  config.validate();
}

void apply_env_overrides(PipelineConfig& config, const EnvLookup& getenv) {
  std::vector<std::string> keys(std::begin(kScalarFields), std::end(kScalarFields));
  for (const char* k : {"beam_widths", "lexicon", "embeddings", "wordnet_data", "wordnet_index", "person_root"}) {
    keys.emplace_back(k);
  }
  for (const auto& key : keys) {
    std::string name = "CTXGEN_";
    for (char ch : key) name.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    if (auto value = getenv(name)) assign(config, key, *value);
  }
  config.validate();
}

std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

}  // namespace ctxgen
