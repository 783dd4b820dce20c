#include "ctxgen/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctxgen/context_gen.hpp"
#include "ctxgen/dataset_prep.hpp"
#include "ctxgen/error.hpp"
#include "ctxgen/eval_harness.hpp"
#include "ctxgen/image_analyzer.hpp"
#include "ctxgen/resources.hpp"

namespace ctxgen::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Config file, then command-line overrides, then CTXGEN_* variables.
PipelineConfig resolve_config(const std::optional<std::filesystem::path>& path,
                              const std::vector<std::string>& overrides, const EnvLookup& env) {
  PipelineConfig config = path ? load_config(*path) : PipelineConfig{};
  for (const auto& o : overrides) apply_override(config, o);
  apply_env_overrides(config, env);
  return config;
}

std::vector<std::filesystem::path> json_inputs(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError(path.string(), "cannot open");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string(), ParseError::Where::ByteOffset, 0, e.what());
  }
}

void write_json(const std::filesystem::path& path, const ordered_json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError(path.string(), "cannot write");
  out << j.dump(2) << '\n';
}

ordered_json thresholds_json(const PipelineConfig& config) {
  ordered_json j;
  j["t_text_sim"] = config.t_text_sim;
  j["t_model_confidence"] = config.t_model_confidence;
  j["alpha"] = config.alpha;
  j["beta"] = config.beta;
  j["min_person_prob"] = config.min_person_prob;
  j["person_area_ratio"] = config.person_area_ratio;
  j["beam_widths"] = config.beam_widths;
  return j;
}

struct RunRow {
  std::string image_id;
  PipelineResult result;
  std::string concat;
  std::string concat_filter;
  std::string error;
};

ordered_json row_json(const RunRow& row, bool timings) {
  const auto& r = row.result;
  ordered_json j;
  j["image_id"] = row.image_id;
  j["status"] = std::string(to_string(r.status));
  j["paragraph"] = r.paragraph;
  j["chosen_variant"] = r.chosen_variant ? ordered_json(*r.chosen_variant) : ordered_json(nullptr);
  j["chosen_noun"] = r.chosen_noun;
  j["people"] = r.people;
  j["stage_counts"] = {{"input", r.counts.input},
                       {"after_dedup", r.counts.after_dedup},
                       {"after_person", r.counts.after_person},
                       {"after_short", r.counts.after_short}};
  j["classifier_sentences"] = r.classifier_sentences;
  j["analyzer_text"] = r.analyzer_text;
  j["baselines"] = {{"concat", row.concat}, {"concat_filter", row.concat_filter}};
  if (!row.error.empty()) j["error"] = row.error;
  if (timings) {
    j["timings"] = {{"analyze_ms", r.timings.analyze_ms},
                    {"summarize_ms", r.timings.summarize_ms},
                    {"select_ms", r.timings.select_ms},
                    {"total_ms", r.timings.total_ms}};
  }
  return j;
}

ordered_json stats_json(const CorpusStats& s) {
  ordered_json pos;
  for (PosTag tag : kReportedTags) pos[std::string(to_string(tag))] = s.pos_pct.at(tag);
  const auto ms = [](const MeanStd& m) { return ordered_json{{"mean", m.mean}, {"std", m.stddev}}; };
  return {{"paragraphs", s.paragraphs}, {"chars", ms(s.chars)},         {"words", ms(s.words)},
          {"sentences", ms(s.sentences)}, {"pos_pct", pos},              {"vocab_size", s.vocab_size}};
}

ordered_json metrics_json(const MetricReport& m) {
  return {{"bleu", m.bleu}, {"meteor", m.meteor}, {"cider", m.cider}};
}

using MethodTable = std::map<std::string, std::map<std::string, std::string>>;

// Candidates come as a run manifest, a {"methods": {...}} table, a plain
// array of {image_id, candidate}, or a directory of per-image records.
MethodTable read_candidates(const std::filesystem::path& path) {
  MethodTable table;
  auto add_records = [&](const std::string& method, const json& arr) {
    auto& rows = table[method];
    for (const auto& rec : arr) rows[rec.at("image_id").get<std::string>()] = rec.at("candidate").get<std::string>();
  };

  if (std::filesystem::is_directory(path)) {
    auto& rows = table["ours"];
    for (const auto& file : json_inputs(path)) {
      const auto rec = read_json(file);
      rows[rec.at("image_id").get<std::string>()] = rec.at("candidate").get<std::string>();
    }
    return table;
  }
  const auto j = read_json(path);
  if (j.is_object() && j.contains("rows")) {
    for (const auto& row : j.at("rows")) {
      const auto id = row.at("image_id").get<std::string>();
      table["ours"][id] = row.value("paragraph", std::string());
      if (row.contains("baselines")) {
        for (const auto& [name, text] : row.at("baselines").items()) table[name][id] = text.get<std::string>();
      }
    }
  } else if (j.is_object() && j.contains("methods")) {
    for (const auto& [name, arr] : j.at("methods").items()) add_records(name, arr);
  } else if (j.is_array()) {
    add_records("ours", j);
  } else {
    throw InputError(path.string() + ": unrecognised candidates format");
  }
  return table;
}

std::map<std::string, std::vector<std::string>> read_references(const std::filesystem::path& path) {
  std::map<std::string, std::vector<std::string>> refs;
  auto add = [&](const json& rec) {
    auto& list = refs[rec.at("image_id").get<std::string>()];
    if (rec.contains("references")) {
      for (const auto& r : rec.at("references")) list.push_back(r.get<std::string>());
    } else {
      list.push_back(rec.at("paragraph").get<std::string>());
    }
  };
  if (std::filesystem::is_directory(path)) {
    for (const auto& file : json_inputs(path)) {
      if (file.filename() != "manifest.json") add(read_json(file));
    }
    return refs;
  }
  const auto j = read_json(path);
  if (!j.is_array()) throw InputError(path.string() + ": references must be an array of records");
  for (const auto& rec : j) add(rec);
  return refs;
}

std::uint64_t mix_seed(std::uint64_t seed, std::size_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

SynsetGraph load_graph(const ResourcePaths& paths) {
  if (paths.wordnet_data.extension() == ".tsv") return load_wordnet_tsv(paths.wordnet_data, paths.person_root);
  return load_wordnet(paths.wordnet_data, paths.wordnet_index, paths.person_root);
}

}  // namespace

int cmd_run(const RunOptions& options, std::ostream& err, const EnvLookup& env) {
  PipelineConfig config;
  std::unique_ptr<Resources> resources;
  std::unique_ptr<SummarizerBackend> backend;
  std::string backend_spec = env("CTXGEN_BACKEND").value_or(options.backend);
  int jobs = options.jobs;
  try {
    if (auto j = env("CTXGEN_JOBS")) jobs = std::stoi(*j);
    config = resolve_config(options.config_path, options.overrides, env);
    if (!std::filesystem::is_directory(options.input_dir)) {
      throw ResourceError(options.input_dir.string(), "input directory not found");
    }
    resources = std::make_unique<Resources>(
        Resources::load(config.resources, [&](const std::string& w) { err << "warning: " << w << '\n'; }));
    HttpBackendOptions http;
    http.attempts = options.http_attempts;
    http.initial_backoff = std::chrono::milliseconds(options.http_backoff_ms);
    http.max_in_flight = std::max(jobs, 1);
    backend = make_backend(backend_spec, resources->embeddings, http);
  } catch (const std::exception& e) {
    err << "ctxgen run: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto files = json_inputs(options.input_dir);
  std::vector<RunRow> rows(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      RunRow& row = rows[i];
      row.image_id = files[i].stem().string();
      try {
        const auto bundle = load_bundle(files[i]);
        row.image_id = bundle.image_id;
        row.concat = make_concat_baseline(bundle.captions);
        row.concat_filter = make_concat_filter_baseline(bundle.captions, *resources, config);
        row.result = run_pipeline(bundle, *resources, config, *backend);
      } catch (const std::exception& e) {
        row.result.status = PipelineStatus::Error;
        row.error = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int workers = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(files.size(), 1)));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  ordered_json manifest;
  manifest["backend"] = backend->describe();
  manifest["config"] = thresholds_json(config);
  manifest["rows"] = ordered_json::array();
  bool any_error = false;
  for (const auto& row : rows) {
    manifest["rows"].push_back(row_json(row, options.timings));
    if (row.result.status == PipelineStatus::Error) {
      any_error = true;
      err << "ctxgen run: " << row.image_id << ": " << row.error << '\n';
    }
  }
  try {
    write_json(options.output, manifest);
  } catch (const std::exception& e) {
    err << "ctxgen run: " << e.what() << '\n';
    return kExitUsage;
  }
  return any_error ? kExitPartial : kExitOk;
}

int cmd_eval(const EvalOptions& options, std::ostream& err, const EnvLookup& env) {
  try {
    const PipelineConfig config = resolve_config(options.config_path, {}, env);
    MethodTable methods = read_candidates(options.candidates);
    const auto references = read_references(options.references);

    std::erase_if(methods, [](const auto& m) { return m.second.empty(); });
    if (methods.empty()) {
      err << "ctxgen eval: no candidates in " << options.candidates << '\n';
      return kExitUsage;
    }
    if (references.empty()) {
      err << "ctxgen eval: no references in " << options.references << '\n';
      return kExitUsage;
    }

    std::set<std::string> unmatched;
    for (const auto& [name, rows] : methods) {
      for (const auto& [id, text] : rows) {
        if (!references.contains(id)) unmatched.insert(id);
      }
      for (const auto& [id, refs] : references) {
        if (!rows.contains(id)) unmatched.insert(id);
      }
    }
    if (!unmatched.empty()) {
      err << "ctxgen eval: image ids not present in both inputs:";
      for (const auto& id : unmatched) err << ' ' << id;
      err << '\n';
      return kExitUsage;
    }

    if (methods.contains("concat_filter")) {
      const auto base = methods.at("concat_filter");
      for (double fraction : options.ablate) {
        const int pct = static_cast<int>(std::lround(fraction * 100.0));
        auto& rows = methods["concat_filter_" + std::to_string(pct)];
        std::size_t index = 0;
        for (const auto& [id, text] : base) rows[id] = ablate_sentences(text, fraction, mix_seed(options.seed, index++));
      }
    }

    const auto lexicon = PosLexicon::load(config.resources.lexicon);
    const auto graph = load_graph(config.resources);

    std::vector<std::vector<std::string>> ref_lists;
    std::vector<std::string> ref_paragraphs;
    for (const auto& [id, refs] : references) {
      ref_lists.push_back(refs);
      for (const auto& r : refs) ref_paragraphs.push_back(r);
    }

    ordered_json report;
    report["methods"] = ordered_json::object();
    for (const auto& [name, rows] : methods) {
      std::vector<std::string> candidates;
      for (const auto& [id, refs] : references) candidates.push_back(rows.at(id));
      ordered_json entry;
      entry["images"] = candidates.size();
      entry["metrics"] = metrics_json(evaluate_corpus(candidates, ref_lists, graph));
      entry["stats"] = stats_json(language_stats(candidates, lexicon));
      report["methods"][name] = entry;
    }
    report["references"] = {{"images", references.size()}, {"stats", stats_json(language_stats(ref_paragraphs, lexicon))}};
    write_json(options.output, report);
  } catch (const std::exception& e) {
    err << "ctxgen eval: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_prep(const PrepOptions& options, std::ostream& err, const EnvLookup& env) {
  PrepReport report;
  try {
    const PipelineConfig config = resolve_config(options.config_path, options.overrides, env);
    if (!std::filesystem::is_directory(options.input_dir)) {
      throw ResourceError(options.input_dir.string(), "input directory not found");
    }
    const auto resources = Resources::load(config.resources);
    report = prepare_dataset(options.input_dir, options.output_dir, resources, config);
  } catch (const std::exception& e) {
    err << "ctxgen prep: " << e.what() << '\n';
    return kExitUsage;
  }
  for (const auto& s : report.skipped) err << "ctxgen prep: skipped " << s.file << ": " << s.reason << '\n';
  return report.skipped.empty() ? kExitOk : kExitPartial;
}

int main(int argc, char** argv) {
  CLI::App app{"ctxgen: person-focused image context paragraphs from precomputed image analysis"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Generate context paragraphs for a directory of image bundles");
  run_cmd->add_option("--input", run.input_dir, "Directory of per-image bundle JSON files")->required();
  run_cmd->add_option("--config", run.config_path, "Pipeline config JSON");
  run_cmd->add_option("--backend", run.backend, "Summarizer: fallback | http:URL");
  run_cmd->add_option("--output", run.output, "Run manifest to write")->required();
  run_cmd->add_option("--jobs", run.jobs, "Worker threads")->check(CLI::PositiveNumber);
  run_cmd->add_option("--set", run.overrides, "Config override key=value (repeatable)");
  run_cmd->add_flag("--timings", run.timings, "Record per-image timings in the manifest");
  run_cmd->add_option("--http-attempts", run.http_attempts, "Attempts per summarizer request")->check(CLI::PositiveNumber);
  run_cmd->add_option("--http-backoff-ms", run.http_backoff_ms, "Initial retry backoff");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score candidate paragraphs against references");
  eval_cmd->add_option("--candidates", eval.candidates, "Candidates file or directory")->required();
  eval_cmd->add_option("--references", eval.references, "References file or directory")->required();
  eval_cmd->add_option("--output", eval.output, "Report JSON to write")->required();
  eval_cmd->add_option("--config", eval.config_path, "Pipeline config JSON (resource paths)");
  eval_cmd->add_option("--ablate", eval.ablate, "Keep fractions for concat_filter_NN rows, e.g. 0.25,0.3")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  eval_cmd->add_option("--seed", eval.seed, "Seed for sentence ablation");

  PrepOptions prep;
  auto* prep_cmd = app.add_subcommand("prep", "Filter a Visual Genome style record directory to person images");
  prep_cmd->add_option("--input", prep.input_dir, "Directory of image record JSON files")->required();
  prep_cmd->add_option("--output", prep.output_dir, "Output directory")->required();
  prep_cmd->add_option("--config", prep.config_path, "Pipeline config JSON");
  prep_cmd->add_option("--set", prep.overrides, "Config override key=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*run_cmd) return cmd_run(run, std::cerr);
  if (*eval_cmd) return cmd_eval(eval, std::cerr);
  return cmd_prep(prep, std::cerr);
}

}  // namespace ctxgen::cli
