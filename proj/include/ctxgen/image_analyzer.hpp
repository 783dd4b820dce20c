#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctxgen/config.hpp"
#include "ctxgen/embeddings.hpp"
#include "ctxgen/lexnet.hpp"
#include "ctxgen/resources.hpp"
#include "ctxgen/text_core.hpp"

namespace ctxgen {

struct BoundingBox {
  double x = 0, y = 0, w = 0, h = 0;
  double area() const noexcept { return w * h; }
};

struct RegionCaption {
  std::string text;
  double confidence = 0.0;
  BoundingBox box;
};

struct PersonDetection {
  double confidence = 0.0;
  BoundingBox box;
};

struct DetectionSet {
  int image_w = 0;
  int image_h = 0;
  std::vector<PersonDetection> people;
};

struct AgeEstimate {
  double years = 0.0;
  double confidence = 0.0;
};

struct LabelEstimate {
  std::string label;
  double confidence = 0.0;
};

struct ClassifierReport {
  std::optional<AgeEstimate> age;
  std::optional<LabelEstimate> emotion;
  std::optional<LabelEstimate> scene;
};

// One image's precomputed model outputs.
struct ImageBundle {
  std::string image_id;
  std::vector<RegionCaption> captions;
  DetectionSet detections;
  ClassifierReport classifiers;
};

ImageBundle parse_bundle(const nlohmann::json& j);
ImageBundle load_bundle(const std::filesystem::path& path);

struct AnalyzerText {
  std::vector<SentenceRecord> sentences;
  std::string chosen_noun;
  std::string concatenated;

  bool empty() const noexcept { return sentences.empty(); }
};

// Number of people at or above min_person_prob. Zero means "stop".
int gate_people(const DetectionSet& detections, const PipelineConfig& config);

// Greedy first-wins: a caption survives iff its cosine to every caption kept
// so far is <= t_text_sim.
std::vector<RegionCaption> dedup_captions(const std::vector<RegionCaption>& captions, const EmbeddingStore& store,
                                          const PipelineConfig& config);

// Keeps captions with a NOUN/PRON token of which at least one names a person.
std::vector<RegionCaption> filter_person_captions(const std::vector<RegionCaption>& captions,
                                                  const PosLexicon& lexicon, const SynsetGraph& graph);

// Drops captions whose token count is strictly below the median of the input.
std::vector<RegionCaption> filter_short_captions(const std::vector<RegionCaption>& captions);

double median_token_count(const std::vector<RegionCaption>& captions);

struct StandardizedCaptions {
  std::vector<RegionCaption> captions;
  std::string chosen_noun;
};

// Rewrites every person noun to the most frequent one (ties: first seen).
// Output caption text is the normalized token sequence.
StandardizedCaptions standardize_subject(const std::vector<RegionCaption>& captions, const PosLexicon& lexicon,
                                         const SynsetGraph& graph);

// Throws InputError for negative or non-finite ages.
std::string bin_age_group(double years, const PipelineConfig& config);

std::vector<std::string> render_classifier_sentences(const ClassifierReport& report, int people,
                                                     const std::string& chosen_noun, const PipelineConfig& config);

// nullopt when there is nothing to concatenate (the "no_content" halt).
std::optional<AnalyzerText> build_analyzer_text(const std::vector<RegionCaption>& filtered,
                                                const std::vector<std::string>& classifier_sentences,
                                                const std::string& chosen_noun, const PosLexicon& lexicon);

// Sentences joined with ". " plus a final "."; trailing terminators on the
// inputs are dropped first. Empty input gives "".
std::string concatenate_sentences(const std::vector<std::string>& sentences);

struct CascadeCounts {
  std::size_t input = 0;
  std::size_t after_dedup = 0;
  std::size_t after_person = 0;
  std::size_t after_short = 0;
};

struct CascadeResult {
  StandardizedCaptions standardized;
  CascadeCounts counts;
};

// dedup -> person filter -> short filter -> standardize.
CascadeResult run_filter_cascade(const std::vector<RegionCaption>& captions, const Resources& resources,
                                 const PipelineConfig& config);

}  // namespace ctxgen
