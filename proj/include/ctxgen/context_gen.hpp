#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <semaphore>
#include <span>
#include <string>
#include <vector>

#include "ctxgen/config.hpp"
#include "ctxgen/embeddings.hpp"
#include "ctxgen/image_analyzer.hpp"
#include "ctxgen/resources.hpp"
#include "ctxgen/text_core.hpp"

namespace ctxgen {

struct SummaryCandidate {
  int variant_id = 0;
  int beam_width = 0;
  std::vector<SentenceRecord> sentences;

  bool empty() const noexcept { return sentences.empty(); }
  // Sentences joined by single spaces.
  std::string text() const;
};

SummaryCandidate make_candidate(int variant_id, int beam_width, std::string_view summary, const PosLexicon& lexicon);

struct QualityScore {
  std::size_t verb_count = 0;
  std::size_t pronoun_count = 0;
  std::size_t cconj_count = 0;
  std::size_t token_count = 0;
  double score = 0.0;
};

// Produces one summary per requested beam width, in request order.
class SummarizerBackend {
 public:
  virtual ~SummarizerBackend() = default;
  virtual std::vector<std::string> summarize(const AnalyzerText& text, std::span<const int> beam_widths) = 0;
  virtual std::string describe() const = 0;
};

// Centroid-ranked sentence extraction: the beam width doubles as the
// sentence budget.
class ExtractiveBackend final : public SummarizerBackend {
 public:
  explicit ExtractiveBackend(const EmbeddingStore& store) : store_(store) {}
  std::vector<std::string> summarize(const AnalyzerText& text, std::span<const int> beam_widths) override;
  std::string describe() const override { return "fallback"; }

 private:
  const EmbeddingStore& store_;
};

struct HttpBackendOptions {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds connect_timeout{2000};
  std::chrono::milliseconds read_timeout{60000};
  int max_in_flight = 4;
};

// Client for the summarizer wire protocol:
//   POST /summarize {"text": str, "beam_widths": [int]}
//   -> 200 {"summaries": [{"beam_width": int, "text": str}]}
// Connection failures, timeouts and 5xx answers are retried with doubling
// backoff; 4xx answers fail at once.
class HttpBackend final : public SummarizerBackend {
 public:
  explicit HttpBackend(std::string base_url, HttpBackendOptions options = {});
  std::vector<std::string> summarize(const AnalyzerText& text, std::span<const int> beam_widths) override;
  std::string describe() const override { return "http:" + base_url_; }

  // GET /health; true on 200.
  bool healthy() const;

 private:
  std::string base_url_;
  HttpBackendOptions options_;
  std::counting_semaphore<1024> in_flight_;
};

// "fallback" or "http:URL" (URL may omit the scheme).
std::unique_ptr<SummarizerBackend> make_backend(const std::string& spec, const EmbeddingStore& store,
                                                HttpBackendOptions options = {});

// Throws InputError on empty text, ProtocolError when the backend returns the
// wrong number of summaries.
std::vector<SummaryCandidate> generate_summaries(const AnalyzerText& text, SummarizerBackend& backend,
                                                 const PipelineConfig& config, const PosLexicon& lexicon);

std::string extractive_summarize(const AnalyzerText& text, int budget, const EmbeddingStore& store);

// Stage 1 drops sentences with cosine < alpha to the whole source text;
// stage 2 drops sentences with cosine > beta to an earlier kept one.
SummaryCandidate clean_summary(const SummaryCandidate& candidate, const AnalyzerText& source,
                               const EmbeddingStore& store, const PipelineConfig& config);

QualityScore score_summary_quality(const SummaryCandidate& candidate);

struct RankKey {
  double score = 0.0;
  std::size_t sentence_count = 0;
  int variant_id = 0;
};

// Index of the best key: highest score, then more sentences, then lowest
// variant id. Keys with zero sentences are skipped; nullopt if none remain.
std::optional<std::size_t> select_best_index(std::span<const RankKey> keys);

std::optional<SummaryCandidate> select_best_summary(const std::vector<SummaryCandidate>& candidates);

enum class PipelineStatus { Ok, NoPerson, NoContent, NoSummary, Error };
std::string_view to_string(PipelineStatus status) noexcept;

struct PipelineTimings {
  double analyze_ms = 0;
  double summarize_ms = 0;
  double select_ms = 0;
  double total_ms = 0;
};

struct PipelineResult {
  PipelineStatus status = PipelineStatus::Error;
  std::string paragraph;
  std::optional<int> chosen_variant;
  std::string chosen_noun;
  int people = 0;
  CascadeCounts counts;
  std::vector<std::string> classifier_sentences;
  std::string analyzer_text;
  PipelineTimings timings;
};

// gate -> filters -> templates -> concatenate -> summarize -> clean ->
// score -> select. Halts map to statuses; backend failures throw.
PipelineResult run_pipeline(const ImageBundle& bundle, const Resources& resources, const PipelineConfig& config,
                            SummarizerBackend& backend);

}  // namespace ctxgen
