#include "ctxgen/context_gen.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "ctxgen/error.hpp"
#include "ctxgen/simd/vec_kernels.hpp"

namespace ctxgen {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

std::string SummaryCandidate::text() const {
  std::string out;
  for (const auto& s : sentences) {
    if (!out.empty()) out.push_back(' ');
    out += s.raw;
  }
  return out;
}

SummaryCandidate make_candidate(int variant_id, int beam_width, std::string_view summary, const PosLexicon& lexicon) {
  SummaryCandidate c{variant_id, beam_width, {}};
  for (auto& s : split_sentences(summary)) c.sentences.push_back(make_sentence(std::move(s), lexicon));
  return c;
}

std::string extractive_summarize(const AnalyzerText& text, int budget, const EmbeddingStore& store) {
  if (budget < 1) throw InputError("summary budget must be at least 1");
  const std::size_t n = text.sentences.size();
  if (n == 0) return {};

  std::vector<SentenceVector> vectors;
  vectors.reserve(n);
  SentenceVector centroid{std::vector<double>(store.dim(), 0.0), 1.0};
  for (const auto& s : text.sentences) {
    vectors.push_back(embed_sentence(s.tokens, store));
    simd::accumulate(centroid.values, vectors.back().values);
  }
  simd::scale(centroid.values, 1.0 / static_cast<double>(n));

  std::vector<double> closeness(n);
  for (std::size_t i = 0; i < n; ++i) closeness[i] = cosine_similarity(vectors[i], centroid);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return closeness[a] > closeness[b]; });
  order.resize(std::min<std::size_t>(static_cast<std::size_t>(budget), n));
  std::sort(order.begin(), order.end());

  std::vector<std::string> chosen;
  for (std::size_t i : order) chosen.push_back(text.sentences[i].raw);
  return concatenate_sentences(chosen);
}

std::vector<std::string> ExtractiveBackend::summarize(const AnalyzerText& text, std::span<const int> beam_widths) {
  std::vector<std::string> out;
  for (int w : beam_widths) {
    const int budget = std::min<int>(w, static_cast<int>(text.sentences.size()));
    out.push_back(extractive_summarize(text, std::max(budget, 1), store_));
  }
  return out;
}

std::vector<SummaryCandidate> generate_summaries(const AnalyzerText& text, SummarizerBackend& backend,
                                                 const PipelineConfig& config, const PosLexicon& lexicon) {
  if (text.empty() || text.concatenated.empty()) throw InputError("cannot summarize an empty analyzer text");
  const auto summaries = backend.summarize(text, config.beam_widths);
  if (summaries.size() != config.beam_widths.size()) {
    throw ProtocolError(backend.describe() + " returned " + std::to_string(summaries.size()) + " summaries, " +
                        std::to_string(config.beam_widths.size()) + " requested");
  }
  std::vector<SummaryCandidate> out;
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    out.push_back(make_candidate(static_cast<int>(i), config.beam_widths[i], summaries[i], lexicon));
  }
  return out;
}

SummaryCandidate clean_summary(const SummaryCandidate& candidate, const AnalyzerText& source,
                               const EmbeddingStore& store, const PipelineConfig& config) {
  const auto source_vector = embed_text(source.concatenated, store);

  std::vector<const SentenceRecord*> relevant;
  std::vector<SentenceVector> relevant_vectors;
  for (const auto& s : candidate.sentences) {
    auto v = embed_sentence(s.tokens, store);
    if (cosine_similarity(v, source_vector) >= config.alpha) {
      relevant.push_back(&s);
      relevant_vectors.push_back(std::move(v));
    }
  }

  SummaryCandidate out{candidate.variant_id, candidate.beam_width, {}};
  std::vector<const SentenceVector*> kept_vectors;
  for (std::size_t i = 0; i < relevant.size(); ++i) {
    const bool redundant = std::any_of(kept_vectors.begin(), kept_vectors.end(), [&](const SentenceVector* k) {
      return cosine_similarity(relevant_vectors[i], *k) > config.beta;
    });
    if (!redundant) {
      out.sentences.push_back(*relevant[i]);
      kept_vectors.push_back(&relevant_vectors[i]);
    }
  }
  return out;
}

QualityScore score_summary_quality(const SummaryCandidate& candidate) {
  QualityScore q;
  for (const auto& s : candidate.sentences) {
    for (const auto& t : s.tokens) {
      ++q.token_count;
      if (t.pos == PosTag::VERB) ++q.verb_count;
      else if (t.pos == PosTag::PRON) ++q.pronoun_count;
      else if (t.pos == PosTag::CCONJ) ++q.cconj_count;
    }
  }
  q.score = static_cast<double>(q.verb_count + q.pronoun_count + q.cconj_count) /
            static_cast<double>(std::max<std::size_t>(q.token_count, 1));
  return q;
}

std::optional<std::size_t> select_best_index(std::span<const RankKey> keys) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto& k = keys[i];
    if (k.sentence_count == 0) continue;
    if (!best) {
      best = i;
      continue;
    }
    const auto& b = keys[*best];
    if (k.score != b.score) {
      if (k.score > b.score) best = i;
    } else if (k.sentence_count != b.sentence_count) {
      if (k.sentence_count > b.sentence_count) best = i;
    } else if (k.variant_id < b.variant_id) {
      best = i;
    }
  }
  return best;
}

std::optional<SummaryCandidate> select_best_summary(const std::vector<SummaryCandidate>& candidates) {
  std::vector<RankKey> keys;
  keys.reserve(candidates.size());
  for (const auto& c : candidates) keys.push_back({score_summary_quality(c).score, c.sentences.size(), c.variant_id});
  const auto best = select_best_index(keys);
  if (!best) return std::nullopt;
  return candidates[*best];
}

std::string_view to_string(PipelineStatus status) noexcept {
  switch (status) {
    case PipelineStatus::Ok: return "ok";
    case PipelineStatus::NoPerson: return "no_person";
    case PipelineStatus::NoContent: return "no_content";
    case PipelineStatus::NoSummary: return "no_summary";
    case PipelineStatus::Error: return "error";
  }
  return "error";
}

PipelineResult run_pipeline(const ImageBundle& bundle, const Resources& resources, const PipelineConfig& config,
                            SummarizerBackend& backend) {
  const auto start = Clock::now();
  PipelineResult r;
  auto finish = [&](PipelineStatus status) {
    r.status = status;
    r.timings.total_ms = ms_since(start);
    return r;
  };

  r.people = gate_people(bundle.detections, config);
  if (r.people == 0) return finish(PipelineStatus::NoPerson);

  const auto cascade = run_filter_cascade(bundle.captions, resources, config);
  r.counts = cascade.counts;
  r.chosen_noun = cascade.standardized.chosen_noun;
  r.classifier_sentences = render_classifier_sentences(bundle.classifiers, r.people, r.chosen_noun, config);
  const auto analyzer =
      build_analyzer_text(cascade.standardized.captions, r.classifier_sentences, r.chosen_noun, resources.lexicon);
  r.timings.analyze_ms = ms_since(start);
  if (!analyzer) return finish(PipelineStatus::NoContent);
  r.analyzer_text = analyzer->concatenated;

  const auto summarize_start = Clock::now();
  auto candidates = generate_summaries(*analyzer, backend, config, resources.lexicon);
  r.timings.summarize_ms = ms_since(summarize_start);

  const auto select_start = Clock::now();
  for (auto& c : candidates) c = clean_summary(c, *analyzer, resources.embeddings, config);
  const auto best = select_best_summary(candidates);
  r.timings.select_ms = ms_since(select_start);
  if (!best) return finish(PipelineStatus::NoSummary);

  r.paragraph = best->text();
  r.chosen_variant = best->variant_id;
  return finish(PipelineStatus::Ok);
}

}  // namespace ctxgen
