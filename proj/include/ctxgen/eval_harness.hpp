#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ctxgen/config.hpp"
#include "ctxgen/image_analyzer.hpp"
#include "ctxgen/lexnet.hpp"
#include "ctxgen/resources.hpp"
#include "ctxgen/text_core.hpp"

namespace ctxgen {

using TokenSeq = std::vector<std::string>;

TokenSeq surfaces(std::string_view text);

// ---- BLEU -----------------------------------------------------------------

// Sentence BLEU-n: clipped n-gram precisions, uniform geometric mean over
// orders 1..n, brevity penalty against the closest reference length. No
// smoothing: any zero precision gives 0.
double bleu_n(const TokenSeq& candidate, std::span<const TokenSeq> references, int n);

// Corpus BLEU-1..4 from n-gram counts pooled over all segments.
std::array<double, 4> corpus_bleu(std::span<const TokenSeq> candidates, std::span<const std::vector<TokenSeq>> references);

// ---- METEOR ---------------------------------------------------------------

struct MeteorDetail {
  std::size_t matches = 0;
  std::size_t chunks = 0;
  double precision = 0;
  double recall = 0;
  double fmean = 0;
  double penalty = 0;
  double score = 0;
};

// Exact, then suffix-stripped, then shared-synset unigram matching.
// Fmean = 10PR/(R+9P); penalty = 0.5 (chunks/matches)^3.
MeteorDetail meteor_detail(const TokenSeq& candidate, const TokenSeq& reference, const SynsetGraph& graph);
double meteor(const TokenSeq& candidate, const TokenSeq& reference, const SynsetGraph& graph);

// Best score over the references.
double meteor_multi(const TokenSeq& candidate, std::span<const TokenSeq> references, const SynsetGraph& graph);

// Fixed suffix strip used by the stem stage (ing, ed, es, s).
std::string meteor_stem(std::string_view word);

// ---- CIDEr ----------------------------------------------------------------

// Base CIDEr over n = 1..4 with idf = log(N / max(1, df)), df counted over
// each image's reference set, scaled by 10.
class CiderScorer {
 public:
  explicit CiderScorer(std::span<const std::vector<TokenSeq>> corpus_references);

  double score(const TokenSeq& candidate, std::span<const TokenSeq> references) const;
  double idf(std::string_view ngram_key) const;
  std::size_t image_count() const noexcept { return images_; }

 private:
  std::unordered_map<std::string, std::size_t> document_frequency_;
  std::size_t images_ = 0;
};

double cider(const TokenSeq& candidate, std::span<const TokenSeq> references,
             std::span<const std::vector<TokenSeq>> corpus_references);

// N-gram keys join tokens with '\x1f'.
std::string ngram_key(std::span<const std::string> tokens);

// ---- reports --------------------------------------------------------------

struct MetricReport {
  std::array<double, 4> bleu{};
  double meteor = 0;
  double cider = 0;
};

// Candidate and reference paragraphs aligned by position.
MetricReport evaluate_corpus(std::span<const std::string> candidates,
                             std::span<const std::vector<std::string>> references, const SynsetGraph& graph);

struct MeanStd {
  double mean = 0;
  double stddev = 0;  // population
};

MeanStd mean_std(std::span<const double> values);

struct CorpusStats {
  MeanStd chars;
  MeanStd words;
  MeanStd sentences;
  std::map<PosTag, double> pos_pct;  // NOUN, VERB, ADJ, PRON, CCONJ
  std::size_t vocab_size = 0;
  std::size_t paragraphs = 0;
};

inline constexpr std::array<PosTag, 5> kReportedTags = {PosTag::NOUN, PosTag::VERB, PosTag::ADJ, PosTag::PRON,
                                                        PosTag::CCONJ};

CorpusStats language_stats(std::span<const std::string> paragraphs, const PosLexicon& lexicon);

// UTF-8 code points.
std::size_t char_count(std::string_view text) noexcept;

// ---- baselines ------------------------------------------------------------

std::string make_concat_baseline(const std::vector<RegionCaption>& captions);
std::string make_concat_filter_baseline(const std::vector<RegionCaption>& captions, const Resources& resources,
                                        const PipelineConfig& config);

// Keeps ceil(keep_fraction * n) uniformly chosen sentences in their original
// order. Deterministic for a given seed.
std::string ablate_sentences(std::string_view paragraph, double keep_fraction, std::uint64_t seed);

}  // namespace ctxgen
