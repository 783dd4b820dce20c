#include "ctxgen/eval_harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_set>

#include "ctxgen/error.hpp"

namespace ctxgen {

namespace {

using Counts = std::unordered_map<std::string, std::size_t>;

Counts ngram_counts(const TokenSeq& tokens, std::size_t n) {
  Counts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[ngram_key(std::span<const std::string>(tokens.data() + i, n))];
  }
  return counts;
}

struct OrderStats {
  std::size_t clipped = 0;
  std::size_t total = 0;
};

OrderStats clipped_counts(const TokenSeq& candidate, std::span<const TokenSeq> references, std::size_t n) {
  const Counts cand = ngram_counts(candidate, n);
  Counts max_ref;
  for (const auto& ref : references) {
    for (const auto& [gram, c] : ngram_counts(ref, n)) max_ref[gram] = std::max(max_ref[gram], c);
  }
  OrderStats s;
  for (const auto& [gram, c] : cand) {
    s.total += c;
    const auto it = max_ref.find(gram);
    if (it != max_ref.end()) s.clipped += std::min(c, it->second);
  }
  return s;
}

// Closest reference length; ties go to the shorter reference.
std::size_t closest_ref_length(std::size_t cand_len, std::span<const TokenSeq> references) {
  std::size_t best = references.empty() ? 0 : references.front().size();
  for (const auto& r : references) {
    const auto d = [&](std::size_t len) { return len > cand_len ? len - cand_len : cand_len - len; };
    if (d(r.size()) < d(best) || (d(r.size()) == d(best) && r.size() < best)) best = r.size();
  }
  return best;
}

double brevity_penalty(std::size_t c, std::size_t r) {
  if (c == 0) return 0.0;
  if (c >= r) return 1.0;
  return std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
}

double geometric_bleu(std::span<const OrderStats> orders, std::size_t c, std::size_t r) {
  double log_sum = 0.0;
  for (const auto& o : orders) {
    if (o.total == 0 || o.clipped == 0) return 0.0;
    log_sum += std::log(static_cast<double>(o.clipped) / static_cast<double>(o.total));
  }
  return brevity_penalty(c, r) * std::exp(log_sum / static_cast<double>(orders.size()));
}

Counts tfidf_counts(const TokenSeq& tokens, std::size_t n) { return ngram_counts(tokens, n); }

}  // namespace

std::string ngram_key(std::span<const std::string> tokens) {
  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) key.push_back('\x1f');
    key += tokens[i];
  }
  return key;
}

TokenSeq surfaces(std::string_view text) {
  TokenSeq out;
  for (auto& t : normalize_and_tokenize(text)) out.push_back(std::move(t.surface));
  return out;
}

double bleu_n(const TokenSeq& candidate, std::span<const TokenSeq> references, int n) {
  if (n < 1) throw InputError("BLEU order must be at least 1");
  if (candidate.empty() || references.empty()) return 0.0;
  std::vector<OrderStats> orders;
  for (int k = 1; k <= n; ++k) orders.push_back(clipped_counts(candidate, references, static_cast<std::size_t>(k)));
  return geometric_bleu(orders, candidate.size(), closest_ref_length(candidate.size(), references));
}

std::array<double, 4> corpus_bleu(std::span<const TokenSeq> candidates, std::span<const std::vector<TokenSeq>> references) {
  if (candidates.size() != references.size()) throw InputError("corpus BLEU needs one reference set per candidate");
  std::array<OrderStats, 4> pooled{};
  std::size_t c = 0, r = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    c += candidates[i].size();
    r += closest_ref_length(candidates[i].size(), references[i]);
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto s = clipped_counts(candidates[i], references[i], k);
      pooled[k - 1].clipped += s.clipped;
      pooled[k - 1].total += s.total;
    }
  }
  std::array<double, 4> out{};
  for (std::size_t n = 1; n <= 4; ++n) {
    out[n - 1] = geometric_bleu(std::span<const OrderStats>(pooled.data(), n), c, r);
  }
  return out;
}

std::string meteor_stem(std::string_view word) {
  for (std::string_view suffix : {"ing", "ed", "es", "s"}) {
    if (word.size() >= suffix.size() + 2 && word.substr(word.size() - suffix.size()) == suffix) {
      return std::string(word.substr(0, word.size() - suffix.size()));
    }
  }
  return std::string(word);
}

MeteorDetail meteor_detail(const TokenSeq& candidate, const TokenSeq& reference, const SynsetGraph& graph) {
  MeteorDetail d;
  if (candidate.empty() || reference.empty()) return d;

  constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);
  std::vector<std::size_t> cand_to_ref(candidate.size(), kUnmatched);
  std::vector<char> ref_used(reference.size(), 0);

  std::vector<std::string> cand_stems, ref_stems;
  for (const auto& w : candidate) cand_stems.push_back(meteor_stem(w));
  for (const auto& w : reference) ref_stems.push_back(meteor_stem(w));

  const std::array<std::function<bool(std::size_t, std::size_t)>, 3> stages = {
      [&](std::size_t i, std::size_t j) { return candidate[i] == reference[j]; },
      [&](std::size_t i, std::size_t j) { return cand_stems[i] == ref_stems[j]; },
      [&](std::size_t i, std::size_t j) { return graph.share_synset(candidate[i], reference[j]); },
  };

  for (const auto& matches : stages) {
    for (std::size_t i = 0; i < candidate.size(); ++i) {
      if (cand_to_ref[i] != kUnmatched) continue;
      // Prefer continuing the previous candidate word's run to keep chunks few.
      std::size_t choice = kUnmatched;
      if (i > 0 && cand_to_ref[i - 1] != kUnmatched) {
        const std::size_t next = cand_to_ref[i - 1] + 1;
        if (next < reference.size() && !ref_used[next] && matches(i, next)) choice = next;
      }
      for (std::size_t j = 0; choice == kUnmatched && j < reference.size(); ++j) {
        if (!ref_used[j] && matches(i, j)) choice = j;
      }
      if (choice != kUnmatched) {
        cand_to_ref[i] = choice;
        ref_used[choice] = 1;
      }
    }
  }

  std::size_t prev_i = kUnmatched, prev_j = kUnmatched;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    const std::size_t j = cand_to_ref[i];
    if (j == kUnmatched) continue;
    ++d.matches;
    if (!(prev_i != kUnmatched && i == prev_i + 1 && j == prev_j + 1)) ++d.chunks;
    prev_i = i;
    prev_j = j;
  }
  if (d.matches == 0) return d;

  const double m = static_cast<double>(d.matches);
  d.precision = m / static_cast<double>(candidate.size());
  d.recall = m / static_cast<double>(reference.size());
  d.fmean = 10.0 * d.precision * d.recall / (d.recall + 9.0 * d.precision);
  d.penalty = 0.5 * std::pow(static_cast<double>(d.chunks) / m, 3.0);
  d.score = d.fmean * (1.0 - d.penalty);
  return d;
}

double meteor(const TokenSeq& candidate, const TokenSeq& reference, const SynsetGraph& graph) {
  return meteor_detail(candidate, reference, graph).score;
}

double meteor_multi(const TokenSeq& candidate, std::span<const TokenSeq> references, const SynsetGraph& graph) {
  double best = 0.0;
  for (const auto& r : references) best = std::max(best, meteor(candidate, r, graph));
  return best;
}

CiderScorer::CiderScorer(std::span<const std::vector<TokenSeq>> corpus_references) : images_(corpus_references.size()) {
  for (const auto& refs : corpus_references) {
    std::unordered_set<std::string> seen;
    for (const auto& r : refs) {
      for (std::size_t n = 1; n <= 4; ++n) {
        for (const auto& entry : ngram_counts(r, n)) seen.insert(entry.first);
      }
    }
    for (const auto& g : seen) ++document_frequency_[g];
  }
}

double CiderScorer::idf(std::string_view ngram_key) const {
  const auto it = document_frequency_.find(std::string(ngram_key));
  const double df = it == document_frequency_.end() ? 0.0 : static_cast<double>(it->second);
  return std::log(static_cast<double>(std::max<std::size_t>(images_, 1))) - std::log(std::max(1.0, df));
}

double CiderScorer::score(const TokenSeq& candidate, std::span<const TokenSeq> references) const {
  if (candidate.empty() || references.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto weigh = [&](const Counts& counts) {
      std::unordered_map<std::string, double> vec;
      for (const auto& [g, tf] : counts) vec[g] = static_cast<double>(tf) * idf(g);
      return vec;
    };
    const auto norm = [](const std::unordered_map<std::string, double>& v) {
      double s = 0.0;
      for (const auto& entry : v) s += entry.second * entry.second;
      return std::sqrt(s);
    };
    const auto cand_vec = weigh(tfidf_counts(candidate, n));
    const double cand_norm = norm(cand_vec);
    double sum = 0.0;
    for (const auto& ref : references) {
      const auto ref_vec = weigh(tfidf_counts(ref, n));
      const double ref_norm = norm(ref_vec);
      if (cand_norm == 0.0 || ref_norm == 0.0) continue;
      double dot = 0.0;
      for (const auto& [g, w] : cand_vec) {
        if (auto it = ref_vec.find(g); it != ref_vec.end()) dot += w * it->second;
      }
      sum += dot / (cand_norm * ref_norm);
    }
    total += sum / static_cast<double>(references.size());
  }
  return 10.0 * total / 4.0;
}

double cider(const TokenSeq& candidate, std::span<const TokenSeq> references,
             std::span<const std::vector<TokenSeq>> corpus_references) {
  return CiderScorer(corpus_references).score(candidate, references);
}

MetricReport evaluate_corpus(std::span<const std::string> candidates,
                             std::span<const std::vector<std::string>> references, const SynsetGraph& graph) {
  if (candidates.size() != references.size()) throw InputError("one reference set per candidate is required");
  MetricReport report;
  if (candidates.empty()) return report;

  std::vector<TokenSeq> cand_tokens;
  std::vector<std::vector<TokenSeq>> ref_tokens;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    cand_tokens.push_back(surfaces(candidates[i]));
    auto& refs = ref_tokens.emplace_back();
    for (const auto& r : references[i]) refs.push_back(surfaces(r));
  }

  report.bleu = corpus_bleu(cand_tokens, ref_tokens);
  const CiderScorer scorer(ref_tokens);
  double meteor_sum = 0.0, cider_sum = 0.0;
  for (std::size_t i = 0; i < cand_tokens.size(); ++i) {
    meteor_sum += meteor_multi(cand_tokens[i], ref_tokens[i], graph);
    cider_sum += scorer.score(cand_tokens[i], ref_tokens[i]);
  }
  report.meteor = meteor_sum / static_cast<double>(cand_tokens.size());
  report.cider = cider_sum / static_cast<double>(cand_tokens.size());
  return report;
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd m;
  if (values.empty()) return m;
  const double n = static_cast<double>(values.size());
  m.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double sq = 0.0;
  for (double v : values) sq += (v - m.mean) * (v - m.mean);
  m.stddev = std::sqrt(sq / n);
  return m;
}

std::size_t char_count(std::string_view text) noexcept {
  return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

CorpusStats language_stats(std::span<const std::string> paragraphs, const PosLexicon& lexicon) {
  CorpusStats stats;
  stats.paragraphs = paragraphs.size();
  for (PosTag tag : kReportedTags) stats.pos_pct[tag] = 0.0;
  if (paragraphs.empty()) return stats;

  std::vector<double> chars, words, sentences;
  std::unordered_set<std::string> vocab;
  std::map<PosTag, std::size_t> tag_counts;
  std::size_t tagged = 0;
  for (const auto& p : paragraphs) {
    chars.push_back(static_cast<double>(char_count(p)));
    const auto tokens = tag_tokens(normalize_and_tokenize(p), lexicon);
    words.push_back(static_cast<double>(tokens.size()));
    sentences.push_back(static_cast<double>(split_sentences(p).size()));
    for (const auto& t : tokens) {
      vocab.insert(t.surface);
      ++tag_counts[t.pos];
      ++tagged;
    }
  }
  stats.chars = mean_std(chars);
  stats.words = mean_std(words);
  stats.sentences = mean_std(sentences);
  stats.vocab_size = vocab.size();
  if (tagged > 0) {
    for (PosTag tag : kReportedTags) {
      stats.pos_pct[tag] = 100.0 * static_cast<double>(tag_counts[tag]) / static_cast<double>(tagged);
    }
  }
  return stats;
}

std::string make_concat_baseline(const std::vector<RegionCaption>& captions) {
  std::vector<std::string> texts;
  for (const auto& c : captions) texts.push_back(c.text);
  return concatenate_sentences(texts);
}

std::string make_concat_filter_baseline(const std::vector<RegionCaption>& captions, const Resources& resources,
                                        const PipelineConfig& config) {
  return make_concat_baseline(run_filter_cascade(captions, resources, config).standardized.captions);
}

std::string ablate_sentences(std::string_view paragraph, double keep_fraction, std::uint64_t seed) {
  if (!(keep_fraction > 0.0 && keep_fraction <= 1.0)) throw InputError("keep_fraction must lie in (0, 1]");
  const auto sentences = split_sentences(paragraph);
  const std::size_t n = sentences.size();
  if (n == 0) return {};
  // The epsilon absorbs products such as 0.3 * 10 = 3.0000000000000004.
  auto keep = static_cast<std::size_t>(std::ceil(keep_fraction * static_cast<double>(n) - 1e-9));
  keep = std::clamp<std::size_t>(keep, 1, n);

  // Partial Fisher-Yates with an unbiased bounded draw, so the selection
  // depends only on the 64-bit Mersenne Twister stream.
  std::mt19937_64 rng(seed);
  const auto bounded = [&](std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return x % bound;
  };
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < keep; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(bounded(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());

  std::string out;
  for (std::size_t i : idx) {
    if (!out.empty()) out.push_back(' ');
    out += sentences[i];
  }
  return out;
}

}  // namespace ctxgen
