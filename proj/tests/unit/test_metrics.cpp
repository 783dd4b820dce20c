#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ctxgen/error.hpp"
#include "ctxgen/eval_harness.hpp"
#include "oracles/metric_oracles.hpp"
#include "support/test_support.hpp"
#include "support/toy_corpus.hpp"

using namespace ctxgen;

namespace {

const SynsetGraph& graph() {
  static const SynsetGraph g = testsupport::fixture_graph();
  return g;
}

TokenSeq words(std::initializer_list<const char*> ws) { return TokenSeq(ws.begin(), ws.end()); }

}  // namespace

TEST(Bleu, MatchesOracleOnRandomCorpora) {
  std::mt19937_64 rng(101);
  int nonzero4 = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const auto c = toy::random_corpus(rng);
    const auto lib = corpus_bleu(c.candidates, c.references);
    nonzero4 += lib[3] > 0;
    for (int n = 1; n <= 4; ++n) {
      EXPECT_NEAR(lib[n - 1], oracle::corpus_bleu(c.candidates, c.references, n), 1e-9) << "trial " << trial;
    }
    for (std::size_t i = 0; i < c.candidates.size(); ++i) {
      for (int n = 1; n <= 4; ++n) {
        EXPECT_NEAR(bleu_n(c.candidates[i], c.references[i], n),
                    oracle::sentence_bleu(c.candidates[i], c.references[i], n), 1e-9);
      }
    }
  }
  // The corpora must exercise 4-gram matches, not only zeros.
  EXPECT_GT(nonzero4, 0);
}

TEST(Bleu, HandCases) {
  // 3 of 4 unigrams match; 2 of 3 bigrams; brevity penalty 1 (c = r).
  const std::vector<TokenSeq> refs{words({"the", "man", "sits", "down"})};
  const auto cand = words({"the", "man", "sits", "up"});
  EXPECT_DOUBLE_EQ(bleu_n(cand, refs, 1), 0.75);
  EXPECT_NEAR(bleu_n(cand, refs, 2), std::sqrt(0.75 * 2.0 / 3.0), 1e-12);
  // Clipping: "the the the" against one "the".
  EXPECT_NEAR(bleu_n(words({"the", "the", "the"}), std::vector<TokenSeq>{words({"the", "cat", "sat"})}, 1), 1.0 / 3.0,
              1e-12);
  // Brevity: c = 2, r = 4.
  EXPECT_NEAR(bleu_n(words({"the", "man"}), refs, 1), std::exp(1.0 - 2.0), 1e-12);
  // No smoothing.
  EXPECT_EQ(bleu_n(words({"a", "b"}), std::vector<TokenSeq>{words({"b", "a"})}, 2), 0.0);
}

TEST(Bleu, ClosestReferenceTieTakesShorter) {
  // Refs of length 2 and 4 are both 1 away from c = 3; the shorter gives BP = 1.
  const std::vector<TokenSeq> refs{words({"a", "b", "c", "d"}), words({"a", "b"})};
  EXPECT_DOUBLE_EQ(bleu_n(words({"a", "b", "c"}), refs, 1), 1.0);
}

TEST(Cider, MatchesOracleOnRandomCorpora) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 25; ++trial) {
    const auto c = toy::random_corpus(rng);
    const CiderScorer scorer(c.references);
    for (std::size_t i = 0; i < c.candidates.size(); ++i) {
      const double want = oracle::cider(c.candidates[i], c.references[i], c.references);
      EXPECT_NEAR(scorer.score(c.candidates[i], c.references[i]), want, 1e-9) << "trial " << trial;
      EXPECT_NEAR(cider(c.candidates[i], c.references[i], c.references), want, 1e-9);
    }
  }
}

TEST(Cider, IdfValues) {
  const std::vector<std::vector<TokenSeq>> corpus{{words({"a", "b"})}, {words({"a", "c"})}, {words({"d"})}};
  const CiderScorer scorer(corpus);
  EXPECT_NEAR(scorer.idf(ngram_key(words({"a"}))), std::log(3.0 / 2.0), 1e-12);
  EXPECT_NEAR(scorer.idf(ngram_key(words({"b"}))), std::log(3.0), 1e-12);
  EXPECT_NEAR(scorer.idf(ngram_key(words({"zzz"}))), std::log(3.0), 1e-12);
  EXPECT_EQ(scorer.image_count(), 3u);
}

TEST(Identity, BleuOneAndCiderTen) {
  const std::vector<TokenSeq> cands{words({"a", "man", "in", "a", "red", "shirt"}),
                                    words({"two", "dogs", "run", "across", "wet", "grass"})};
  const std::vector<std::vector<TokenSeq>> refs{{cands[0]}, {cands[1]}};
  for (double b : corpus_bleu(cands, refs)) EXPECT_EQ(b, 1.0);
  const CiderScorer scorer(refs);
  for (std::size_t i = 0; i < cands.size(); ++i) EXPECT_NEAR(scorer.score(cands[i], refs[i]), 10.0, 1e-9);
}

TEST(Invariance, ReferenceOrderDoesNotMatter) {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 25; ++trial) {
    const auto c = toy::random_corpus(rng);
    auto shuffled = c.references;
    for (auto& refs : shuffled) std::shuffle(refs.begin(), refs.end(), rng);
    const auto a = corpus_bleu(c.candidates, c.references);
    const auto b = corpus_bleu(c.candidates, shuffled);
    for (int n = 0; n < 4; ++n) EXPECT_NEAR(a[n], b[n], 1e-12);
    const CiderScorer sa(c.references), sb(shuffled);
    for (std::size_t i = 0; i < c.candidates.size(); ++i) {
      EXPECT_NEAR(sa.score(c.candidates[i], c.references[i]), sb.score(c.candidates[i], shuffled[i]), 1e-12);
    }
  }
}

TEST(Meteor, StemRule) {
  EXPECT_EQ(meteor_stem("walks"), "walk");
  EXPECT_EQ(meteor_stem("walked"), "walk");
  EXPECT_EQ(meteor_stem("walking"), "walk");
  EXPECT_EQ(meteor_stem("boxes"), "box");
  EXPECT_EQ(meteor_stem("is"), "is");
  EXPECT_EQ(meteor_stem("bed"), "bed");
}

// Worked by hand: Fmean = 10PR/(R+9P), penalty = 0.5 (chunks/m)^3.
TEST(Meteor, HandComputedCases) {
  // m = 4, one chunk: 1 - 0.5/64.
  EXPECT_NEAR(meteor(words({"the", "man", "is", "sitting"}), words({"the", "man", "is", "sitting"}), graph()),
              0.9921875, 1e-6);
  // Nothing in common.
  EXPECT_EQ(meteor(words({"a", "dog"}), words({"the", "sky"}), graph()), 0.0);
  // walks/walked meet at the stem stage; m = 3, one chunk: 1 - 0.5/27.
  EXPECT_NEAR(meteor(words({"the", "man", "walks"}), words({"the", "man", "walked"}), graph()), 0.981481481, 1e-6);
  // individual/person share a synset; P = 1, R = 2/3, Fmean = 20/29, one chunk of 2: 20/29 * 15/16.
  EXPECT_NEAR(meteor(words({"individual", "smiles"}), words({"the", "person", "smiles"}), graph()), 75.0 / 116.0,
              1e-6);
  // All three match in two chunks: 1 - 0.5 (2/3)^3 = 23/27.
  EXPECT_NEAR(meteor(words({"sky", "the", "man"}), words({"the", "man", "sky"}), graph()), 23.0 / 27.0, 1e-6);
}

TEST(Meteor, DetailAndMulti) {
  const auto d = meteor_detail(words({"sky", "the", "man"}), words({"the", "man", "sky"}), graph());
  EXPECT_EQ(d.matches, 3u);
  EXPECT_EQ(d.chunks, 2u);
  const std::vector<TokenSeq> refs{words({"a", "dog"}), words({"the", "man", "walked"})};
  EXPECT_NEAR(meteor_multi(words({"the", "man", "walks"}), refs, graph()), 0.981481481, 1e-6);
  EXPECT_EQ(meteor(TokenSeq{}, words({"a"}), graph()), 0.0);
}

TEST(Report, EvaluateCorpusTokenizesText) {
  const std::vector<std::string> cands{"A man, in a red shirt!", "Two dogs run across wet grass."};
  const std::vector<std::vector<std::string>> refs{{"a man in a red shirt"}, {"two dogs run across wet grass"}};
  const auto r = evaluate_corpus(cands, refs, graph());
  for (double b : r.bleu) EXPECT_EQ(b, 1.0);
  EXPECT_NEAR(r.cider, 10.0, 1e-9);
  EXPECT_GT(r.meteor, 0.9);
  const std::vector<std::vector<std::string>> short_refs{{"x"}};
  EXPECT_THROW(evaluate_corpus(cands, short_refs, graph()), InputError);
}
