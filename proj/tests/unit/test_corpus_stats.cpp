#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include <json.hpp>

#include "ctxgen/error.hpp"
#include "ctxgen/eval_harness.hpp"
#include "support/test_support.hpp"

using namespace ctxgen;

namespace {

const Resources& res() { return testsupport::bundled_resources(); }

std::vector<std::string> stats_fixture() {
  return nlohmann::json::parse(testsupport::slurp(testsupport::fixture("stats/paragraphs.json")))
      .get<std::vector<std::string>>();
}

std::string twelve_sentences() {
  std::string p;
  for (int i = 1; i <= 12; ++i) p += "Sentence number " + std::to_string(i) + " is here. ";
  p.pop_back();
  return p;
}

}  // namespace

// Counted by hand from the fixture text:
//   chars 69, 50, 79 (code points; the cafe accent is one);
//   words 16, 12, 17; sentences 2, 2, 3; 34 distinct lowercased words.
TEST(LanguageStats, ManualOracle) {
  const auto paragraphs = stats_fixture();
  ASSERT_EQ(paragraphs.size(), 3u);
  const auto s = language_stats(paragraphs, res().lexicon);
  EXPECT_EQ(s.paragraphs, 3u);
  EXPECT_EQ(s.chars.mean, 66.0);
  EXPECT_EQ(s.chars.stddev, std::sqrt(434.0 / 3.0));
  EXPECT_EQ(s.words.mean, 15.0);
  EXPECT_EQ(s.words.stddev, std::sqrt(14.0 / 3.0));
  EXPECT_EQ(s.sentences.mean, 7.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.sentences.stddev, std::sqrt(2.0 / 9.0));
  EXPECT_EQ(s.vocab_size, 34u);
}

TEST(LanguageStats, VocabEqualsDistinctTokens) {
  const auto paragraphs = stats_fixture();
  std::set<std::string> distinct;
  for (const auto& p : paragraphs) {
    for (const auto& t : normalize_and_tokenize(p)) distinct.insert(t.surface);
  }
  EXPECT_EQ(language_stats(paragraphs, res().lexicon).vocab_size, distinct.size());
}

TEST(LanguageStats, PosPercentagesSumWithinHundred) {
  const auto s = language_stats(stats_fixture(), res().lexicon);
  double total = 0;
  for (PosTag tag : kReportedTags) {
    EXPECT_GE(s.pos_pct.at(tag), 0.0);
    total += s.pos_pct.at(tag);
  }
  EXPECT_LE(total, 100.0 + 1e-9);
  EXPECT_GT(s.pos_pct.at(PosTag::NOUN), 0.0);
  EXPECT_GT(s.pos_pct.at(PosTag::PRON), 0.0);
}

TEST(LanguageStats, SmallCases) {
  const std::vector<std::string> one{"ab. cd."};
  const auto s = language_stats(one, res().lexicon);
  EXPECT_EQ(s.chars.mean, 7.0);
  EXPECT_EQ(s.words.mean, 2.0);
  EXPECT_EQ(s.sentences.mean, 2.0);
  EXPECT_EQ(s.chars.stddev, 0.0);

  const auto empty = language_stats({}, res().lexicon);
  EXPECT_EQ(empty.paragraphs, 0u);
  EXPECT_EQ(empty.vocab_size, 0u);
  EXPECT_EQ(empty.words.mean, 0.0);

  const std::vector<std::string> same{"A man sits.", "A man sits."};
  const auto twin = language_stats(same, res().lexicon);
  EXPECT_EQ(twin.words.stddev, 0.0);
  EXPECT_EQ(twin.vocab_size, 3u);
}

TEST(MeanStd, Population) {
  const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  const auto m = mean_std(v);
  EXPECT_EQ(m.mean, 5.0);
  EXPECT_EQ(m.stddev, 2.0);
}

TEST(CharCount, CodePoints) {
  EXPECT_EQ(char_count("café"), 4u);
  EXPECT_EQ(char_count(""), 0u);
}

TEST(Baselines, ConcatAndFiltered) {
  const auto bundle = load_bundle(testsupport::fixture("golden/office_speaker.json"));
  const auto concat = make_concat_baseline(bundle.captions);
  EXPECT_EQ(split_sentences(concat).size(), bundle.captions.size());
  const PipelineConfig config;
  const auto filtered = make_concat_filter_baseline(bundle.captions, res(), config);
  const auto cascade = run_filter_cascade(bundle.captions, res(), config);
  EXPECT_EQ(split_sentences(filtered).size(), cascade.counts.after_short);
  EXPECT_LT(filtered.size(), concat.size());
}

TEST(Ablate, QuarterOfTwelveIsThree) {
  const auto p = twelve_sentences();
  ASSERT_EQ(split_sentences(p).size(), 12u);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto out = ablate_sentences(p, 0.25, seed);
    EXPECT_EQ(split_sentences(out).size(), 3u);
    EXPECT_EQ(out, ablate_sentences(p, 0.25, seed));
  }
}

TEST(Ablate, KeepsOriginalOrder) {
  const auto all = split_sentences(twelve_sentences());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto kept = split_sentences(ablate_sentences(twelve_sentences(), 0.5, seed));
    ASSERT_EQ(kept.size(), 6u);
    auto it = all.begin();
    for (const auto& s : kept) {
      it = std::find(it, all.end(), s);
      ASSERT_NE(it, all.end()) << s;
      ++it;
    }
  }
}

TEST(Ablate, SeedsDifferAndBoundsHold) {
  const auto p = twelve_sentences();
  std::set<std::string> outcomes;
  for (std::uint64_t seed = 0; seed < 20; ++seed) outcomes.insert(ablate_sentences(p, 0.25, seed));
  EXPECT_GT(outcomes.size(), 1u);
  EXPECT_EQ(ablate_sentences(p, 1.0, 7), p);
  EXPECT_EQ(split_sentences(ablate_sentences(p, 0.01, 7)).size(), 1u);
  // 0.3 * 10 is 3.0000000000000004 in doubles; still three sentences.
  std::string ten;
  for (int i = 0; i < 10; ++i) ten += "Line " + std::to_string(i) + ". ";
  EXPECT_EQ(split_sentences(ablate_sentences(ten, 0.3, 1)).size(), 3u);
  EXPECT_THROW(ablate_sentences(p, 0.0, 1), InputError);
  EXPECT_THROW(ablate_sentences(p, 1.5, 1), InputError);
  EXPECT_EQ(ablate_sentences("", 0.5, 1), "");
}
