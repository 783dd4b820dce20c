#include <gtest/gtest.h>

#include "ctxgen/error.hpp"
#include "ctxgen/text_core.hpp"
#include "support/test_support.hpp"

using namespace ctxgen;

namespace {

std::vector<std::string> surfaces_of(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<PosTag> tags_of(const std::vector<Token>& tokens) {
  std::vector<PosTag> out;
  for (const auto& t : tokens) out.push_back(t.pos);
  return out;
}

const PosLexicon& lexicon() { return testsupport::bundled_resources().lexicon; }

}  // namespace

TEST(Tokenize, LowercasesAndDropsPunctuation) {
  EXPECT_EQ(surfaces_of(normalize_and_tokenize("A man,  wearing a HAT.")),
            (std::vector<std::string>{"a", "man", "wearing", "a", "hat"}));
}

TEST(Tokenize, EmptyInput) { EXPECT_TRUE(normalize_and_tokenize("").empty()); }

TEST(Tokenize, ApostropheIsDeletedNotSplit) {
  EXPECT_EQ(surfaces_of(normalize_and_tokenize("the man's lips")),
            (std::vector<std::string>{"the", "mans", "lips"}));
}

TEST(Tokenize, HyphenJoinsWords) {
  EXPECT_EQ(surfaces_of(normalize_and_tokenize("a middle-aged man")),
            (std::vector<std::string>{"a", "middleaged", "man"}));
}

TEST(Tokenize, KeepsUtf8BytesAndOnlyFoldsAscii) {
  EXPECT_EQ(surfaces_of(normalize_and_tokenize("Café ÉTÉ")), (std::vector<std::string>{"café", "ÉtÉ"}));
}

TEST(Tokenize, IsIdempotentOnJoinedSurfaces) {
  for (const char* text : {"A man,  wearing a HAT.", "he's (very) tall!", "  \t multiple\nlines  here "}) {
    const auto once = normalize_and_tokenize(text);
    EXPECT_EQ(normalize_and_tokenize(join_surfaces(once)), once) << text;
  }
}

TEST(Tokenize, SurfacesHaveNoSpaceOrPunctuation) {
  for (const auto& t : normalize_and_tokenize("x-ray, \"quoted\"; 3.5 (paren) [br] {c} a_b")) {
    EXPECT_FALSE(t.surface.empty());
    for (char c : t.surface) EXPECT_FALSE(is_punctuation(c) || c == ' ') << t.surface;
  }
}

TEST(SplitSentences, TwoTerminatedSentences) {
  EXPECT_EQ(split_sentences("he sits. she smiles."), (std::vector<std::string>{"he sits.", "she smiles."}));
}

TEST(SplitSentences, NoTerminatorKeepsFragment) {
  EXPECT_EQ(split_sentences("a man in a room"), (std::vector<std::string>{"a man in a room"}));
}

TEST(SplitSentences, AbbreviationDoesNotEndSentence) {
  EXPECT_EQ(split_sentences("dr. smith waves. hi."), (std::vector<std::string>{"dr. smith waves.", "hi."}));
  EXPECT_EQ(split_sentences("Mr. Brown and Mrs. Green talk. Done"),
            (std::vector<std::string>{"Mr. Brown and Mrs. Green talk.", "Done"}));
  EXPECT_EQ(split_sentences("tools, e.g. hammers. ok"), (std::vector<std::string>{"tools, e.g. hammers.", "ok"}));
}

TEST(SplitSentences, MixedTerminatorsAndClosers) {
  EXPECT_EQ(split_sentences("Is he here?! \"Yes.\" Fine"),
            (std::vector<std::string>{"Is he here?!", "\"Yes.\"", "Fine"}));
}

TEST(SplitSentences, DecimalPointDoesNotSplit) {
  EXPECT_EQ(split_sentences("it costs 3.5 dollars. ok."), (std::vector<std::string>{"it costs 3.5 dollars.", "ok."}));
}

TEST(SplitSentences, NoEmptySentences) {
  EXPECT_TRUE(split_sentences("").empty());
  EXPECT_TRUE(split_sentences("   ").empty());
  EXPECT_EQ(split_sentences("... a."), (std::vector<std::string>{"...", "a."}));
}

TEST(SplitSentences, RejoiningLosesNoCharacters) {
  const std::string text = "dr. x met a man.   He smiled!Then left? yes";
  std::string joined;
  for (const auto& s : split_sentences(text)) joined += s + " ";
  auto strip = [](std::string s) {
    std::erase_if(s, [](char c) { return c == ' ' || c == '\t' || c == '\n'; });
    return s;
  };
  EXPECT_EQ(strip(joined), strip(text));
}

TEST(Tagger, PronounVerbVerb) {
  EXPECT_EQ(tags_of(tag_tokens(normalize_and_tokenize("he is smiling"), lexicon())),
            (std::vector<PosTag>{PosTag::PRON, PosTag::VERB, PosTag::VERB}));
}

TEST(Tagger, ClosedClassAndNoun) {
  EXPECT_EQ(lexicon().lookup("and"), PosTag::CCONJ);
  EXPECT_EQ(lexicon().lookup("man"), PosTag::NOUN);
  EXPECT_EQ(lexicon().lookup("the"), PosTag::DET);
  EXPECT_EQ(lexicon().lookup("with"), PosTag::ADP);
}

TEST(Tagger, SuffixHeuristics) {
  PosLexicon lex;
  lex.add_entry("dog", PosTag::NOUN);
  lex.add_entry("box", PosTag::NOUN);
  EXPECT_EQ(lex.lookup("jumping"), PosTag::VERB);
  EXPECT_EQ(lex.lookup("jumped"), PosTag::VERB);
  EXPECT_EQ(lex.lookup("quickly"), PosTag::OTHER);
  EXPECT_EQ(lex.lookup("dogs"), PosTag::NOUN);
  EXPECT_EQ(lex.lookup("boxes"), PosTag::NOUN);
  EXPECT_EQ(lex.lookup("cats"), PosTag::OTHER);  // stem unknown
  EXPECT_EQ(lex.lookup("ring"), PosTag::OTHER);  // too short for -ing
  EXPECT_EQ(lex.lookup("1999"), PosTag::NUM);
  EXPECT_EQ(lex.lookup("zzz"), PosTag::OTHER);
}

TEST(Tagger, ClosedClassBeatsEntries) {
  const auto lex = PosLexicon::parse("her\tNOUN\n#PRON\nher\n");
  EXPECT_EQ(lex.lookup("her"), PosTag::PRON);
  EXPECT_EQ(lex.find("her"), PosTag::PRON);
}

TEST(Tagger, DeterministicAndLengthPreserving) {
  const auto tokens = normalize_and_tokenize("the tall officer and his dog are running quickly in 2020");
  const auto a = tag_tokens(tokens, lexicon());
  const auto b = tag_tokens(tokens, lexicon());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), tokens.size());
}

TEST(Lexicon, ParsesSectionsAndEntries) {
  const auto lex = PosLexicon::parse("man\tNOUN\nrun\tVERB\n\n#CCONJ\nand\nbut\n#DET\nthe\n");
  EXPECT_EQ(lex.entry_count(), 2u);
  EXPECT_EQ(lex.closed_class_count(), 3u);
  EXPECT_EQ(lex.lookup("but"), PosTag::CCONJ);
}

TEST(Lexicon, RejectsMalformedLinesWithLineNumber) {
  try {
    PosLexicon::parse("man\tNOUN\nrun\tVERBISH\n", "lex.tsv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location_kind(), ParseError::Where::Line);
    EXPECT_EQ(e.location(), 2u);
  }
  EXPECT_THROW(PosLexicon::parse("#NOUN\nman\n"), ParseError);
  EXPECT_THROW(PosLexicon::parse("stray\n"), ParseError);
}

TEST(Lexicon, MissingFileIsResourceError) {
  EXPECT_THROW(PosLexicon::load(testsupport::fixture("does/not/exist.tsv")), ResourceError);
}

TEST(Sentence, NominalCheck) {
  EXPECT_TRUE(has_nominal(make_sentence("a man wearing a hat", lexicon())));
  EXPECT_TRUE(has_nominal(make_sentence("he smiles", lexicon())));
  EXPECT_FALSE(has_nominal(make_sentence("green and tall", lexicon())));
}

TEST(Article, VowelRule) {
  EXPECT_EQ(indefinite_article("elderly"), "an");
  EXPECT_EQ(indefinite_article("Adult"), "an");
  EXPECT_EQ(indefinite_article("man"), "a");
  EXPECT_EQ(indefinite_article("middle-aged"), "a");
}
