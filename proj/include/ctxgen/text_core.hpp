#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ctxgen {

enum class PosTag : std::uint8_t { NOUN, VERB, ADJ, PRON, CCONJ, DET, ADP, NUM, OTHER };

inline constexpr std::array<PosTag, 9> kAllPosTags = {PosTag::NOUN, PosTag::VERB, PosTag::ADJ,
                                                      PosTag::PRON, PosTag::CCONJ, PosTag::DET,
                                                      PosTag::ADP,  PosTag::NUM,   PosTag::OTHER};

std::string_view to_string(PosTag tag) noexcept;
std::optional<PosTag> parse_pos_tag(std::string_view name) noexcept;

struct Token {
  std::string surface;
  PosTag pos = PosTag::OTHER;

  friend bool operator==(const Token&, const Token&) = default;
};

struct SentenceRecord {
  std::string raw;
  std::vector<Token> tokens;

  std::size_t token_count() const noexcept { return tokens.size(); }
};

// Word -> tag lexicon with closed-class overrides.
//
// File format (UTF-8): `word<TAB>TAG` entry lines anywhere; a header line
// `#PRON`, `#CCONJ`, `#DET` or `#ADP` opens a closed-class section whose
// following bare-word lines belong to that class. Blank lines are skipped.
class PosLexicon {
 public:
  PosLexicon() = default;

  static PosLexicon load(const std::filesystem::path& path);
  static PosLexicon parse(std::string_view text, const std::string& origin = "<memory>");

  void add_entry(std::string word, PosTag tag);
  void add_closed_class(std::string word, PosTag tag);

  // Lexicon and closed classes only; no suffix fallback.
  std::optional<PosTag> find(std::string_view word) const;

  // Total lookup: closed class, entries, suffix heuristics, then OTHER.
  PosTag lookup(std::string_view word) const;

  std::size_t entry_count() const noexcept { return entries_.size(); }
  std::size_t closed_class_count() const noexcept { return closed_.size(); }

 private:
  std::unordered_map<std::string, PosTag> entries_;
  std::unordered_map<std::string, PosTag> closed_;
};

bool is_punctuation(char c) noexcept;

// Lowercase, delete punctuation (any non-alphanumeric, non-space byte), split
// on whitespace runs. Tokens come back tagged OTHER.
std::vector<Token> normalize_and_tokenize(std::string_view text);

// Normalized surfaces joined by single spaces.
std::string normalize_text(std::string_view text);

// Split on . ! ? terminators, honouring a fixed abbreviation list. Returned
// sentences are trimmed and keep their terminator.
std::vector<std::string> split_sentences(std::string_view text);

std::vector<Token> tag_tokens(std::vector<Token> tokens, const PosLexicon& lexicon);

SentenceRecord make_sentence(std::string raw, const PosLexicon& lexicon);

// A sentence "has a nominal subject" iff it has a NOUN or PRON token.
bool has_nominal(const SentenceRecord& sentence) noexcept;

std::string join_surfaces(const std::vector<Token>& tokens);

// "a" or "an" by the first letter of `next_word`.
std::string_view indefinite_article(std::string_view next_word) noexcept;

}  // namespace ctxgen
