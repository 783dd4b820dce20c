#include "ctxgen/text_core.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ctxgen/error.hpp"

namespace ctxgen {

namespace {

constexpr std::array<std::string_view, 6> kAbbreviations = {"mr", "mrs", "dr", "st", "e.g", "i.e"};

bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Bytes >= 0x80 are UTF-8 sequence parts; they are kept as word characters.
bool is_word_char(char c) noexcept {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z');
}

char ascii_lower(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_terminator(char c) noexcept { return c == '.' || c == '!' || c == '?'; }

bool is_closer(char c) noexcept { return c == '"' || c == '\'' || c == ')' || c == ']'; }

bool ends_with(std::string_view s, std::string_view suffix) noexcept {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool all_digits(std::string_view s) noexcept {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// The word immediately before position `end` (exclusive), lowercased, with
// leading non-word characters stripped.
std::string word_before(std::string_view text, std::size_t end) {
  std::size_t begin = end;
  while (begin > 0 && !is_space(text[begin - 1])) --begin;
  std::string word;
  for (std::size_t i = begin; i < end; ++i) word.push_back(ascii_lower(text[i]));
  const auto first = std::find_if(word.begin(), word.end(), is_word_char);
  word.erase(word.begin(), first);
  return word;
}

}  // namespace

std::string_view to_string(PosTag tag) noexcept {
  switch (tag) {
    case PosTag::NOUN: return "NOUN";
    case PosTag::VERB: return "VERB";
    case PosTag::ADJ: return "ADJ";
    case PosTag::PRON: return "PRON";
    case PosTag::CCONJ: return "CCONJ";
    case PosTag::DET: return "DET";
    case PosTag::ADP: return "ADP";
    case PosTag::NUM: return "NUM";
    case PosTag::OTHER: return "OTHER";
  }
  return "OTHER";
}

std::optional<PosTag> parse_pos_tag(std::string_view name) noexcept {
  for (PosTag tag : kAllPosTags) {
    if (to_string(tag) == name) return tag;
  }
  return std::nullopt;
}

bool is_punctuation(char c) noexcept { return !is_space(c) && !is_word_char(c); }

std::vector<Token> normalize_and_tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::string current;
  for (char c : text) {
    if (is_space(c)) {
      if (!current.empty()) tokens.push_back(Token{std::move(current), PosTag::OTHER});
      current.clear();
    } else if (is_word_char(c)) {
      current.push_back(ascii_lower(c));
    }
  }
  if (!current.empty()) tokens.push_back(Token{std::move(current), PosTag::OTHER});
  return tokens;
}

std::string join_surfaces(const std::vector<Token>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t.surface;
  }
  return out;
}

std::string normalize_text(std::string_view text) { return join_surfaces(normalize_and_tokenize(text)); }

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  auto emit = [&](std::string_view piece) {
    piece = trim(piece);
    if (!piece.empty()) out.emplace_back(piece);
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < text.size() && (is_terminator(text[end]) || is_closer(text[end]))) ++end;
    const bool at_boundary = end == text.size() || is_space(text[end]);
    bool abbreviation = false;
    if (at_boundary && text[i] == '.' && end == i + 1) {
      const std::string word = word_before(text, i);
      abbreviation = std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
    }
    if (at_boundary && !abbreviation) {
      emit(text.substr(start, end - start));
      start = end;
    }
    i = end;
  }
  emit(text.substr(start));
  return out;
}

void PosLexicon::add_entry(std::string word, PosTag tag) { entries_[std::move(word)] = tag; }

void PosLexicon::add_closed_class(std::string word, PosTag tag) { closed_[std::move(word)] = tag; }

std::optional<PosTag> PosLexicon::find(std::string_view word) const {
  const std::string key(word);
  if (auto it = closed_.find(key); it != closed_.end()) return it->second;
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  return std::nullopt;
}

PosTag PosLexicon::lookup(std::string_view word) const {
  if (auto tag = find(word)) return *tag;

  if (all_digits(word)) return PosTag::NUM;
  if (ends_with(word, "ing") && word.size() >= 5) return PosTag::VERB;
  if (ends_with(word, "ed") && word.size() >= 4) return PosTag::VERB;
  if (ends_with(word, "ly") && word.size() >= 4) return PosTag::OTHER;
  if (ends_with(word, "s") && word.size() >= 3) {
    const auto noun_stem = [&](std::string_view stem) {
      auto it = entries_.find(std::string(stem));
      return it != entries_.end() && it->second == PosTag::NOUN;
    };
    if (noun_stem(word.substr(0, word.size() - 1))) return PosTag::NOUN;
    if (ends_with(word, "es") && noun_stem(word.substr(0, word.size() - 2))) return PosTag::NOUN;
  }
  return PosTag::OTHER;
}

PosLexicon PosLexicon::parse(std::string_view text, const std::string& origin) {
  PosLexicon lex;
  std::optional<PosTag> section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    if (line.front() == '#') {
      const auto tag = parse_pos_tag(trim(line.substr(1)));
      if (!tag || (*tag != PosTag::PRON && *tag != PosTag::CCONJ && *tag != PosTag::DET && *tag != PosTag::ADP)) {
        throw ParseError(origin, ParseError::Where::Line, line_no,
                         "unknown closed-class section '" + std::string(line) + "'");
      }
      section = tag;
      continue;
    }

    const auto tab = line.find('\t');
    if (tab != std::string_view::npos) {
      const auto word = trim(line.substr(0, tab));
      const auto tag = parse_pos_tag(trim(line.substr(tab + 1)));
      if (word.empty() || !tag) {
        throw ParseError(origin, ParseError::Where::Line, line_no, "expected word<TAB>TAG");
      }
      lex.add_entry(normalize_text(word), *tag);
      continue;
    }

    if (!section) {
      throw ParseError(origin, ParseError::Where::Line, line_no, "bare word outside a closed-class section");
    }
    lex.add_closed_class(normalize_text(trim(line)), *section);
  }
  return lex;
}

PosLexicon PosLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError(path.string(), "cannot open POS lexicon");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

std::vector<Token> tag_tokens(std::vector<Token> tokens, const PosLexicon& lexicon) {
  for (auto& t : tokens) t.pos = lexicon.lookup(t.surface);
  return tokens;
}

SentenceRecord make_sentence(std::string raw, const PosLexicon& lexicon) {
  auto tokens = tag_tokens(normalize_and_tokenize(raw), lexicon);
  return SentenceRecord{std::move(raw), std::move(tokens)};
}

bool has_nominal(const SentenceRecord& sentence) noexcept {
  return std::any_of(sentence.tokens.begin(), sentence.tokens.end(),
                     [](const Token& t) { return t.pos == PosTag::NOUN || t.pos == PosTag::PRON; });
}

std::string_view indefinite_article(std::string_view next_word) noexcept {
  if (next_word.empty()) return "a";
  switch (ascii_lower(next_word.front())) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return "an";
    default: return "a";
  }
}

}  // namespace ctxgen
