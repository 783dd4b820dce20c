#include "ctxgen/lexnet.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>

#include "ctxgen/error.hpp"

namespace ctxgen {

namespace {

constexpr std::array<std::string_view, 10> kPersonalPronouns = {"he",   "she", "him", "her", "they",
                                                                "them", "i",   "we",  "you", "who"};

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError(path.string(), std::string("cannot open ") + what);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string lower_lemma(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (c == '(') break;  // adjective markers such as "(a)"
    out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

// Whitespace tokenizer that remembers where each field starts in the file.
class FieldCursor {
 public:
  FieldCursor(std::string_view line, std::size_t line_offset, const std::string& origin)
      : line_(line), base_(line_offset), origin_(origin) {}

  std::string_view next(const char* what) {
    while (pos_ < line_.size() && line_[pos_] == ' ') ++pos_;
    const std::size_t start = pos_;
    while (pos_ < line_.size() && line_[pos_] != ' ') ++pos_;
    if (pos_ == start) fail(std::string("missing ") + what);
    return line_.substr(start, pos_ - start);
  }

  std::size_t next_number(const char* what, int base) {
    const auto field = next(what);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value, base);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      fail(std::string("bad ") + what + " '" + std::string(field) + "'");
    }
    return value;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(origin_, ParseError::Where::ByteOffset, base_ + pos_, what);
  }

 private:
  std::string_view line_;
  std::size_t base_;
  const std::string& origin_;
  std::size_t pos_ = 0;
};

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, pos);
    pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
  }
}

std::vector<std::string> split_csv(std::string_view field) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= field.size()) {
    const std::size_t comma = field.find(',', pos);
    auto item = field.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

bool is_personal_pronoun(std::string_view word) noexcept {
  return std::find(kPersonalPronouns.begin(), kPersonalPronouns.end(), word) != kPersonalPronouns.end();
}

SynsetGraph SynsetGraph::build(std::vector<SynsetSpec> specs, const std::optional<std::string>& person_root_id,
                               const std::unordered_map<std::string, std::vector<std::string>>& sense_order) {
  SynsetGraph g;
  g.synsets_.reserve(specs.size());
  for (auto& spec : specs) {
    if (!g.by_id_.try_emplace(spec.id, g.synsets_.size()).second) {
      throw ResourceError(spec.id, "duplicate synset id");
    }
    Node node;
    node.id = std::move(spec.id);
    for (auto& lemma : spec.lemmas) node.lemmas.push_back(lower_lemma(lemma));
    g.synsets_.push_back(std::move(node));
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (const auto& h : specs[i].hypernyms) {
      const auto it = g.by_id_.find(h);
      if (it == g.by_id_.end()) {
        throw ResourceError(g.synsets_[i].id, "hypernym '" + h + "' names no synset");
      }
      g.synsets_[i].hypernyms.push_back(it->second);
    }
  }

  for (std::size_t i = 0; i < g.synsets_.size(); ++i) {
    for (const auto& lemma : g.synsets_[i].lemmas) {
      auto& list = g.by_lemma_[lemma];
      if (std::find(list.begin(), list.end(), i) == list.end()) list.push_back(i);
    }
  }
  for (const auto& [lemma, ids] : sense_order) {
    std::vector<std::size_t> ordered;
    for (const auto& id : ids) {
      const auto it = g.by_id_.find(id);
      if (it == g.by_id_.end()) throw ResourceError(id, "index entry for '" + lemma + "' names no synset");
      if (std::find(ordered.begin(), ordered.end(), it->second) == ordered.end()) ordered.push_back(it->second);
    }
    auto& list = g.by_lemma_[lower_lemma(lemma)];
    for (std::size_t idx : list) {
      if (std::find(ordered.begin(), ordered.end(), idx) == ordered.end()) ordered.push_back(idx);
    }
    list = std::move(ordered);
  }

  if (person_root_id) {
    const auto it = g.by_id_.find(*person_root_id);
    if (it == g.by_id_.end()) throw ResourceError(*person_root_id, "configured person root is not a synset");
    g.roots_.push_back(it->second);
  } else {
    const auto it = g.by_lemma_.find("person");
    if (it == g.by_lemma_.end() || it->second.empty()) {
      throw ResourceError("person", "no synset carries the lemma 'person'");
    }
    g.roots_.push_back(it->second.front());
  }
  g.is_root_.assign(g.synsets_.size(), 0);
  for (std::size_t r : g.roots_) g.is_root_[r] = 1;
  return g;
}

std::optional<std::size_t> SynsetGraph::find_synset(std::string_view id) const {
  const auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::size_t> SynsetGraph::senses(std::string_view lemma) const {
  const auto it = by_lemma_.find(std::string(lemma));
  if (it == by_lemma_.end()) return {};
  return it->second;
}

bool SynsetGraph::reaches_root(std::size_t start) const {
  std::vector<char> visited(synsets_.size(), 0);
  std::deque<std::size_t> frontier{start};
  visited[start] = 1;
  while (!frontier.empty()) {
    const std::size_t cur = frontier.front();
    frontier.pop_front();
    if (is_root_[cur]) return true;
    for (std::size_t up : synsets_[cur].hypernyms) {
      if (!visited[up]) {
        visited[up] = 1;
        frontier.push_back(up);
      }
    }
  }
  return false;
}

bool SynsetGraph::is_person_related(std::string_view word) const {
  if (is_personal_pronoun(word)) return true;
  for (std::size_t s : senses(word)) {
    if (reaches_root(s)) return true;
  }
  return false;
}

bool SynsetGraph::share_synset(std::string_view a, std::string_view b) const {
  const auto sa = senses(a);
  const auto sb = senses(b);
  return std::any_of(sa.begin(), sa.end(), [&](std::size_t x) { return std::find(sb.begin(), sb.end(), x) != sb.end(); });
}

SynsetGraph load_wordnet(const std::filesystem::path& data_path, const std::filesystem::path& index_path,
                         const std::optional<std::string>& person_root_id) {
  const std::string data = read_file(data_path, "WordNet data file");
  const std::string index = read_file(index_path, "WordNet index file");
  const std::string data_origin = data_path.string();
  const std::string index_origin = index_path.string();

  std::vector<SynsetSpec> specs;
  for_each_line(data, [&](std::string_view line, std::size_t offset) {
    if (line.empty() || line.front() == ' ') return;  // licence header
    const auto bar = line.find(" | ");
    FieldCursor cur(line.substr(0, bar), offset, data_origin);
    const auto offset_field = cur.next("synset offset");
    std::size_t declared = 0;
    std::from_chars(offset_field.data(), offset_field.data() + offset_field.size(), declared);
    if (offset_field.size() != 8 || declared != offset) {
      cur.fail("synset offset field '" + std::string(offset_field) + "' does not match byte offset");
    }
    cur.next_number("lex_filenum", 10);
    const auto ss_type = cur.next("ss_type");
    if (ss_type != "n") cur.fail("ss_type '" + std::string(ss_type) + "' is not a noun");

    SynsetSpec spec;
    spec.id = std::string(offset_field);
    const std::size_t words = cur.next_number("w_cnt", 16);
    for (std::size_t w = 0; w < words; ++w) {
      spec.lemmas.emplace_back(cur.next("word"));
      cur.next_number("lex_id", 16);
    }
    const std::size_t pointers = cur.next_number("p_cnt", 10);
    for (std::size_t p = 0; p < pointers; ++p) {
      const auto symbol = cur.next("pointer_symbol");
      const auto target = cur.next("pointer offset");
      const auto pos = cur.next("pointer pos");
      cur.next("source/target");
      if ((symbol == "@" || symbol == "@i") && pos == "n") spec.hypernyms.emplace_back(target);
    }
    specs.push_back(std::move(spec));
  });

  std::unordered_map<std::string, std::vector<std::string>> sense_order;
  for_each_line(index, [&](std::string_view line, std::size_t offset) {
    if (line.empty() || line.front() == ' ') return;
    FieldCursor cur(line, offset, index_origin);
    const std::string lemma(cur.next("lemma"));
    cur.next("pos");
    const std::size_t synset_cnt = cur.next_number("synset_cnt", 10);
    const std::size_t p_cnt = cur.next_number("p_cnt", 10);
    for (std::size_t p = 0; p < p_cnt; ++p) cur.next("ptr_symbol");
    cur.next_number("sense_cnt", 10);
    cur.next_number("tagsense_cnt", 10);
    auto& order = sense_order[lemma];
    for (std::size_t s = 0; s < synset_cnt; ++s) order.emplace_back(cur.next("synset_offset"));
  });

  return SynsetGraph::build(std::move(specs), person_root_id, sense_order);
}

SynsetGraph parse_wordnet_tsv(std::string_view text, const std::string& origin,
                              const std::optional<std::string>& person_root_id) {
  std::vector<SynsetSpec> specs;
  for_each_line(text, [&](std::string_view line, std::size_t offset) {
    if (line.empty() || line.front() == '#') return;
    const auto t1 = line.find('\t');
    if (t1 == std::string_view::npos) {
      throw ParseError(origin, ParseError::Where::ByteOffset, offset, "expected id<TAB>lemmas<TAB>hypernyms");
    }
    const auto t2 = line.find('\t', t1 + 1);
    SynsetSpec spec;
    spec.id = std::string(line.substr(0, t1));
    spec.lemmas = split_csv(line.substr(t1 + 1, t2 == std::string_view::npos ? std::string_view::npos : t2 - t1 - 1));
    if (t2 != std::string_view::npos) spec.hypernyms = split_csv(line.substr(t2 + 1));
    if (spec.id.empty() || spec.lemmas.empty()) {
      throw ParseError(origin, ParseError::Where::ByteOffset, offset, "synset needs an id and at least one lemma");
    }
    specs.push_back(std::move(spec));
  });
  return SynsetGraph::build(std::move(specs), person_root_id);
}

SynsetGraph load_wordnet_tsv(const std::filesystem::path& path, const std::optional<std::string>& person_root_id) {
  return parse_wordnet_tsv(read_file(path, "synset TSV"), path.string(), person_root_id);
}

std::vector<std::string> person_nouns_in(const SentenceRecord& sentence, const SynsetGraph& graph) {
  std::vector<std::string> out;
  for (const auto& t : sentence.tokens) {
    if ((t.pos == PosTag::NOUN || t.pos == PosTag::PRON) && graph.is_person_related(t.surface)) {
      out.push_back(t.surface);
    }
  }
  return out;
}

}  // namespace ctxgen
