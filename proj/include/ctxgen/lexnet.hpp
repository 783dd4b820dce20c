#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ctxgen/text_core.hpp"

namespace ctxgen {

struct SynsetSpec {
  std::string id;
  std::vector<std::string> lemmas;
  std::vector<std::string> hypernyms;
};

// Noun is-a hierarchy with a designated "person" concept.
class SynsetGraph {
 public:
  // Resolves hypernym ids and picks the person root: `person_root_id` when
  // given, else the first sense of the lemma "person". Sense order follows
  // `sense_order` for lemmas listed there and spec order otherwise.
  // Throws ResourceError on dangling edges or a missing root.
  static SynsetGraph build(std::vector<SynsetSpec> specs, const std::optional<std::string>& person_root_id = {},
                           const std::unordered_map<std::string, std::vector<std::string>>& sense_order = {});

  std::size_t synset_count() const noexcept { return synsets_.size(); }
  std::span<const std::size_t> person_roots() const noexcept { return roots_; }
  const std::string& synset_id(std::size_t index) const { return synsets_.at(index).id; }
  std::optional<std::size_t> find_synset(std::string_view id) const;

  // Synset indices for a lemma in sense order; empty when unknown.
  std::span<const std::size_t> senses(std::string_view lemma) const;
  std::span<const std::string> lemmas(std::size_t index) const { return synsets_.at(index).lemmas; }

  bool is_person_related(std::string_view word) const;
  bool share_synset(std::string_view a, std::string_view b) const;

 private:
  struct Node {
    std::string id;
    std::vector<std::string> lemmas;
    std::vector<std::size_t> hypernyms;
  };

  bool reaches_root(std::size_t start) const;

  std::vector<Node> synsets_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_lemma_;
  std::vector<std::size_t> roots_;
  std::vector<char> is_root_;
};

// WordNet 3.x grind format (data.noun + index.noun). Hypernym (`@`) and
// instance hypernym (`@i`) pointers become edges.
SynsetGraph load_wordnet(const std::filesystem::path& data_path, const std::filesystem::path& index_path,
                         const std::optional<std::string>& person_root_id = {});

// `synset_id<TAB>lemma1,lemma2<TAB>hypernym_id1,hypernym_id2`; '#' starts a comment line.
SynsetGraph load_wordnet_tsv(const std::filesystem::path& path, const std::optional<std::string>& person_root_id = {});
SynsetGraph parse_wordnet_tsv(std::string_view text, const std::string& origin = "<memory>",
                              const std::optional<std::string>& person_root_id = {});

// Personal pronouns that count as person references.
bool is_personal_pronoun(std::string_view word) noexcept;

// NOUN/PRON tokens of a tagged sentence that name a person, in order.
std::vector<std::string> person_nouns_in(const SentenceRecord& sentence, const SynsetGraph& graph);

}  // namespace ctxgen
