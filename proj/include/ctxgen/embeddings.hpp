#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ctxgen/text_core.hpp"

namespace ctxgen {

// Word vectors in one contiguous row-major block.
class EmbeddingStore {
 public:
  using WarningSink = std::function<void(const std::string&)>;

  explicit EmbeddingStore(std::size_t dim);

  // Text format: `word f1 f2 ... fD` per line, no header; D is taken from the
  // first line. Duplicate words: the last line wins and `warn` is told.
  static EmbeddingStore load(const std::filesystem::path& path, const WarningSink& warn = {});
  static EmbeddingStore parse(std::string_view text, const std::string& origin = "<memory>",
                              const WarningSink& warn = {});

  // Inserts or replaces. Returns true when the word was already present.
  bool insert(std::string_view word, std::span<const double> vector);

  std::optional<std::span<const double>> find(std::string_view word) const;
  bool contains(std::string_view word) const { return index_.contains(std::string(word)); }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return index_.size(); }

 private:
  std::size_t dim_;
  std::vector<double> rows_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct SentenceVector {
  std::vector<double> values;
  double coverage = 0.0;

  std::size_t dim() const noexcept { return values.size(); }
};

// Mean of the in-vocabulary token vectors; zero vector when none is known.
SentenceVector embed_sentence(std::span<const Token> tokens, const EmbeddingStore& store);
SentenceVector embed_text(std::string_view text, const EmbeddingStore& store);

// Cosine in [-1, 1]; 0 when either side has zero norm. Throws InputError on
// mismatched dimensions.
double cosine_similarity(const SentenceVector& u, const SentenceVector& v);
double cosine_similarity(std::span<const double> u, std::span<const double> v);

}  // namespace ctxgen
