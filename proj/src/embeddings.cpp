#include "ctxgen/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ctxgen/error.hpp"
#include "ctxgen/simd/vec_kernels.hpp"

namespace ctxgen {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool parse_double(std::string_view field, double& out) {
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

EmbeddingStore::EmbeddingStore(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InputError("embedding dimension must be positive");
}

bool EmbeddingStore::insert(std::string_view word, std::span<const double> vector) {
  if (vector.size() != dim_) {
    throw InputError("vector for '" + std::string(word) + "' has " + std::to_string(vector.size()) +
                     " values, store dim is " + std::to_string(dim_));
  }
  const auto [it, inserted] = index_.try_emplace(std::string(word), rows_.size() / dim_);
  if (inserted) {
    rows_.insert(rows_.end(), vector.begin(), vector.end());
  } else {
    std::copy(vector.begin(), vector.end(), rows_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_));
  }
  return !inserted;
}

std::optional<std::span<const double>> EmbeddingStore::find(std::string_view word) const {
  const auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return std::span<const double>(rows_.data() + it->second * dim_, dim_);
}

EmbeddingStore EmbeddingStore::parse(std::string_view text, const std::string& origin, const WarningSink& warn) {
  std::optional<EmbeddingStore> store;
  std::vector<double> values;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() < 2) throw ParseError(origin, ParseError::Where::Line, line_no, "word without vector values");

    const std::size_t count = fields.size() - 1;
    if (!store) store.emplace(count);
    if (count != store->dim()) {
      throw ParseError(origin, ParseError::Where::Line, line_no,
                       "expected " + std::to_string(store->dim()) + " floats, found " + std::to_string(count));
    }
    values.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
      if (!parse_double(fields[k + 1], values[k])) {
        throw ParseError(origin, ParseError::Where::Line, line_no,
                         "bad float '" + std::string(fields[k + 1]) + "'");
      }
    }
    std::string word;
    for (const auto& t : normalize_and_tokenize(fields[0])) word += t.surface;
    if (word.empty()) word = std::string(fields[0]);
    if (store->insert(word, values) && warn) {
      warn(origin + ":" + std::to_string(line_no) + ": duplicate word '" + word + "', later vector kept");
    }
  }
  if (!store) throw ParseError(origin, ParseError::Where::Line, 0, "empty word-vector file");
  return std::move(*store);
}

EmbeddingStore EmbeddingStore::load(const std::filesystem::path& path, const WarningSink& warn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError(path.string(), "cannot open word-vector file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string(), warn);
}

SentenceVector embed_sentence(std::span<const Token> tokens, const EmbeddingStore& store) {
  SentenceVector out{std::vector<double>(store.dim(), 0.0), 0.0};
  std::size_t found = 0;
  for (const auto& t : tokens) {
    if (auto v = store.find(t.surface)) {
      simd::accumulate(out.values, *v);
      ++found;
    }
  }
  if (found > 0) {
    simd::scale(out.values, 1.0 / static_cast<double>(found));
    out.coverage = static_cast<double>(found) / static_cast<double>(tokens.size());
  }
  return out;
}

SentenceVector embed_text(std::string_view text, const EmbeddingStore& store) {
  const auto tokens = normalize_and_tokenize(text);
  return embed_sentence(tokens, store);
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw InputError("cosine of vectors with dims " + std::to_string(u.size()) + " and " + std::to_string(v.size()));
  }
  const double nu = simd::squared_norm(u);
  const double nv = simd::squared_norm(v);
  if (nu == 0.0 || nv == 0.0) return 0.0;
  const double c = simd::dot(u, v) / (std::sqrt(nu) * std::sqrt(nv));
  return std::clamp(c, -1.0, 1.0);
}

double cosine_similarity(const SentenceVector& u, const SentenceVector& v) {
  return cosine_similarity(std::span<const double>(u.values), std::span<const double>(v.values));
}

}  // namespace ctxgen
