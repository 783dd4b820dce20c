#include "ctxgen/resources.hpp"

#include "ctxgen/error.hpp"

namespace ctxgen {

Resources Resources::load(const ResourcePaths& paths, const std::function<void(const std::string&)>& warn) {
  const bool tsv = paths.wordnet_data.extension() == ".tsv";
  for (const auto* p : {&paths.lexicon, &paths.embeddings, &paths.wordnet_data}) {
    if (!std::filesystem::is_regular_file(*p)) throw ResourceError(p->string(), "resource file not found");
  }
  if (!tsv && !std::filesystem::is_regular_file(paths.wordnet_index)) {
    throw ResourceError(paths.wordnet_index.string(), "resource file not found");
  }
  auto lexicon = PosLexicon::load(paths.lexicon);
  auto embeddings = EmbeddingStore::load(paths.embeddings, warn);
  auto graph = tsv ? load_wordnet_tsv(paths.wordnet_data, paths.person_root)
                   : load_wordnet(paths.wordnet_data, paths.wordnet_index, paths.person_root);
  return Resources{std::move(lexicon), std::move(embeddings), std::move(graph)};
}

}  // namespace ctxgen
