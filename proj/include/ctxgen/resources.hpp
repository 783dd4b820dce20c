#pragma once

#include <functional>
#include <string>

#include "ctxgen/config.hpp"
#include "ctxgen/embeddings.hpp"
#include "ctxgen/lexnet.hpp"
#include "ctxgen/text_core.hpp"

namespace ctxgen {

// Read-only linguistic resources shared by every image in a run.
struct Resources {
  PosLexicon lexicon;
  EmbeddingStore embeddings;
  SynsetGraph graph;

  // Files ending in ".tsv" under wordnet_data use the synset TSV format;
  // anything else is read as data.noun/index.noun. Throws ResourceError
  // naming the first missing file.
  static Resources load(const ResourcePaths& paths, const std::function<void(const std::string&)>& warn = {});
};

}  // namespace ctxgen
