#include "ctxgen/image_analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "ctxgen/error.hpp"

namespace ctxgen {

namespace {

using nlohmann::json;

BoundingBox parse_box(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) throw InputError(where + ": box must be [x, y, w, h]");
  BoundingBox b{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
  if (!(b.w > 0) || !(b.h > 0)) throw InputError(where + ": box width and height must be positive");
  return b;
}

double parse_confidence(const json& j, const std::string& where) {
  const double c = j.get<double>();
  if (!(c >= 0.0 && c <= 1.0)) throw InputError(where + ": confidence " + std::to_string(c) + " outside [0, 1]");
  return c;
}

std::optional<LabelEstimate> parse_label(const json& parent, const char* key) {
  if (!parent.contains(key) || parent.at(key).is_null()) return std::nullopt;
  const auto& j = parent.at(key);
  return LabelEstimate{j.at("label").get<std::string>(), parse_confidence(j.at("confidence"), key)};
}

std::string lower_ascii(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

// "/o/office" -> "office", "conference_room" -> "conference room".
std::string scene_phrase(const std::string& label) {
  std::string s = label;
  // Places365 categories look like /c/category or /c/category/subcategory.
  if (s.size() > 3 && s[0] == '/' && s[2] == '/') s = s.substr(3);
  std::replace(s.begin(), s.end(), '_', ' ');
  std::replace(s.begin(), s.end(), '/', ' ');
  return lower_ascii(s);
}

std::string strip_terminators(std::string s) {
  while (!s.empty() && (s.back() == '.' || s.back() == ' ' || s.back() == '!' || s.back() == '?')) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && s[start] == ' ') ++start;
  return s.substr(start);
}

bool is_person_noun(const Token& t, const SynsetGraph& graph) {
  return t.pos == PosTag::NOUN && graph.is_person_related(t.surface);
}

}  // namespace

ImageBundle parse_bundle(const json& j) {
  ImageBundle b;
  try {
    b.image_id = j.at("image_id").get<std::string>();
    const std::string where = "bundle '" + b.image_id + "'";
    b.detections.image_w = j.at("width").get<int>();
    b.detections.image_h = j.at("height").get<int>();
    if (b.detections.image_w <= 0 || b.detections.image_h <= 0) throw InputError(where + ": image size must be positive");

    for (const auto& c : j.value("captions", json::array())) {
      RegionCaption rc{c.at("text").get<std::string>(), parse_confidence(c.at("confidence"), where),
                       parse_box(c.at("box"), where)};
      if (normalize_and_tokenize(rc.text).empty()) throw InputError(where + ": empty caption text");
      b.captions.push_back(std::move(rc));
    }
    for (const auto& d : j.value("detections", json::array())) {
      if (d.value("label", std::string("person")) != "person") continue;
      PersonDetection pd{parse_confidence(d.at("confidence"), where), parse_box(d.at("box"), where)};
      const auto& box = pd.box;
      if (box.x < 0 || box.y < 0 || box.x + box.w > b.detections.image_w || box.y + box.h > b.detections.image_h) {
        throw InputError(where + ": person box lies outside the image");
      }
      b.detections.people.push_back(pd);
    }
    if (j.contains("classifiers") && !j.at("classifiers").is_null()) {
      const auto& cls = j.at("classifiers");
      if (cls.contains("age") && !cls.at("age").is_null()) {
        const auto& a = cls.at("age");
        AgeEstimate age{a.at("years").get<double>(), parse_confidence(a.at("confidence"), where)};
        if (!(age.years >= 0.0)) throw InputError(where + ": negative age");
        b.classifiers.age = age;
      }
      b.classifiers.emotion = parse_label(cls, "emotion");
      b.classifiers.scene = parse_label(cls, "scene");
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("bundle: ") + e.what());
  }
  return b;
}

ImageBundle load_bundle(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError(path.string(), "cannot open bundle");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path.string(), ParseError::Where::ByteOffset, 0, e.what());
  }
  return parse_bundle(j);
}

int gate_people(const DetectionSet& detections, const PipelineConfig& config) {
  return static_cast<int>(std::count_if(detections.people.begin(), detections.people.end(), [&](const PersonDetection& p) {
    return p.confidence >= config.min_person_prob;
  }));
}

std::vector<RegionCaption> dedup_captions(const std::vector<RegionCaption>& captions, const EmbeddingStore& store,
                                          const PipelineConfig& config) {
  std::vector<RegionCaption> kept;
  std::vector<SentenceVector> kept_vectors;
  for (const auto& c : captions) {
    auto v = embed_text(c.text, store);
    const bool duplicate = std::any_of(kept_vectors.begin(), kept_vectors.end(), [&](const SentenceVector& k) {
      return cosine_similarity(v, k) > config.t_text_sim;
    });
    if (!duplicate) {
      kept.push_back(c);
      kept_vectors.push_back(std::move(v));
    }
  }
  return kept;
}

std::vector<RegionCaption> filter_person_captions(const std::vector<RegionCaption>& captions,
                                                  const PosLexicon& lexicon, const SynsetGraph& graph) {
  std::vector<RegionCaption> kept;
  for (const auto& c : captions) {
    const auto sentence = make_sentence(c.text, lexicon);
    if (has_nominal(sentence) && !person_nouns_in(sentence, graph).empty()) kept.push_back(c);
  }
  return kept;
}

double median_token_count(const std::vector<RegionCaption>& captions) {
  if (captions.empty()) return 0.0;
  std::vector<std::size_t> counts;
  counts.reserve(captions.size());
  for (const auto& c : captions) counts.push_back(normalize_and_tokenize(c.text).size());
  std::sort(counts.begin(), counts.end());
  const std::size_t n = counts.size();
  if (n % 2 == 1) return static_cast<double>(counts[n / 2]);
  return (static_cast<double>(counts[n / 2 - 1]) + static_cast<double>(counts[n / 2])) / 2.0;
}

std::vector<RegionCaption> filter_short_captions(const std::vector<RegionCaption>& captions) {
  const double median = median_token_count(captions);
  std::vector<RegionCaption> kept;
  for (const auto& c : captions) {
    if (static_cast<double>(normalize_and_tokenize(c.text).size()) >= median) kept.push_back(c);
  }
  return kept;
}

StandardizedCaptions standardize_subject(const std::vector<RegionCaption>& captions, const PosLexicon& lexicon,
                                         const SynsetGraph& graph) {
  std::vector<std::vector<Token>> tokenized;
  tokenized.reserve(captions.size());
  std::unordered_map<std::string, std::size_t> frequency;
  std::vector<std::string> first_seen;
  for (const auto& c : captions) {
    tokenized.push_back(tag_tokens(normalize_and_tokenize(c.text), lexicon));
    for (const auto& t : tokenized.back()) {
      if (!is_person_noun(t, graph)) continue;
      if (frequency[t.surface]++ == 0) first_seen.push_back(t.surface);
    }
  }

  StandardizedCaptions out;
  out.chosen_noun = "person";
  std::size_t best = 0;
  for (const auto& noun : first_seen) {
    if (frequency[noun] > best) {
      best = frequency[noun];
      out.chosen_noun = noun;
    }
  }

  for (std::size_t i = 0; i < captions.size(); ++i) {
    auto& tokens = tokenized[i];
    if (best > 0) {
      for (std::size_t k = 0; k < tokens.size(); ++k) {
        if (!is_person_noun(tokens[k], graph) || tokens[k].surface == out.chosen_noun) continue;
        tokens[k].surface = out.chosen_noun;
        if (k > 0 && (tokens[k - 1].surface == "a" || tokens[k - 1].surface == "an")) {
          tokens[k - 1].surface = std::string(indefinite_article(out.chosen_noun));
        }
      }
    }
    RegionCaption rc = captions[i];
    rc.text = join_surfaces(tokens);
    out.captions.push_back(std::move(rc));
  }
  return out;
}

std::string bin_age_group(double years, const PipelineConfig& config) {
  if (!(years >= 0.0) || !std::isfinite(years)) throw InputError("age must be a non-negative number");
  for (const auto& bin : config.age_boundaries) {
    if (!bin.upper || years < *bin.upper) return bin.label;
  }
  return config.age_boundaries.back().label;
}

std::vector<std::string> render_classifier_sentences(const ClassifierReport& report, int people,
                                                     const std::string& chosen_noun, const PipelineConfig& config) {
  std::vector<std::string> out;
  const std::string noun_article(indefinite_article(chosen_noun));
  if (people == 1 && report.age) {
    const std::string age = lower_ascii(bin_age_group(report.age->years, config));
    out.push_back("there is " + std::string(indefinite_article(age)) + " " + age + " " + chosen_noun);
  }
  if (people == 1 && report.emotion && report.emotion->confidence > config.t_model_confidence) {
    out.push_back("there is " + noun_article + " " + chosen_noun + " who is " + lower_ascii(report.emotion->label));
  }
  if (report.scene && report.scene->confidence > config.t_model_confidence) {
    out.push_back("there is " + noun_article + " " + chosen_noun + " in the " + scene_phrase(report.scene->label));
  }
  return out;
}

std::string concatenate_sentences(const std::vector<std::string>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    const std::string clean = strip_terminators(s);
    if (clean.empty()) continue;
    if (!out.empty()) out += ". ";
    out += clean;
  }
  if (!out.empty()) out += ".";
  return out;
}

std::optional<AnalyzerText> build_analyzer_text(const std::vector<RegionCaption>& filtered,
                                                const std::vector<std::string>& classifier_sentences,
                                                const std::string& chosen_noun, const PosLexicon& lexicon) {
  std::vector<std::string> raw;
  for (const auto& c : filtered) raw.push_back(strip_terminators(c.text));
  for (const auto& s : classifier_sentences) raw.push_back(strip_terminators(s));
  std::erase_if(raw, [](const std::string& s) { return s.empty(); });
  if (raw.empty()) return std::nullopt;

  AnalyzerText text;
  text.chosen_noun = chosen_noun;
  text.concatenated = concatenate_sentences(raw);
  for (auto& s : raw) text.sentences.push_back(make_sentence(std::move(s), lexicon));
  return text;
}

CascadeResult run_filter_cascade(const std::vector<RegionCaption>& captions, const Resources& resources,
                                 const PipelineConfig& config) {
  CascadeResult r;
  r.counts.input = captions.size();
  const auto deduped = dedup_captions(captions, resources.embeddings, config);
  r.counts.after_dedup = deduped.size();
  const auto people = filter_person_captions(deduped, resources.lexicon, resources.graph);
  r.counts.after_person = people.size();
  const auto longer = filter_short_captions(people);
  r.counts.after_short = longer.size();
  r.standardized = standardize_subject(longer, resources.lexicon, resources.graph);
  return r;
}

}  // namespace ctxgen
