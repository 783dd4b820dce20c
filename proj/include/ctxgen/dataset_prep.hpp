#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctxgen/config.hpp"
#include "ctxgen/image_analyzer.hpp"
#include "ctxgen/lexnet.hpp"
#include "ctxgen/resources.hpp"

namespace ctxgen {

struct ImageRecord {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::vector<RegionCaption> region_annotations;
  std::string reference_paragraph;
  DetectionSet detections;
};

// Accepts Visual Genome style regions ({"phrase", "x", "y", "width",
// "height"}) or bundle style ({"text", "box": [x, y, w, h]}).
ImageRecord parse_image_record(const nlohmann::json& j);
nlohmann::json to_json(const ImageRecord& record);

enum class DropReason { None, NoPersonAnnotation, NoLargePersonBox };
std::string_view to_string(DropReason reason) noexcept;

// Predicate (a): some region annotation names a person.
// Predicate (b): some confident person box covers strictly more than
// person_area_ratio of the image.
DropReason check_image(const ImageRecord& record, const PosLexicon& lexicon, const SynsetGraph& graph,
                       const PipelineConfig& config);

std::vector<ImageRecord> filter_images(const std::vector<ImageRecord>& records, const PosLexicon& lexicon,
                                       const SynsetGraph& graph, const PipelineConfig& config);

// Sentences without a person noun are removed; the rest are re-joined by spaces.
std::string filter_reference_sentences(std::string_view paragraph, const PosLexicon& lexicon, const SynsetGraph& graph);

struct PrepReport {
  struct Dropped {
    std::string image_id;
    DropReason reason;
  };
  struct Skipped {
    std::string file;
    std::string reason;
  };
  std::vector<std::string> kept;
  std::vector<Dropped> dropped;
  std::vector<Skipped> skipped;
  std::vector<std::string> empty_reference;  // kept, but no person sentence left

  nlohmann::json to_json() const;
};

// Reads every *.json record in `input_dir` (sorted by name), writes kept
// records with filtered reference paragraphs to `output_dir`, plus
// manifest.json. Unreadable records are skipped and reported.
PrepReport prepare_dataset(const std::filesystem::path& input_dir, const std::filesystem::path& output_dir,
                           const Resources& resources, const PipelineConfig& config);

}  // namespace ctxgen
