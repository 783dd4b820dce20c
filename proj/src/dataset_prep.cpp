#include "ctxgen/dataset_prep.hpp"

#include <algorithm>
#include <fstream>

#include "ctxgen/error.hpp"

namespace ctxgen {

namespace {

using nlohmann::json;

// Image ids come from input files; keep them from naming paths outside the
// output directory.
std::string file_stem_for(const std::string& image_id) {
  std::string out;
  for (char c : image_id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? std::string("_") : out;
}

BoundingBox region_box(const json& r) {
  if (r.contains("box")) {
    const auto& b = r.at("box");
    return {b.at(0).get<double>(), b.at(1).get<double>(), b.at(2).get<double>(), b.at(3).get<double>()};
  }
  return {r.at("x").get<double>(), r.at("y").get<double>(), r.at("width").get<double>(), r.at("height").get<double>()};
}

std::vector<std::filesystem::path> json_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json" && entry.path().filename() != "manifest.json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

ImageRecord parse_image_record(const json& j) {
  ImageRecord rec;
  try {
    rec.image_id = j.at("image_id").is_string() ? j.at("image_id").get<std::string>()
                                                : std::to_string(j.at("image_id").get<long long>());
    rec.width = j.at("width").get<int>();
    rec.height = j.at("height").get<int>();
    if (rec.width <= 0 || rec.height <= 0) throw InputError("record '" + rec.image_id + "': image size must be positive");
    rec.detections.image_w = rec.width;
    rec.detections.image_h = rec.height;
    for (const auto& r : j.value("regions", json::array())) {
      RegionCaption rc;
      rc.text = r.contains("phrase") ? r.at("phrase").get<std::string>() : r.at("text").get<std::string>();
      rc.confidence = r.value("confidence", 1.0);
      rc.box = region_box(r);
      rec.region_annotations.push_back(std::move(rc));
    }
    rec.reference_paragraph = j.value("paragraph", std::string());
    for (const auto& d : j.value("detections", json::array())) {
      if (d.value("label", std::string("person")) != "person") continue;
      const auto& b = d.at("box");
      rec.detections.people.push_back(
          {d.at("confidence").get<double>(),
           {b.at(0).get<double>(), b.at(1).get<double>(), b.at(2).get<double>(), b.at(3).get<double>()}});
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("image record: ") + e.what());
  }
  return rec;
}

json to_json(const ImageRecord& record) {
  json regions = json::array();
  for (const auto& r : record.region_annotations) {
    regions.push_back({{"text", r.text}, {"box", {r.box.x, r.box.y, r.box.w, r.box.h}}});
  }
  json detections = json::array();
  for (const auto& p : record.detections.people) {
    detections.push_back({{"label", "person"}, {"confidence", p.confidence}, {"box", {p.box.x, p.box.y, p.box.w, p.box.h}}});
  }
  return {{"image_id", record.image_id}, {"width", record.width},    {"height", record.height},
          {"regions", regions},         {"paragraph", record.reference_paragraph}, {"detections", detections}};
}

std::string_view to_string(DropReason reason) noexcept {
  switch (reason) {
    case DropReason::None: return "kept";
    case DropReason::NoPersonAnnotation: return "no_person_annotation";
    case DropReason::NoLargePersonBox: return "no_large_person_box";
  }
  return "kept";
}

DropReason check_image(const ImageRecord& record, const PosLexicon& lexicon, const SynsetGraph& graph,
                       const PipelineConfig& config) {
  const bool person_annotation =
      std::any_of(record.region_annotations.begin(), record.region_annotations.end(), [&](const RegionCaption& r) {
        return !person_nouns_in(make_sentence(r.text, lexicon), graph).empty();
      });
  if (!person_annotation) return DropReason::NoPersonAnnotation;

  const double image_area = static_cast<double>(record.width) * static_cast<double>(record.height);
  const bool large_person =
      std::any_of(record.detections.people.begin(), record.detections.people.end(), [&](const PersonDetection& p) {
        return p.confidence >= config.min_person_prob && p.box.area() > config.person_area_ratio * image_area;
      });
  return large_person ? DropReason::None : DropReason::NoLargePersonBox;
}

std::vector<ImageRecord> filter_images(const std::vector<ImageRecord>& records, const PosLexicon& lexicon,
                                       const SynsetGraph& graph, const PipelineConfig& config) {
  std::vector<ImageRecord> kept;
  for (const auto& r : records) {
    if (check_image(r, lexicon, graph, config) == DropReason::None) kept.push_back(r);
  }
  return kept;
}

std::string filter_reference_sentences(std::string_view paragraph, const PosLexicon& lexicon, const SynsetGraph& graph) {
  std::string out;
  for (auto& sentence : split_sentences(paragraph)) {
    if (person_nouns_in(make_sentence(sentence, lexicon), graph).empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out += sentence;
  }
  return out;
}

json PrepReport::to_json() const {
  json dropped_json = json::array();
  for (const auto& d : dropped) dropped_json.push_back({{"image_id", d.image_id}, {"reason", to_string(d.reason)}});
  json skipped_json = json::array();
  for (const auto& s : skipped) skipped_json.push_back({{"file", s.file}, {"reason", s.reason}});
  return {{"kept", kept}, {"dropped", dropped_json}, {"skipped", skipped_json}, {"empty_reference", empty_reference}};
}

PrepReport prepare_dataset(const std::filesystem::path& input_dir, const std::filesystem::path& output_dir,
                           const Resources& resources, const PipelineConfig& config) {
  if (!std::filesystem::is_directory(input_dir)) throw ResourceError(input_dir.string(), "input is not a directory");
  std::filesystem::create_directories(output_dir);

  PrepReport report;
  for (const auto& file : json_files(input_dir)) {
    ImageRecord record;
    try {
      std::ifstream in(file);
      json j;
      in >> j;
      record = parse_image_record(j);
    } catch (const std::exception& e) {
      report.skipped.push_back({file.filename().string(), e.what()});
      continue;
    }

    const DropReason reason = check_image(record, resources.lexicon, resources.graph, config);
    if (reason != DropReason::None) {
      report.dropped.push_back({record.image_id, reason});
      continue;
    }
    record.reference_paragraph =
        filter_reference_sentences(record.reference_paragraph, resources.lexicon, resources.graph);
    if (record.reference_paragraph.empty()) report.empty_reference.push_back(record.image_id);
    report.kept.push_back(record.image_id);

    std::ofstream out(output_dir / (file_stem_for(record.image_id) + ".json"));
    out << to_json(record).dump(2) << '\n';
  }

  std::ofstream manifest(output_dir / "manifest.json");
  manifest << report.to_json().dump(2) << '\n';
  return report;
}

}  // namespace ctxgen
