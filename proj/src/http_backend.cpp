#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "ctxgen/context_gen.hpp"
#include "ctxgen/error.hpp"

namespace ctxgen {

namespace {

using nlohmann::json;

std::string normalize_url(std::string url) {
  if (url.rfind("http://", 0) != 0 && url.rfind("https://", 0) != 0) url = "http://" + url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  return url;
}

std::string error_message(const httplib::Response& res) {
  try {
    const auto j = json::parse(res.body);
    if (j.is_object() && j.contains("error")) return j.at("error").get<std::string>();
  } catch (const json::exception&) {
  }
  return res.body.substr(0, 200);
}

// Releases a semaphore slot on scope exit.
class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<1024>& sem) : sem_(sem) { sem_.acquire(); }
  ~SlotGuard() { sem_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<1024>& sem_;
};

std::vector<std::string> decode_summaries(const std::string& body, std::span<const int> beam_widths) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("summarizer response is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("summaries") || !j.at("summaries").is_array()) {
    throw ProtocolError("summarizer response lacks a 'summaries' array");
  }
  const auto& arr = j.at("summaries");
  if (arr.size() != beam_widths.size()) {
    throw ProtocolError("summarizer returned " + std::to_string(arr.size()) + " summaries, " +
                        std::to_string(beam_widths.size()) + " requested");
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& item = arr[i];
    if (!item.is_object() || !item.contains("beam_width") || !item.contains("text") ||
        !item.at("beam_width").is_number_integer() || !item.at("text").is_string()) {
      throw ProtocolError("summary " + std::to_string(i) + " is not {beam_width: int, text: str}");
    }
    if (item.at("beam_width").get<int>() != beam_widths[i]) {
      throw ProtocolError("summary " + std::to_string(i) + " has beam_width " +
                          std::to_string(item.at("beam_width").get<int>()) + ", expected " +
                          std::to_string(beam_widths[i]));
    }
    out.push_back(item.at("text").get<std::string>());
  }
  return out;
}

}  // namespace

HttpBackend::HttpBackend(std::string base_url, HttpBackendOptions options)
    : base_url_(normalize_url(std::move(base_url))),
      options_(options),
      in_flight_(std::clamp(options.max_in_flight, 1, 1024)) {
  if (options_.attempts < 1) options_.attempts = 1;
}

bool HttpBackend::healthy() const {
  httplib::Client client(base_url_);
  client.set_connection_timeout(options_.connect_timeout);
  client.set_read_timeout(options_.read_timeout);
  const auto res = client.Get("/health");
  return res && res->status == 200;
}

std::vector<std::string> HttpBackend::summarize(const AnalyzerText& text, std::span<const int> beam_widths) {
  SlotGuard slot(in_flight_);
  const json request = {{"text", text.concatenated}, {"beam_widths", std::vector<int>(beam_widths.begin(), beam_widths.end())}};
  const std::string body = request.dump();

  auto backoff = options_.initial_backoff;
  std::string last_error;
  for (int attempt = 1; attempt <= options_.attempts; ++attempt) {
    httplib::Client client(base_url_);
    client.set_connection_timeout(options_.connect_timeout);
    client.set_read_timeout(options_.read_timeout);
    const auto res = client.Post("/summarize", body, "application/json");
    if (!res) {
      last_error = base_url_ + "/summarize: " + httplib::to_string(res.error());
    } else if (res->status == 200) {
      return decode_summaries(res->body, beam_widths);
    } else if (res->status >= 400 && res->status < 500) {
      throw BackendError(base_url_ + "/summarize rejected the request (" + std::to_string(res->status) +
                             "): " + error_message(*res),
                         attempt);
    } else {
      last_error = base_url_ + "/summarize answered " + std::to_string(res->status) + ": " + error_message(*res);
    }
    if (attempt < options_.attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw BackendError(last_error, options_.attempts);
}

std::unique_ptr<SummarizerBackend> make_backend(const std::string& spec, const EmbeddingStore& store,
                                                HttpBackendOptions options) {
  if (spec == "fallback") return std::make_unique<ExtractiveBackend>(store);
  if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0) {
    return std::make_unique<HttpBackend>(spec, options);
  }
  if (spec.rfind("http:", 0) == 0 && spec.size() > 5) return std::make_unique<HttpBackend>(spec.substr(5), options);
  throw InputError("unknown backend '" + spec + "' (expected 'fallback' or 'http:URL')");
}

}  // namespace ctxgen
