#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <httplib.h>
#include <json.hpp>

#include "ctxgen/context_gen.hpp"
#include "ctxgen/error.hpp"
#include "support/test_support.hpp"

using namespace ctxgen;
using nlohmann::json;

namespace {

// Loopback summarizer; the handler decides each reply.
class MockServer {
 public:
  explicit MockServer(std::function<void(const httplib::Request&, httplib::Response&)> handler) {
    server_.Post("/summarize", [this, handler](const httplib::Request& req, httplib::Response& res) {
      ++requests;
      last_body = req.body;
      handler(req, res);
    });
    server_.Get("/health", [](const httplib::Request&, httplib::Response& res) { res.set_content("{}", "application/json"); });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockServer() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  std::atomic<int> requests{0};
  std::string last_body;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

json echo_summaries(const httplib::Request& req, std::size_t drop = 0) {
  const auto in = json::parse(req.body);
  json arr = json::array();
  const auto widths = in.at("beam_widths").get<std::vector<int>>();
  for (std::size_t i = 0; i + drop < widths.size(); ++i) {
    arr.push_back({{"beam_width", widths[i]}, {"text", "summary " + std::to_string(widths[i]) + "."}});
  }
  return {{"summaries", arr}};
}

HttpBackendOptions fast(int attempts = 3) {
  HttpBackendOptions o;
  o.attempts = attempts;
  o.initial_backoff = std::chrono::milliseconds(5);
  o.connect_timeout = std::chrono::milliseconds(500);
  o.read_timeout = std::chrono::milliseconds(2000);
  return o;
}

AnalyzerText sample_text() {
  AnalyzerText t;
  t.sentences.push_back(make_sentence("a man with a hat", testsupport::bundled_resources().lexicon));
  t.concatenated = "a man with a hat.";
  return t;
}

// A loopback port that was free a moment ago and has no listener now.
int closed_port() {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  ::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr);
  socklen_t len = sizeof addr;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  ::close(fd);
  return ntohs(addr.sin_port);
}

const std::vector<int> kWidths{2, 3, 4, 5, 6};

}  // namespace

TEST(HttpBackend, SummariesInRequestOrder) {
  MockServer mock([](const httplib::Request& req, httplib::Response& res) {
    res.set_content(echo_summaries(req).dump(), "application/json");
  });
  HttpBackend backend(mock.url(), fast());
  const auto out = backend.summarize(sample_text(), kWidths);
  EXPECT_EQ(out, (std::vector<std::string>{"summary 2.", "summary 3.", "summary 4.", "summary 5.", "summary 6."}));
  const auto sent = json::parse(mock.last_body);
  EXPECT_EQ(sent.at("text"), "a man with a hat.");
  EXPECT_EQ(sent.at("beam_widths"), json(kWidths));
  EXPECT_EQ(mock.requests, 1);
}

TEST(HttpBackend, ShortReplyIsProtocolError) {
  MockServer mock([](const httplib::Request& req, httplib::Response& res) {
    res.set_content(echo_summaries(req, 1).dump(), "application/json");
  });
  HttpBackend backend(mock.url(), fast());
  EXPECT_THROW(backend.summarize(sample_text(), kWidths), ProtocolError);
}

TEST(HttpBackend, MalformedRepliesAreProtocolErrors) {
  for (const char* body : {"not json", R"({"other": []})", R"({"summaries": [1, 2, 3, 4, 5]})"}) {
    MockServer mock([body](const httplib::Request&, httplib::Response& res) { res.set_content(body, "application/json"); });
    HttpBackend backend(mock.url(), fast());
    EXPECT_THROW(backend.summarize(sample_text(), kWidths), ProtocolError) << body;
  }
  MockServer swapped([](const httplib::Request& req, httplib::Response& res) {
    auto j = echo_summaries(req);
    std::swap(j["summaries"][0], j["summaries"][1]);
    res.set_content(j.dump(), "application/json");
  });
  HttpBackend backend(swapped.url(), fast());
  EXPECT_THROW(backend.summarize(sample_text(), kWidths), ProtocolError);
}

TEST(HttpBackend, UnreachableReportsAttempts) {
  // Grab a free port, then close it so nothing listens there.
  const int port = closed_port();
  HttpBackend backend("127.0.0.1:" + std::to_string(port), fast(3));
  try {
    backend.summarize(sample_text(), kWidths);
    FAIL() << "expected BackendError";
  } catch (const BackendError& e) {
    EXPECT_EQ(e.attempts(), 3);
    EXPECT_NE(std::string(e.what()).find("3 attempts"), std::string::npos);
  }
  EXPECT_FALSE(backend.healthy());
}

TEST(HttpBackend, ClientErrorNotRetried) {
  MockServer mock([](const httplib::Request&, httplib::Response& res) {
    res.status = 400;
    res.set_content(R"({"error": "text too long"})", "application/json");
  });
  HttpBackend backend(mock.url(), fast(3));
  try {
    backend.summarize(sample_text(), kWidths);
    FAIL() << "expected BackendError";
  } catch (const BackendError& e) {
    EXPECT_EQ(e.attempts(), 1);
    EXPECT_NE(std::string(e.what()).find("text too long"), std::string::npos);
  }
  EXPECT_EQ(mock.requests, 1);
}

TEST(HttpBackend, ServerErrorRetriedThenSucceeds) {
  MockServer mock([](const httplib::Request& req, httplib::Response& res) {
    static std::atomic<int> calls{0};
    if (++calls < 3) {
      res.status = 503;
      res.set_content(R"({"error": "busy"})", "application/json");
      return;
    }
    res.set_content(echo_summaries(req).dump(), "application/json");
  });
  HttpBackend backend(mock.url(), fast(3));
  EXPECT_EQ(backend.summarize(sample_text(), kWidths).size(), 5u);
  EXPECT_EQ(mock.requests, 3);
}

TEST(HttpBackend, ServerErrorExhaustsAttempts) {
  MockServer mock([](const httplib::Request&, httplib::Response& res) { res.status = 500; });
  HttpBackend backend(mock.url(), fast(2));
  try {
    backend.summarize(sample_text(), kWidths);
    FAIL() << "expected BackendError";
  } catch (const BackendError& e) {
    EXPECT_EQ(e.attempts(), 2);
  }
  EXPECT_EQ(mock.requests, 2);
}

TEST(HttpBackend, Health) {
  MockServer mock([](const httplib::Request&, httplib::Response&) {});
  EXPECT_TRUE(HttpBackend(mock.url(), fast()).healthy());
}

TEST(HttpBackend, PipelineUsesWire) {
  MockServer mock([](const httplib::Request& req, httplib::Response& res) {
    json arr = json::array();
    for (int w : json::parse(req.body).at("beam_widths").get<std::vector<int>>()) {
      arr.push_back({{"beam_width", w}, {"text", "The man has a beard. The man is speaking to an audience."}});
    }
    res.set_content(json{{"summaries", arr}}.dump(), "application/json");
  });
  HttpBackend backend(mock.url(), fast());
  const auto bundle = load_bundle(testsupport::fixture("golden/office_speaker.json"));
  const auto r = run_pipeline(bundle, testsupport::bundled_resources(), PipelineConfig{}, backend);
  EXPECT_EQ(r.status, PipelineStatus::Ok);
  EXPECT_EQ(r.chosen_variant, 0);
}

TEST(MakeBackend, Specs) {
  const auto& store = testsupport::bundled_resources().embeddings;
  EXPECT_EQ(make_backend("fallback", store)->describe(), "fallback");
  EXPECT_EQ(make_backend("http:localhost:8080", store)->describe(), "http:http://localhost:8080");
  EXPECT_EQ(make_backend("http://10.0.0.1:9000/", store)->describe(), "http:http://10.0.0.1:9000");
  EXPECT_THROW(make_backend("gpt", store), InputError);
  EXPECT_THROW(make_backend("http:", store), InputError);
}
