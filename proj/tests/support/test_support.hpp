#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "coexplore/llm_gateway.hpp"
#include "coexplore/scholar_client.hpp"
#include "coexplore/util.hpp"

namespace coexplore::testing {

inline std::filesystem::path source_dir() { return COEXPLORE_TEST_SOURCE_DIR; }
inline std::filesystem::path fixture_dir() { return source_dir() / "fixtures" / "scripted"; }
inline std::filesystem::path corpus_path() { return source_dir() / "data" / "corpus.json"; }
inline std::filesystem::path test_data(const std::string& name) { return source_dir() / "tests" / "data" / name; }

inline nlohmann::json read_json(const std::filesystem::path& p) { return nlohmann::json::parse(util::read_file(p)); }

// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("coexplore-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline llm::ProviderConfig scripted_config(const std::filesystem::path& dir = fixture_dir()) {
  llm::ProviderConfig c;
  c.mode = llm::ProviderMode::Scripted;
  c.fixture_dir = dir;
  c.record_missing = util::env("FIXTURE_RECORD").has_value();
  return c;
}

inline std::shared_ptr<llm::ScriptedGateway> scripted_gateway(const std::filesystem::path& dir = fixture_dir()) {
  return std::make_shared<llm::ScriptedGateway>(scripted_config(dir));
}

inline std::shared_ptr<scholar::ScholarClient> corpus_scholar() {
  scholar::ScholarConfig c;
  c.mode = scholar::ScholarMode::Corpus;
  c.corpus_path = corpus_path();
  return std::make_shared<scholar::ScholarClient>(c);
}

// Gateway answering from a callback and recording every request; embeddings
// are hashed unless pinned.
class FakeGateway : public llm::LlmGateway {
 public:
  using Reply = std::function<std::string(const llm::PromptRequest&)>;
  explicit FakeGateway(Reply reply) : reply_(std::move(reply)) {}

  std::string complete(const llm::PromptRequest& request) override {
    request.validate();
    std::lock_guard lock(mutex_);
    requests.push_back(request);
    return reply_(request);
  }
  std::vector<Vector> embed(const std::vector<std::string>& texts) override {
    std::lock_guard lock(mutex_);
    std::vector<Vector> out;
    for (const auto& t : texts) {
      auto it = pinned.find(t);
      out.push_back(it != pinned.end() ? it->second : llm::hash_embedding(t, 64));
    }
    return out;
  }
  std::size_t count(llm::TemplateId id) const {
    std::lock_guard lock(mutex_);
    std::size_t n = 0;
    for (const auto& r : requests) n += r.template_id == id;
    return n;
  }

  std::vector<llm::PromptRequest> requests;
  std::unordered_map<std::string, Vector> pinned;

 private:
  Reply reply_;
  mutable std::mutex mutex_;
};

}  // namespace coexplore::testing
