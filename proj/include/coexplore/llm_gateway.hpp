#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "coexplore/concurrency.hpp"
#include "coexplore/types.hpp"

namespace coexplore::llm {

enum class TemplateId {
  IdentifyFields,
  EqGeneration,
  EqGenerationNoPersona,
  EqGenerationNoSimplification,
  EqDedup,
  EqFromPaper,
  PseudoAnswers,
  AnswerTerms,
  ComposeQueries,
  QueriesWithoutPa,
  ClusterRelevance,
  ClusterDivisible,
  ThemeTitle,
};

std::string_view to_string(TemplateId id);
TemplateId template_from_string(std::string_view name);
const std::vector<TemplateId>& all_templates();

// Raw template text with {placeholder} markers.
std::string_view template_text(TemplateId id);
std::set<std::string> template_placeholders(TemplateId id);

inline constexpr double kGenerationTemperature = 0.7;
inline constexpr double kJudgmentTemperature = 0.0;

struct PromptRequest {
  TemplateId template_id;
  std::map<std::string, std::string> variables;
  double temperature = kGenerationTemperature;

  // Throws InvalidArgument unless the variables bind exactly the template's
  // placeholders and temperature is in [0, 2].
  void validate() const;
  std::string render() const;
};

enum class ProviderMode { Live, Scripted };

struct ProviderConfig {
  ProviderMode mode = ProviderMode::Scripted;
  std::string model_name = "gpt-4";
  std::string embed_model_name = "text-embedding-3-small";
  std::filesystem::path fixture_dir;
  std::size_t max_parallel = 4;

  std::string base_url = "https://api.openai.com/v1";
  std::string api_key;
  std::size_t scripted_dimension = 64;
  int max_attempts = 3;
  std::chrono::milliseconds base_backoff{250};
  std::chrono::seconds timeout{60};
  // Scripted mode: on a fixture miss, write <key>.request.json next to the fixtures.
  bool record_missing = false;

  // LLM_MODE, LLM_MODEL, EMBED_MODEL, LLM_BASE_URL, LLM_API_KEY, FIXTURE_DIR.
  static ProviderConfig from_env();
};

class LlmGateway {
 public:
  virtual ~LlmGateway() = default;
  virtual std::string complete(const PromptRequest& request) = 0;
  // One vector per input, same order. Throws InvalidArgument on an empty list.
  virtual std::vector<Vector> embed(const std::vector<std::string>& texts) = 0;
};

// Offline provider: completions come from fixture files keyed by the SHA-256
// of the canonical request; embeddings are hashed bags of tokens.
class ScriptedGateway final : public LlmGateway {
 public:
  explicit ScriptedGateway(ProviderConfig config);

  std::string complete(const PromptRequest& request) override;
  std::vector<Vector> embed(const std::vector<std::string>& texts) override;

  // Pins the embedding returned for an exact text.
  void set_embedding(const std::string& text, Vector v);

  static std::string canonical_request(const PromptRequest& request);
  static std::string fixture_key(const PromptRequest& request);

 private:
  ProviderConfig config_;
  std::mutex mutex_;
  std::unordered_map<std::string, Vector> overrides_;
};

// Deterministic embedding of a text: sum of per-token seeded pseudo-random
// vectors, L2-normalized.
Vector hash_embedding(std::string_view text, std::size_t dimension);

// OpenAI-compatible HTTP provider with bounded retries and a parallelism cap.
class LiveGateway final : public LlmGateway {
 public:
  explicit LiveGateway(ProviderConfig config);

  std::string complete(const PromptRequest& request) override;
  std::vector<Vector> embed(const std::vector<std::string>& texts) override;

  std::size_t peak_in_flight() const { return gate_.peak(); }

 private:
  std::string post_with_retry(const std::string& path, const std::string& body);

  ProviderConfig config_;
  AdmissionGate gate_;
};

std::shared_ptr<LlmGateway> make_gateway(const ProviderConfig& config);

// Memoizing front for embeddings; misses are fetched in one batch.
class EmbeddingCache {
 public:
  explicit EmbeddingCache(std::shared_ptr<LlmGateway> gateway) : gateway_(std::move(gateway)) {}

  Vector get(const std::string& text);
  std::vector<Vector> get_many(const std::vector<std::string>& texts);
  LlmGateway& gateway() { return *gateway_; }
  std::shared_ptr<LlmGateway> shared_gateway() const { return gateway_; }

 private:
  std::shared_ptr<LlmGateway> gateway_;
  std::mutex mutex_;
  std::unordered_map<std::string, Vector> cache_;
};

}  // namespace coexplore::llm
