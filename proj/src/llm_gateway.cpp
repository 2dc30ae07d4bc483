#include "coexplore/llm_gateway.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <thread>
#include <unordered_set>

#include "coexplore/assets.hpp"
#include "coexplore/error.hpp"
#include "coexplore/http_client.hpp"
#include "coexplore/text.hpp"
#include "coexplore/util.hpp"

namespace coexplore::llm {
namespace {

using nlohmann::json;

constexpr std::uint64_t kEmbeddingSeed = 0x9e3779b97f4a7c15ULL;

struct TemplateEntry {
  TemplateId id;
  std::string_view name;
};

constexpr TemplateEntry kTemplates[] = {
    {TemplateId::IdentifyFields, "identify_fields"},
    {TemplateId::EqGeneration, "eq_generation"},
    {TemplateId::EqGenerationNoPersona, "eq_generation_no_persona"},
    {TemplateId::EqGenerationNoSimplification, "eq_generation_no_simplification"},
    {TemplateId::EqDedup, "eq_dedup"},
    {TemplateId::EqFromPaper, "eq_from_paper"},
    {TemplateId::PseudoAnswers, "pseudo_answers"},
    {TemplateId::AnswerTerms, "answer_terms"},
    {TemplateId::ComposeQueries, "compose_queries"},
    {TemplateId::QueriesWithoutPa, "queries_without_pa"},
    {TemplateId::ClusterRelevance, "cluster_relevance"},
    {TemplateId::ClusterDivisible, "cluster_divisible"},
    {TemplateId::ThemeTitle, "theme_title"},
};

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool is_transient(int status) { return status == 0 || status == 429 || status >= 500; }

std::optional<double> parse_retry_after(const http::Response& r) {
  for (const auto& [k, v] : r.headers) {
    if (text::to_lower(k) == "retry-after") {
      try {
        return std::stod(v);
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(TemplateId id) {
  for (const auto& t : kTemplates) {
    if (t.id == id) return t.name;
  }
  return "unknown";
}

TemplateId template_from_string(std::string_view name) {
  for (const auto& t : kTemplates) {
    if (t.name == name) return t.id;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown template '" + std::string(name) + "'");
}

const std::vector<TemplateId>& all_templates() {
  static const std::vector<TemplateId> ids = [] {
    std::vector<TemplateId> out;
    for (const auto& t : kTemplates) out.push_back(t.id);
    return out;
  }();
  return ids;
}

std::string_view template_text(TemplateId id) {
  return assets::get("prompts/" + std::string(to_string(id)) + ".txt");
}

std::set<std::string> template_placeholders(TemplateId id) {
  std::set<std::string> out;
  const std::string_view t = template_text(id);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != '{') continue;
    const auto close = t.find('}', i + 1);
    if (close == std::string_view::npos) break;
    const auto name = t.substr(i + 1, close - i - 1);
    const bool ident = !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
      return (c >= 'a' && c <= 'z') || c == '_';
    });
    if (ident) out.emplace(name);
  }
  return out;
}

void PromptRequest::validate() const {
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw Error(ErrorKind::InvalidArgument, "temperature out of [0, 2]");
  }
  const auto wanted = template_placeholders(template_id);
  for (const auto& name : wanted) {
    if (!variables.contains(name)) {
      throw Error(ErrorKind::InvalidArgument,
                  "template " + std::string(to_string(template_id)) + " placeholder {" + name + "} unbound");
    }
  }
  for (const auto& [name, _] : variables) {
    if (!wanted.contains(name)) {
      throw Error(ErrorKind::InvalidArgument,
                  "template " + std::string(to_string(template_id)) + " has no placeholder {" + name + "}");
    }
  }
}

std::string PromptRequest::render() const {
  validate();
  const std::string_view t = template_text(template_id);
  std::string out;
  out.reserve(t.size() * 2);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == '{') {
      const auto close = t.find('}', i + 1);
      if (close != std::string_view::npos) {
        auto it = variables.find(std::string(t.substr(i + 1, close - i - 1)));
        if (it != variables.end()) {
          out += it->second;
          i = close;
          continue;
        }
      }
    }
    out.push_back(t[i]);
  }
  return out;
}

ProviderConfig ProviderConfig::from_env() {
  ProviderConfig c;
  const auto mode = util::env_or("LLM_MODE", "scripted");
  if (mode == "live") {
    c.mode = ProviderMode::Live;
  } else if (mode == "scripted") {
    c.mode = ProviderMode::Scripted;
  } else {
    throw Error(ErrorKind::InvalidArgument, "LLM_MODE must be live or scripted");
  }
  c.model_name = util::env_or("LLM_MODEL", c.model_name);
  c.embed_model_name = util::env_or("EMBED_MODEL", c.embed_model_name);
  c.base_url = util::env_or("LLM_BASE_URL", c.base_url);
  c.api_key = util::env_or("LLM_API_KEY", "");
  if (auto dir = util::env("FIXTURE_DIR")) c.fixture_dir = *dir;
  c.record_missing = util::env("FIXTURE_RECORD").has_value();
  return c;
}

Vector hash_embedding(std::string_view input, std::size_t dimension) {
  auto tokens = text::content_tokens(input);
  if (tokens.empty()) tokens.push_back(text::to_lower(text::trim(input)));
  std::vector<double> sum(dimension, 0.0);
  for (const auto& token : tokens) {
    std::uint64_t state = fnv1a64("tok:" + token) ^ kEmbeddingSeed;
    for (std::size_t i = 0; i < dimension; ++i) {
      const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
      sum[i] += 2.0 * u - 1.0;
    }
  }
  return Vector(std::move(sum)).normalized();
}

ScriptedGateway::ScriptedGateway(ProviderConfig config) : config_(std::move(config)) {
  if (config_.fixture_dir.empty() || !std::filesystem::is_directory(config_.fixture_dir)) {
    throw Error(ErrorKind::InvalidArgument,
                "scripted mode requires an existing fixture_dir (got '" + config_.fixture_dir.string() + "')");
  }
  const auto overrides = config_.fixture_dir / "embeddings.json";
  if (std::filesystem::exists(overrides)) {
    const auto doc = json::parse(util::read_file(overrides));
    for (const auto& [text, values] : doc.items()) {
      overrides_.emplace(text, Vector(values.get<std::vector<double>>()));
    }
  }
}

std::string ScriptedGateway::canonical_request(const PromptRequest& request) {
  json doc;
  doc["template_id"] = std::string(to_string(request.template_id));
  doc["variables"] = json::object();
  for (const auto& [k, v] : request.variables) doc["variables"][k] = v;
  return doc.dump();
}

std::string ScriptedGateway::fixture_key(const PromptRequest& request) {
  return util::sha256_hex(canonical_request(request));
}

std::string ScriptedGateway::complete(const PromptRequest& request) {
  request.validate();
  const auto key = fixture_key(request);
  const auto path = config_.fixture_dir / (key + ".txt");
  if (!std::filesystem::exists(path)) {
    if (config_.record_missing) {
      json pending = json::parse(canonical_request(request));
      pending["prompt"] = request.render();
      util::atomic_write_file(config_.fixture_dir / (key + ".request.json"), pending.dump(2));
    }
    throw Error(ErrorKind::FixtureMissing,
                "no fixture " + key + " for template " + std::string(to_string(request.template_id)));
  }
  return util::read_file(path);
}

std::vector<Vector> ScriptedGateway::embed(const std::vector<std::string>& texts) {
  if (texts.empty()) throw Error(ErrorKind::InvalidArgument, "embed requires at least one text");
  std::vector<Vector> out;
  out.reserve(texts.size());
  std::lock_guard lock(mutex_);
  for (const auto& t : texts) {
    auto it = overrides_.find(t);
    out.push_back(it != overrides_.end() ? it->second : hash_embedding(t, config_.scripted_dimension));
  }
  return out;
}

void ScriptedGateway::set_embedding(const std::string& text, Vector v) {
  std::lock_guard lock(mutex_);
  overrides_.insert_or_assign(text, std::move(v));
}

LiveGateway::LiveGateway(ProviderConfig config) : config_(std::move(config)), gate_(config_.max_parallel) {}

std::string LiveGateway::post_with_retry(const std::string& path, const std::string& body) {
  std::map<std::string, std::string> headers;
  if (!config_.api_key.empty()) headers["Authorization"] = "Bearer " + config_.api_key;

  http::Response last;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    {
      AdmissionGate::Ticket ticket(gate_);
      last = http::post_json(config_.base_url, path, body, headers, config_.timeout);
    }
    if (last.status >= 200 && last.status < 300) return last.body;
    if (!is_transient(last.status) || attempt == config_.max_attempts) break;
    auto wait = config_.base_backoff * (1 << (attempt - 1));
    if (auto ra = parse_retry_after(last)) {
      wait = std::max(wait, std::chrono::milliseconds(static_cast<long>(*ra * 1000)));
    }
    spdlog::warn("llm {} failed (status {} {}), retry {} in {} ms", path, last.status, last.transport_error,
                 attempt, wait.count());
    std::this_thread::sleep_for(wait);
  }
  Error err(ErrorKind::ProviderError, path + " failed with status " + std::to_string(last.status) +
                                          (last.transport_error.empty() ? "" : " (" + last.transport_error + ")"));
  err.with_attempts(config_.max_attempts);
  if (auto ra = parse_retry_after(last)) err.with_retry_after(*ra);
  throw err;
}

std::string LiveGateway::complete(const PromptRequest& request) {
  json body = {
      {"model", config_.model_name},
      {"temperature", request.temperature},
      {"messages", json::array({{{"role", "user"}, {"content", request.render()}}})},
  };
  const auto raw = post_with_retry("/chat/completions", body.dump());
  try {
    return json::parse(raw).at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ProviderError, std::string("malformed chat completion: ") + e.what());
  }
}

std::vector<Vector> LiveGateway::embed(const std::vector<std::string>& texts) {
  if (texts.empty()) throw Error(ErrorKind::InvalidArgument, "embed requires at least one text");
  json body = {{"model", config_.embed_model_name}, {"input", texts}};
  const auto raw = post_with_retry("/embeddings", body.dump());
  try {
    const auto doc = json::parse(raw);
    std::vector<Vector> out(texts.size());
    std::size_t filled = 0;
    for (const auto& item : doc.at("data")) {
      const auto index = item.at("index").get<std::size_t>();
      if (index >= out.size()) throw Error(ErrorKind::ProviderError, "embedding index out of range");
      out[index] = Vector(item.at("embedding").get<std::vector<double>>());
      ++filled;
    }
    if (filled != texts.size()) throw Error(ErrorKind::ProviderError, "embedding count mismatch");
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ProviderError, std::string("malformed embedding response: ") + e.what());
  }
}

std::shared_ptr<LlmGateway> make_gateway(const ProviderConfig& config) {
  if (config.mode == ProviderMode::Live) return std::make_shared<LiveGateway>(config);
  return std::make_shared<ScriptedGateway>(config);
}

Vector EmbeddingCache::get(const std::string& text) { return get_many({text}).front(); }

std::vector<Vector> EmbeddingCache::get_many(const std::vector<std::string>& texts) {
  if (texts.empty()) return {};
  std::vector<std::string> missing;
  {
    std::unordered_set<std::string_view> queued;
    std::lock_guard lock(mutex_);
    for (const auto& t : texts) {
      if (!cache_.contains(t) && queued.insert(t).second) missing.push_back(t);
    }
  }
  if (!missing.empty()) {
    auto fetched = gateway_->embed(missing);
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < missing.size(); ++i) cache_.insert_or_assign(missing[i], std::move(fetched[i]));
  }
  std::vector<Vector> out;
  out.reserve(texts.size());
  std::lock_guard lock(mutex_);
  for (const auto& t : texts) out.push_back(cache_.at(t));
  return out;
}

}  // namespace coexplore::llm
