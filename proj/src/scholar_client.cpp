#include "coexplore/scholar_client.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <future>
#include <nlohmann/json.hpp>
#include <thread>
#include <unordered_set>

#include "coexplore/error.hpp"
#include "coexplore/http_client.hpp"
#include "coexplore/json_io.hpp"
#include "coexplore/text.hpp"
#include "coexplore/util.hpp"

namespace coexplore::scholar {
namespace {

using nlohmann::json;

constexpr const char* kPaperFields = "paperId,title,abstract,fieldsOfStudy,year,venue,authors,citationCount,url";
constexpr std::size_t kLinkLimit = 100;

json to_provider_shape(const PaperRecord& p) {
  json authors = json::array();
  for (const auto& a : p.authors) authors.push_back({{"name", a}});
  return json{{"paperId", p.paper_id},
              {"title", p.title},
              {"abstract", p.abstract.empty() ? json(nullptr) : json(p.abstract)},
              {"fieldsOfStudy", p.disciplines},
              {"year", p.year ? json(*p.year) : json(nullptr)},
              {"venue", p.venue ? json(*p.venue) : json(nullptr)},
              {"authors", authors},
              {"citationCount", p.citation_count},
              {"url", p.url ? json(*p.url) : json(nullptr)}};
}

PaperRecord from_provider_shape(const json& j, const DisciplineRegistry& registry) {
  PaperRecord p;
  p.paper_id = j.at("paperId").get<std::string>();
  p.title = j.contains("title") && !j.at("title").is_null() ? j.at("title").get<std::string>() : "";
  p.abstract = j.contains("abstract") && !j.at("abstract").is_null() ? j.at("abstract").get<std::string>() : "";
  if (j.contains("fieldsOfStudy") && j.at("fieldsOfStudy").is_array()) {
    for (const auto& f : j.at("fieldsOfStudy")) {
      auto name = registry.canonical(f.get<std::string>()).value_or(kUnknownDiscipline);
      if (std::find(p.disciplines.begin(), p.disciplines.end(), name) == p.disciplines.end()) {
        p.disciplines.push_back(std::move(name));
      }
    }
  }
  if (j.contains("year") && j.at("year").is_number_integer()) p.year = j.at("year").get<int>();
  if (j.contains("venue") && j.at("venue").is_string() && !j.at("venue").get<std::string>().empty()) {
    p.venue = j.at("venue").get<std::string>();
  }
  if (j.contains("authors") && j.at("authors").is_array()) {
    for (const auto& a : j.at("authors")) {
      if (a.contains("name") && a.at("name").is_string()) p.authors.push_back(a.at("name").get<std::string>());
    }
  }
  if (j.contains("citationCount") && j.at("citationCount").is_number_integer()) {
    p.citation_count = std::max<std::int64_t>(0, j.at("citationCount").get<std::int64_t>());
  }
  if (j.contains("url") && j.at("url").is_string()) p.url = j.at("url").get<std::string>();
  return p;
}

std::vector<PaperRecord> parse_list(const std::string& body, const char* nested_key,
                                    const DisciplineRegistry& registry) {
  std::vector<PaperRecord> out;
  std::unordered_set<std::string> seen;
  try {
    const auto doc = json::parse(body);
    if (!doc.contains("data") || doc.at("data").is_null()) return out;
    for (const auto& item : doc.at("data")) {
      const json& node = nested_key ? item.at(nested_key) : item;
      if (node.is_null() || !node.contains("paperId") || node.at("paperId").is_null()) continue;
      auto paper = from_provider_shape(node, registry);
      if (seen.insert(paper.paper_id).second) out.push_back(std::move(paper));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedResponse, e.what());
  }
  return out;
}

std::vector<std::string> sorted_tokens(std::string_view s) {
  auto tokens = text::content_tokens(s);
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  return tokens;
}

}  // namespace

QueryString::QueryString(std::string text) : text_(text::trim(text)) {
  if (text_.empty()) throw Error(ErrorKind::InvalidArgument, "query is empty");
  if (text_.size() > kMaxQueryLength) throw Error(ErrorKind::InvalidArgument, "query exceeds 300 characters");
}

std::string_view to_string(LinkDirection d) { return d == LinkDirection::Citations ? "citations" : "references"; }

LinkDirection link_direction_from_string(std::string_view s) {
  if (s == "citations") return LinkDirection::Citations;
  if (s == "references") return LinkDirection::References;
  throw Error(ErrorKind::InvalidArgument, "direction must be citations or references");
}

Corpus Corpus::parse(const std::string& json_text) {
  Corpus c;
  try {
    const auto doc = json::parse(json_text);
    c.papers = doc.at("papers").get<std::vector<PaperRecord>>();
    c.citations = doc.value("citations", decltype(c.citations){});
    c.references = doc.value("references", decltype(c.references){});
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedResponse, std::string("corpus: ") + e.what());
  }
  c.build_index();
  return c;
}

Corpus Corpus::load(const std::filesystem::path& path) { return parse(util::read_file(path)); }

void Corpus::build_index() {
  index_.clear();
  tokens_.clear();
  for (std::size_t i = 0; i < papers.size(); ++i) {
    if (!index_.emplace(papers[i].paper_id, i).second) {
      throw Error(ErrorKind::MalformedResponse, "corpus: duplicate paper_id " + papers[i].paper_id);
    }
    tokens_.push_back(sorted_tokens(papers[i].metadata_text()));
  }
  for (const auto* adjacency : {&citations, &references}) {
    for (const auto& [from, targets] : *adjacency) {
      for (const auto& id : targets) {
        if (!index_.contains(id)) throw Error(ErrorKind::MalformedResponse, "corpus: dangling link " + from + "->" + id);
      }
    }
  }
}

const PaperRecord* Corpus::find(const std::string& paper_id) const {
  auto it = index_.find(paper_id);
  return it == index_.end() ? nullptr : &papers[it->second];
}

ScholarConfig ScholarConfig::from_env() {
  ScholarConfig c;
  const auto mode = util::env_or("SCHOLAR_MODE", "corpus");
  if (mode == "live") {
    c.mode = ScholarMode::Live;
  } else if (mode == "corpus") {
    c.mode = ScholarMode::Corpus;
  } else {
    throw Error(ErrorKind::InvalidArgument, "SCHOLAR_MODE must be live or corpus");
  }
  c.base_url = util::env_or("SCHOLAR_BASE_URL", c.base_url);
  c.api_key = util::env_or("SCHOLAR_API_KEY", "");
  if (auto dir = util::env("CACHE_DIR")) c.cache_dir = *dir;
  if (auto path = util::env("CORPUS_PATH")) c.corpus_path = *path;
  return c;
}

ScholarClient::ScholarClient(ScholarConfig config, const DisciplineRegistry& registry)
    : config_(std::move(config)), registry_(registry), gate_(config_.max_in_flight) {
  if (config_.mode == ScholarMode::Corpus) {
    if (config_.corpus_path.empty()) throw Error(ErrorKind::InvalidArgument, "corpus mode requires a corpus path");
    corpus_ = std::make_unique<Corpus>(Corpus::load(config_.corpus_path));
  }
}

ScholarClient::ScholarClient(ScholarConfig config, Corpus corpus, const DisciplineRegistry& registry)
    : config_(std::move(config)), registry_(registry), gate_(config_.max_in_flight) {
  config_.mode = ScholarMode::Corpus;
  corpus.build_index();
  corpus_ = std::make_unique<Corpus>(std::move(corpus));
}

std::size_t ScholarClient::network_requests() const {
  std::lock_guard lock(stats_mutex_);
  return network_requests_;
}

std::size_t ScholarClient::cache_hits() const {
  std::lock_guard lock(stats_mutex_);
  return cache_hits_;
}

std::string ScholarClient::fetch(const std::string& material, const std::function<std::string()>& origin) {
  std::filesystem::path cached;
  if (!config_.cache_dir.empty()) {
    cached = config_.cache_dir / (util::sha256_hex(material) + ".json");
    if (std::filesystem::exists(cached)) {
      std::lock_guard lock(stats_mutex_);
      ++cache_hits_;
      return util::read_file(cached);
    }
  }
  std::string body;
  {
    AdmissionGate::Ticket ticket(gate_);
    {
      std::lock_guard lock(stats_mutex_);
      ++network_requests_;
    }
    body = origin();
  }
  if (!cached.empty()) util::atomic_write_file(cached, body);
  return body;
}

std::string ScholarClient::live_get(const std::string& path) {
  std::map<std::string, std::string> headers;
  if (!config_.api_key.empty()) headers["x-api-key"] = config_.api_key;
  http::Response r;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    r = http::get(config_.base_url, path, headers, config_.timeout);
    if (r.status >= 200 && r.status < 300) return r.body;
    const bool transient = r.status == 0 || r.status == 429 || r.status >= 500;
    if (!transient || attempt == config_.max_attempts) break;
    auto wait = config_.base_backoff * (1 << (attempt - 1));
    spdlog::warn("scholar {} failed (status {}), retry {}", path, r.status, attempt);
    std::this_thread::sleep_for(wait);
  }
  if (r.status == 404) throw Error(ErrorKind::NotFound, path);
  if (r.status == 429) {
    Error err(ErrorKind::RateLimited, path);
    auto it = std::find_if(r.headers.begin(), r.headers.end(),
                           [](const auto& kv) { return text::to_lower(kv.first) == "retry-after"; });
    if (it != r.headers.end()) {
      try {
        err.with_retry_after(std::stod(it->second));
      } catch (const std::exception&) {
      }
    }
    throw err.with_attempts(config_.max_attempts);
  }
  throw Error(ErrorKind::NetworkError,
              path + " status " + std::to_string(r.status) + (r.transport_error.empty() ? "" : " " + r.transport_error))
      .with_attempts(config_.max_attempts);
}

std::string ScholarClient::corpus_search(const QueryString& query, std::size_t limit) const {
  const auto wanted = sorted_tokens(query.text());
  const std::size_t need = std::max<std::size_t>(1, (wanted.size() + 1) / 2);
  std::vector<std::pair<std::size_t, std::size_t>> hits;  // (matched tokens, corpus index)
  for (std::size_t i = 0; i < corpus_->papers.size(); ++i) {
    const auto& have = corpus_->tokens_[i];
    std::size_t matched = 0;
    for (const auto& t : wanted) matched += std::binary_search(have.begin(), have.end(), t) ? 1 : 0;
    if (matched >= need) hits.emplace_back(matched, i);
  }
  std::stable_sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  json data = json::array();
  for (std::size_t k = 0; k < hits.size() && k < limit; ++k) {
    data.push_back(to_provider_shape(corpus_->papers[hits[k].second]));
  }
  return json{{"total", hits.size()}, {"offset", 0}, {"data", data}}.dump();
}

std::string ScholarClient::corpus_links(const std::string& paper_id, LinkDirection direction) const {
  if (!corpus_->find(paper_id)) throw Error(ErrorKind::NotFound, "paper " + paper_id);
  const auto& adjacency = direction == LinkDirection::Citations ? corpus_->citations : corpus_->references;
  const char* nested = direction == LinkDirection::Citations ? "citingPaper" : "citedPaper";
  json data = json::array();
  if (auto it = adjacency.find(paper_id); it != adjacency.end()) {
    for (const auto& id : it->second) data.push_back({{nested, to_provider_shape(*corpus_->find(id))}});
  }
  return json{{"offset", 0}, {"data", data}}.dump();
}

std::string ScholarClient::corpus_paper(const std::string& paper_id) const {
  const auto* p = corpus_->find(paper_id);
  if (!p) throw Error(ErrorKind::NotFound, "paper " + paper_id);
  return to_provider_shape(*p).dump();
}

std::vector<PaperRecord> ScholarClient::search_papers(const QueryString& query, std::size_t limit) {
  if (limit < 1 || limit > 100) throw Error(ErrorKind::InvalidArgument, "limit must be in [1, 100]");
  const std::string material = "search\n" + query.text() + "\n" + std::to_string(limit);
  const auto body = fetch(material, [&] {
    if (corpus_) return corpus_search(query, limit);
    return live_get("/paper/search?query=" + http::url_encode(query.text()) + "&limit=" + std::to_string(limit) +
                    "&fields=" + kPaperFields);
  });
  auto papers = parse_list(body, nullptr, registry_);
  if (papers.size() > limit) papers.resize(limit);
  return papers;
}

std::vector<PaperRecord> ScholarClient::search_all(const std::vector<QueryString>& queries,
                                                   std::size_t limit_per_query) {
  std::vector<std::future<std::vector<PaperRecord>>> pending;
  pending.reserve(queries.size());
  for (const auto& q : queries) {
    pending.push_back(std::async(std::launch::async, [this, &q, limit_per_query] {
      return search_papers(q, limit_per_query);
    }));
  }
  std::vector<PaperRecord> merged;
  std::unordered_set<std::string> seen;
  std::exception_ptr first_error;
  for (auto& f : pending) {
    try {
      for (auto& p : f.get()) {
        if (seen.insert(p.paper_id).second) merged.push_back(std::move(p));
      }
    } catch (...) {
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return merged;
}

std::vector<PaperRecord> ScholarClient::fetch_links(const std::string& paper_id, LinkDirection direction) {
  const std::string material = std::string(to_string(direction)) + "\n" + paper_id;
  const auto body = fetch(material, [&] {
    if (corpus_) return corpus_links(paper_id, direction);
    return live_get("/paper/" + http::url_encode(paper_id) + "/" + std::string(to_string(direction)) +
                    "?limit=" + std::to_string(kLinkLimit) + "&fields=" + kPaperFields);
  });
  return parse_list(body, direction == LinkDirection::Citations ? "citingPaper" : "citedPaper", registry_);
}

PaperRecord ScholarClient::get_paper(const std::string& paper_id) {
  const auto body = fetch("paper\n" + paper_id, [&] {
    if (corpus_) return corpus_paper(paper_id);
    return live_get("/paper/" + http::url_encode(paper_id) + "?fields=" + kPaperFields);
  });
  try {
    return from_provider_shape(json::parse(body), registry_);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedResponse, e.what());
  }
}

}  // namespace coexplore::scholar
