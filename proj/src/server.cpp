// Same configuration as http_client.cpp so both TUs see one httplib.
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "coexplore/server.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "coexplore/error.hpp"
#include "coexplore/json_io.hpp"
#include "coexplore/serialization.hpp"

namespace coexplore::api {
namespace {

using nlohmann::json;

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json body_of(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  auto j = json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorKind::InvalidArgument, "request body is not a JSON object");
  return j;
}

template <typename T>
std::optional<T> opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::InvalidArgument, std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T req(const json& j, const char* key) {
  auto v = opt<T>(j, key);
  if (!v) throw Error(ErrorKind::InvalidArgument, std::string("missing field '") + key + "'");
  return *v;
}

json groups_json(const std::vector<rank::DisciplineGroup>& groups) {
  json out = json::array();
  for (const auto& g : groups) {
    json papers = json::array();
    for (std::size_t i = 0; i < g.papers.size(); ++i) {
      json p = g.papers[i];
      p["similarity"] = g.similarities[i];
      papers.push_back(std::move(p));
    }
    json entry = g.score;
    entry["papers"] = std::move(papers);
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotFound:
    case ErrorKind::UnknownEntity: return 404;
    case ErrorKind::EmptyTopic:
    case ErrorKind::InvalidArgument: return 400;
    case ErrorKind::PreconditionFailed: return 409;
    case ErrorKind::RateLimited: return 429;
    case ErrorKind::FixtureMissing:
    case ErrorKind::ProviderError:
    case ErrorKind::UnparseableCompletion:
    case ErrorKind::NetworkError:
    case ErrorKind::MalformedResponse: return 502;
    default: return 500;
  }
}

std::pair<std::string, int> parse_bind_addr(std::string_view addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string_view::npos) return {std::string(addr), 8080};
  const std::string port(addr.substr(colon + 1));
  int p = 0;
  try {
    p = std::stoi(port);
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "bad port in BIND_ADDR: " + port);
  }
  if (p < 0 || p > 65535) throw Error(ErrorKind::InvalidArgument, "bad port in BIND_ADDR: " + port);
  return {std::string(addr.substr(0, colon)), p};
}

struct ApiServer::Impl {
  explicit Impl(Explorer& e) : explorer(e) {}
  Explorer& explorer;
  httplib::Server server;

  void routes();
};

void ApiServer::Impl::routes() {
  auto& x = explorer;
  auto& s = server;
  const std::string api = "/api/v1";

  s.set_exception_handler([](const httplib::Request& r, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error& e) {
      const int status = http_status(e.kind());
      if (status >= 500) spdlog::error("{} {}: {}", r.method, r.path, e.what());
      json body{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
      if (e.retry_after()) {
        body["error"]["retry_after"] = *e.retry_after();
        res.set_header("Retry-After", std::to_string(static_cast<int>(*e.retry_after() + 0.999)));
      }
      send_json(res, body, status);
    } catch (const std::exception& e) {
      spdlog::error("{} {}: {}", r.method, r.path, e.what());
      send_json(res, {{"error", {{"kind", "Internal"}, {"message", e.what()}}}}, 500);
    }
  });

  s.Post(api + "/sessions", [&x](const httplib::Request& r, httplib::Response& res) {
    const auto state = x.create_session(req<std::string>(body_of(r), "topic"));
    send_json(res, {{"session_id", state.session_id}, {"topic", state.topic}}, 201);
  });

  s.Get(api + "/sessions/:id", [&x](const httplib::Request& r, httplib::Response& res) {
    const auto state = x.load(r.path_params.at("id"));
    json j = session_summary(state);
    j["eqs"] = state.eqs;
    send_json(res, j);
  });

  s.Post(api + "/sessions/:id/eqs/generate", [&x](const httplib::Request& r, httplib::Response& res) {
    const auto body = body_of(r);
    const auto mode = opt<std::string>(body, "mode").value_or("topic");
    const auto& id = r.path_params.at("id");
    std::vector<ExploratoryQuestion> eqs;
    if (mode == "topic") {
      eqs = x.generate_topic_eqs(id);
    } else if (mode == "paper") {
      eqs = x.generate_paper_eqs(id, req<std::string>(body, "paper_id"),
                                 opt<std::vector<std::string>>(body, "focus_keywords").value_or(std::vector<std::string>{}));
    } else {
      throw Error(ErrorKind::InvalidArgument, "mode must be topic or paper");
    }
    send_json(res, {{"eqs", eqs}});
  });

  s.Patch(api + "/sessions/:id/eqs/:eq_id", [&x](const httplib::Request& r, httplib::Response& res) {
    const auto body = body_of(r);
    const auto text = opt<std::string>(body, "text");
    const auto selected = opt<bool>(body, "selected");
    if (!text && !selected) throw Error(ErrorKind::InvalidArgument, "nothing to update");
    send_json(res, {{"eq", x.update_eq(r.path_params.at("id"), r.path_params.at("eq_id"), text, selected)}});
  });

  s.Post(api + "/sessions/:id/eqs", [&x](const httplib::Request& r, httplib::Response& res) {
    const auto body = body_of(r);
    send_json(res,
              {{"eq", x.create_eq(r.path_params.at("id"), req<std::string>(body, "text"),
                                  req<std::string>(body, "discipline"))}},
              201);
  });

  s.Post(api + "/sessions/:id/eqs/:eq_id/explore", [&x](const httplib::Request& r, httplib::Response& res) {
    send_json(res, {{"job_id", x.start_explore(r.path_params.at("id"), r.path_params.at("eq_id"))}}, 202);
  });

  s.Get(api + "/sessions/:id/jobs/:job_id", [&x](const httplib::Request& r, httplib::Response& res) {
    send_json(res, to_json(x.job(r.path_params.at("id"), r.path_params.at("job_id"))));
  });

  s.Get(api + "/sessions/:id/themes/:eq_id", [&x](const httplib::Request& r, httplib::Response& res) {
    send_json(res, x.themes_view(r.path_params.at("id"), r.path_params.at("eq_id")));
  });

  s.Get(api + "/papers/:paper_id/links", [&x](const httplib::Request& r, httplib::Response& res) {
    if (!r.has_param("session")) throw Error(ErrorKind::InvalidArgument, "session query parameter is required");
    const auto direction =
        scholar::link_direction_from_string(r.has_param("direction") ? r.get_param_value("direction") : "citations");
    const auto groups = x.links(r.get_param_value("session"), r.path_params.at("paper_id"), direction);
    send_json(res, {{"paper_id", r.path_params.at("paper_id")},
                    {"direction", std::string(scholar::to_string(direction))},
                    {"groups", groups_json(groups)}});
  });

  s.Post(api + "/sessions/:id/collections/edits", [&x](const httplib::Request& r, httplib::Response& res) {
    const auto edit = session::collection_edit_from_json(body_of(r));
    send_json(res, session_summary(x.apply_edit(r.path_params.at("id"), edit)));
  });

  s.Get(api + "/sessions/:id/export", [&x](const httplib::Request& r, httplib::Response& res) {
    const auto format = outline_format_from_string(r.has_param("format") ? r.get_param_value("format") : "json");
    const auto doc = x.export_outline(r.path_params.at("id"), format);
    res.status = 200;
    res.set_content(doc, format == OutlineFormat::Json ? "application/json" : "text/markdown; charset=utf-8");
  });
}

ApiServer::ApiServer(Explorer& explorer) : impl_(std::make_unique<Impl>(explorer)) { impl_->routes(); }

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool ApiServer::bind(const std::string& host, int port) { return impl_->server.bind_to_port(host, port); }

bool ApiServer::listen() { return impl_->server.listen_after_bind(); }

void ApiServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void ApiServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace coexplore::api
