#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "coexplore/http_client.hpp"

#include <httplib.h>

namespace coexplore::http {
namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // path prefix without trailing slash
};

SplitUrl split(const std::string& base_url) {
  const auto scheme_end = base_url.find("://");
  const auto host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const auto path_start = base_url.find('/', host_start);
  SplitUrl out;
  if (path_start == std::string::npos) {
    out.origin = base_url;
  } else {
    out.origin = base_url.substr(0, path_start);
    out.prefix = base_url.substr(path_start);
    while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
  }
  return out;
}

Response convert(const httplib::Result& result) {
  Response out;
  if (!result) {
    out.transport_error = httplib::to_string(result.error());
    return out;
  }
  out.status = result->status;
  out.body = result->body;
  for (const auto& [k, v] : result->headers) out.headers[k] = v;
  return out;
}

httplib::Headers to_headers(const std::map<std::string, std::string>& headers) {
  httplib::Headers out;
  for (const auto& [k, v] : headers) out.emplace(k, v);
  return out;
}

}  // namespace

Response get(const std::string& base_url, const std::string& path,
             const std::map<std::string, std::string>& headers, std::chrono::seconds timeout) {
  const auto url = split(base_url);
  httplib::Client client(url.origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  return convert(client.Get(url.prefix + path, to_headers(headers)));
}

Response post_json(const std::string& base_url, const std::string& path, const std::string& body,
                   const std::map<std::string, std::string>& headers, std::chrono::seconds timeout) {
  const auto url = split(base_url);
  httplib::Client client(url.origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  return convert(client.Post(url.prefix + path, to_headers(headers), body, "application/json"));
}

std::string url_encode(const std::string& s) { return httplib::detail::encode_query_param(s); }

}  // namespace coexplore::http
