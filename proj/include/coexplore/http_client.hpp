#pragma once

#include <chrono>
#include <map>
#include <string>

namespace coexplore::http {

struct Response {
  int status = 0;  // 0 when the request never completed
  std::string body;
  std::map<std::string, std::string> headers;
  std::string transport_error;
};

// base_url may carry a path prefix ("https://host/v1"); path is appended to it.
Response get(const std::string& base_url, const std::string& path,
             const std::map<std::string, std::string>& headers, std::chrono::seconds timeout);
Response post_json(const std::string& base_url, const std::string& path, const std::string& body,
                   const std::map<std::string, std::string>& headers, std::chrono::seconds timeout);

std::string url_encode(const std::string& s);

}  // namespace coexplore::http
