#pragma once

#include <memory>
#include <string>
#include <utility>

#include "coexplore/explorer.hpp"

namespace coexplore::api {

// "host:port"; the port defaults to 8080.
std::pair<std::string, int> parse_bind_addr(std::string_view addr);

// JSON API under /api/v1.
class ApiServer {
 public:
  explicit ApiServer(Explorer& explorer);
  ~ApiServer();

  // Binds to an ephemeral port and returns it; call listen() afterwards.
  int bind_any_port(const std::string& host);
  bool bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

int http_status(ErrorKind kind);

}  // namespace coexplore::api
