#pragma once

// Stateless JSON/HTTP interface. Service::handle does the routing and is
// usable without a socket; HttpServer binds it to cpp-httplib.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "fracspace/scenes.hpp"

namespace fracspace {

inline constexpr std::string_view kVersion = FRACSPACE_VERSION;

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

class Service {
 public:
  explicit Service(std::optional<std::filesystem::path> config_dir = std::nullopt,
                   WorkBudget budget = WorkBudget::from_environment());

  HttpResponse handle(std::string_view method, std::string_view path,
                      std::string_view body) const;

 private:
  HttpResponse run(Command command, std::string_view body) const;
  HttpResponse list_configs() const;
  HttpResponse get_config(std::string_view name) const;

  std::optional<std::filesystem::path> config_dir_;
  WorkBudget budget_;
};

/// Error body shared with the CLI's stderr report.
std::string error_json(std::string_view message, std::string_view field = {});

class HttpServer {
 public:
  explicit HttpServer(Service service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds and serves on a background thread; port 0 picks a free port.
  /// Returns the bound port.
  int start(const std::string& host, int port);

  /// Binds and serves on the calling thread until stop().
  void listen(const std::string& host, int port);

  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
};

}  // namespace fracspace
