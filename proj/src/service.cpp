#include "fracspace/service.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fracspace/errors.hpp"
#include "httplib.h"
#include "json.hpp"

namespace fracspace {

namespace {

constexpr std::string_view kPrefix = "/api/v1/";

HttpResponse json_response(int status, std::string body) {
  return {status, "application/json", std::move(body)};
}

bool valid_config_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

}  // namespace

std::string error_json(std::string_view message, std::string_view field) {
  nlohmann::json out = {{"error", message}};
  if (!field.empty()) out["field"] = field;
  return out.dump();
}

Service::Service(std::optional<std::filesystem::path> config_dir, WorkBudget budget)
    : config_dir_(std::move(config_dir)), budget_(budget) {}

HttpResponse Service::handle(std::string_view method, std::string_view path,
                             std::string_view body) const {
  if (const auto query = path.find('?'); query != std::string_view::npos)
    path = path.substr(0, query);
  if (!path.starts_with(kPrefix)) return json_response(404, error_json("not found"));
  const std::string_view route = path.substr(kPrefix.size());

  auto only = [&](std::string_view allowed) -> std::optional<HttpResponse> {
    if (method == allowed) return std::nullopt;
    return json_response(405, error_json("method not allowed"));
  };

  try {
    if (route == "health") {
      if (auto r = only("GET")) return *r;
      nlohmann::json out = {
          {"status", "ok"}, {"version", kVersion}, {"schema_version", kSchemaVersion}};
      return json_response(200, out.dump());
    }
    for (Command command : {Command::tree, Command::grid, Command::project}) {
      if (route == command_name(command)) {
        if (auto r = only("POST")) return *r;
        return run(command, body);
      }
    }
    if (route == "configs") {
      if (auto r = only("GET")) return *r;
      return list_configs();
    }
    if (route.starts_with("configs/")) {
      if (auto r = only("GET")) return *r;
      return get_config(route.substr(8));
    }
  } catch (const ValidationError& e) {
    return json_response(400, error_json(e.message(), e.field()));
  } catch (const ComputationError& e) {
    return json_response(422, error_json(e.what()));
  } catch (const std::exception& e) {
    return json_response(500, error_json(e.what()));
  }
  return json_response(404, error_json("not found"));
}

HttpResponse Service::run(Command command, std::string_view body) const {
  const RunConfigDocument doc = parse_document(body);
  const SceneSpec scene = build_scene(command, doc, budget_);
  if (doc.output == OutputKind::polyline) return json_response(200, polylines_json(command, scene));
  return {200, "image/svg+xml", render(scene)};
}

HttpResponse Service::list_configs() const {
  nlohmann::json names = nlohmann::json::array();
  if (config_dir_ && std::filesystem::is_directory(*config_dir_)) {
    std::vector<std::string> found;
    for (const auto& entry : std::filesystem::directory_iterator(*config_dir_)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        found.push_back(entry.path().stem().string());
    }
    std::sort(found.begin(), found.end());
    for (auto& name : found) names.push_back(std::move(name));
  }
  return json_response(200, nlohmann::json{{"configs", std::move(names)}}.dump());
}

HttpResponse Service::get_config(std::string_view name) const {
  if (!config_dir_ || !valid_config_name(name))
    return json_response(404, error_json("no such config"));
  const auto file = *config_dir_ / (std::string(name) + ".json");
  std::ifstream in(file, std::ios::binary);
  if (!in) return json_response(404, error_json("no such config"));
  std::ostringstream text;
  text << in.rdbuf();
  parse_document(text.str());  // serve only documents that are valid
  return json_response(200, text.str());
}

struct HttpServer::Impl {
  Service service;
  httplib::Server server;

  explicit Impl(Service s) : service(std::move(s)) {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      const HttpResponse out = service.handle(req.method, req.path, req.body);
      res.status = out.status;
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_content(out.body, out.content_type);
    };
    server.Get(R"(/.*)", forward);
    server.Post(R"(/.*)", forward);
    server.Put(R"(/.*)", forward);
    server.Delete(R"(/.*)", forward);
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
  }
};

HttpServer::HttpServer(Service service) : impl_(std::make_unique<Impl>(std::move(service))) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::listen(const std::string& host, int port) {
  if (!impl_->server.listen(host, port))
    throw Error("cannot listen on " + host + ":" + std::to_string(port));
}

void HttpServer::stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace fracspace
