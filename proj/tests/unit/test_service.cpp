#include <gtest/gtest.h>

#include "figures.hpp"
#include "fracspace/service.hpp"
#include "httplib.h"
#include "json.hpp"

using namespace fracspace;
using nlohmann::json;

namespace {

Service make_service() { return Service(figures::source_dir() / "configs", WorkBudget()); }

std::string with_output(const std::string& doc_text, const char* output) {
  json doc = json::parse(doc_text);
  doc["output"] = output;
  return doc.dump();
}

}  // namespace

TEST(Service, Health) {
  const auto res = make_service().handle("GET", "/api/v1/health", "");
  EXPECT_EQ(res.status, 200);
  const auto body = json::parse(res.body);
  EXPECT_EQ(body["status"], "ok");
  EXPECT_EQ(body["version"], std::string(kVersion));
  EXPECT_EQ(body["schema_version"], 1);
}

TEST(Service, TreeSvgMatchesTheSceneBuilder) {
  const auto text = *figures::read_file(figures::config_path("fig1"));
  const auto res = make_service().handle("POST", "/api/v1/tree", text);
  ASSERT_EQ(res.status, 200) << res.body;
  EXPECT_EQ(res.content_type, "image/svg+xml");
  EXPECT_EQ(res.body, render_document(Command::tree, parse_document(text), WorkBudget()));
}

TEST(Service, PolylineOutput) {
  const auto text = with_output(*figures::read_file(figures::config_path("fig3")), "polyline");
  const auto res = make_service().handle("POST", "/api/v1/project", text);
  ASSERT_EQ(res.status, 200) << res.body;
  EXPECT_EQ(res.content_type, "application/json");
  const auto body = json::parse(res.body);
  EXPECT_EQ(body["command"], "project");
  EXPECT_EQ(body["layers"][1]["kind"], "shape");
  EXPECT_EQ(body["layers"][1]["polylines"].size(), 16u);
}

TEST(Service, ValidationErrorsAre400WithField) {
  const auto res = make_service().handle(
      "POST", "/api/v1/tree", R"({"schema_version": 1, "fractal": {"r_dot": {"kind": "exp", "base": 0}}})");
  EXPECT_EQ(res.status, 400);
  EXPECT_EQ(json::parse(res.body)["field"], "fractal.r_dot.base");
  EXPECT_EQ(make_service().handle("POST", "/api/v1/grid", "not json").status, 400);
}

TEST(Service, ComputationErrorsAre422) {
  const auto res = make_service().handle("POST", "/api/v1/project", R"({"schema_version": 1,
      "fractal": {"generations": 1}, "shape": {"kind": "circle", "center": [3, 0], "radius": 1}})");
  EXPECT_EQ(res.status, 422);
  EXPECT_TRUE(json::parse(res.body).contains("error"));
  const Service tight(std::nullopt, WorkBudget(10));
  EXPECT_EQ(tight.handle("POST", "/api/v1/tree", R"({"schema_version": 1, "fractal": {"generations": 3}})")
                .status,
            422);
}

TEST(Service, RoutingErrors) {
  const auto service = make_service();
  EXPECT_EQ(service.handle("GET", "/api/v1/nope", "").status, 404);
  EXPECT_EQ(service.handle("GET", "/elsewhere", "").status, 404);
  EXPECT_EQ(service.handle("GET", "/api/v1/tree", "").status, 405);
  EXPECT_EQ(service.handle("POST", "/api/v1/health", "").status, 405);
}

TEST(Service, NamedConfigs) {
  const auto service = make_service();
  const auto list = json::parse(service.handle("GET", "/api/v1/configs", "").body);
  ASSERT_EQ(list["configs"].size(), 6u);
  EXPECT_EQ(list["configs"][0], "fig1");
  const auto one = service.handle("GET", "/api/v1/configs/fig2", "");
  EXPECT_EQ(one.status, 200);
  EXPECT_EQ(one.body, *figures::read_file(figures::config_path("fig2")));
  EXPECT_EQ(service.handle("GET", "/api/v1/configs/../CMakeLists", "").status, 404);
  EXPECT_EQ(service.handle("GET", "/api/v1/configs/missing", "").status, 404);
}

TEST(HttpServer, ServesOverTheNetwork) {
  HttpServer server(make_service());
  const int port = server.start("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  httplib::Client client("127.0.0.1", port);
  const auto health = client.Get("/api/v1/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(health->get_header_value("Access-Control-Allow-Origin"), "*");

  const auto text = *figures::read_file(figures::config_path("fig1"));
  const auto tree = client.Post("/api/v1/tree", text, "application/json");
  ASSERT_TRUE(tree);
  EXPECT_EQ(tree->status, 200);
  EXPECT_EQ(tree->body, render_document(Command::tree, parse_document(text), WorkBudget()));

  const auto bad = client.Post("/api/v1/tree", "{", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  server.stop();
}
