#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <regex>

#include "fracspace/errors.hpp"
#include "fracspace/geometry2d.hpp"
#include "fracspace/scenes.hpp"
#include "fracspace/svg.hpp"
#include "oracles.hpp"

using namespace fracspace;
using cplx = std::complex<double>;

namespace {

std::vector<std::vector<cplx>> parse_paths(const std::string& svg) {
  std::vector<std::vector<cplx>> out;
  const std::regex path(R"re(d="([^"]*)")re");
  const std::regex pair(R"((-?[0-9.]+),(-?[0-9.]+))");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), path); it != std::sregex_iterator();
       ++it) {
    const std::string d = (*it)[1];
    std::vector<cplx> points;
    for (auto p = std::sregex_iterator(d.begin(), d.end(), pair); p != std::sregex_iterator(); ++p)
      points.emplace_back(std::stod((*p)[1]), -std::stod((*p)[2]));
    out.push_back(std::move(points));
  }
  return out;
}

}  // namespace

TEST(FormatNumber, FixedSixDecimalsWithoutNegativeZero) {
  EXPECT_EQ(format_number(1.0), "1.000000");
  EXPECT_EQ(format_number(-2.5), "-2.500000");
  EXPECT_EQ(format_number(-0.0), "0.000000");
  EXPECT_EQ(format_number(-1e-9), "0.000000");
  EXPECT_EQ(format_number(1234567.1234564), "1234567.123456");
}

TEST(ViewBox, FitsWithMarginAndFlipsY) {
  SceneSpec scene;
  scene.layers.push_back({LayerKind::shape, {Polyline{{}, {{0.0, 0.0}, {2.0, 1.0}}, {}}}});
  const ViewBox box = fit_view_box(scene);
  EXPECT_DOUBLE_EQ(box.x, -0.1);
  EXPECT_DOUBLE_EQ(box.y, -1.1);
  EXPECT_DOUBLE_EQ(box.width, 2.2);
  EXPECT_DOUBLE_EQ(box.height, 1.2);
}

TEST(Render, SinglePolylineDocument) {
  SceneSpec scene;
  scene.width_px = 100;
  scene.stroke_px = 1.0;
  scene.layers.push_back({LayerKind::shape, {Polyline{{}, {{0.0, 0.0}, {1.0, 1.0}}, {}}}});
  const std::string expected =
      "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"100\" height=\"100\" "
      "viewBox=\"-0.050000 -1.050000 1.100000 1.100000\">\n"
      "<rect x=\"-0.050000\" y=\"-1.050000\" width=\"1.100000\" height=\"1.100000\" "
      "fill=\"#ffffff\"/>\n"
      "<g class=\"shape\" fill=\"none\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n"
      "<path class=\"shape g0\" stroke=\"#c0392b\" stroke-width=\"0.009900\" "
      "d=\"M 0.000000,0.000000 L 1.000000,-1.000000\"/>\n"
      "</g>\n"
      "</svg>\n";
  EXPECT_EQ(render(scene), expected);
}

TEST(Render, EmptySceneIsAnError) {
  SceneSpec scene;
  EXPECT_THROW(render(scene), EmptySceneError);
  scene.layers.push_back({LayerKind::grid, {}});
  EXPECT_THROW(render(scene), EmptySceneError);
}

TEST(Render, RejectsDegenerateAndNonFinitePolylines) {
  SceneSpec scene;
  scene.layers.push_back({LayerKind::grid, {Polyline{{}, {{0.0, 0.0}}, {}}}});
  EXPECT_THROW(render(scene), PreconditionError);
  scene.layers[0].polylines[0].points.push_back({NAN, 0.0});
  EXPECT_THROW(render(scene), PreconditionError);
}

TEST(Render, DeterministicForIdenticalScenes) {
  const auto config = oracle::fig1(3);
  SceneSpec scene;
  scene.layers.push_back({LayerKind::tree, tree_polylines(config, 3, 1.0 / 16)});
  EXPECT_EQ(render(scene), render(scene));
  SceneSpec again;
  again.layers.push_back({LayerKind::tree, tree_polylines(config, 3, 1.0 / 16)});
  EXPECT_EQ(render(scene), render(again));
}

TEST(Render, TreeHasOnePathPerNode) {
  const auto config = oracle::fig1(4);
  SceneSpec scene;
  scene.layers.push_back({LayerKind::tree, tree_polylines(config, 4, 1.0 / 8)});
  const auto paths = parse_paths(render(scene));
  EXPECT_EQ(paths.size(), 30u);
}

TEST(Render, CanonicalEllipseParsesBackOntoTheEllipse) {
  const auto config = oracle::canonical(3);
  const EllipseShape ellipse{{1.0, 0.0}, 1.0, 0.5, 200};
  SceneSpec scene;
  scene.layers.push_back({LayerKind::shape, project_curve(config, ellipse, 3)});
  const auto paths = parse_paths(render(scene));
  ASSERT_EQ(paths.size(), 8u);
  for (const auto& points : paths) {
    ASSERT_EQ(points.size(), 201u);
    for (std::size_t j = 0; j < points.size(); ++j) {
      const double t = 2 * std::numbers::pi * static_cast<double>(j % 200) / 200;
      EXPECT_LT(std::abs(points[j] - cplx(1.0 + std::cos(t), 0.5 * std::sin(t))), 1e-6);
    }
  }
}

TEST(Render, GenerationZeroTreeIsARootDot) {
  const auto config = oracle::fig1(0);
  const auto lines = tree_polylines(config, 0, 0.1);
  ASSERT_EQ(lines.size(), 1u);
  ASSERT_EQ(lines[0].points.size(), 2u);
  SceneSpec scene;
  scene.layers.push_back({LayerKind::tree, lines});
  EXPECT_NE(render(scene).find("M 0.000000,0.000000 L 0.000000,0.000000"), std::string::npos);
}
