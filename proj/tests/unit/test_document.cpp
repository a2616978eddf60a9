#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracspace/document.hpp"
#include "fracspace/errors.hpp"

using namespace fracspace;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "(accepted)";
}

const char* kMinimal = R"({"schema_version": 1, "fractal": {}})";

}  // namespace

TEST(Document, MinimalDefaults) {
  const auto doc = parse_document(kMinimal);
  EXPECT_EQ(doc.fractal.generations, 0);
  EXPECT_EQ(doc.fractal.dimension, 2);
  EXPECT_DOUBLE_EQ(doc.fractal.branch_period, 1.0);
  EXPECT_DOUBLE_EQ(doc.fractal.profile.r_dot(5.0), 1.0);
  EXPECT_EQ(doc.output, OutputKind::svg);
  EXPECT_EQ(doc.scene.width_px, 800);
  EXPECT_FALSE(doc.shape.has_value());
}

TEST(Document, FullFractalSection) {
  const auto doc = parse_document(R"({
    "schema_version": 1,
    "fractal": {
      "r_dot": {"kind": "exp", "base": 0.6666666666666666},
      "phi_dot": {"kind": "piecewise", "pieces": [{"start": 0, "value": 1}, {"start": 2, "value": -1}]},
      "turns": [{"s": 0.5, "angle": 0.25}],
      "theta0": 1.5,
      "generations": 3,
      "dimension": 3,
      "alpha_dots": [{"rate": {"kind": "const", "value": 0.2}, "initial": 1.0}],
      "range_restrictions": [{"generation": 1, "child": "plus", "x2_min": 0}]
    },
    "shape": {"kind": "circle", "center": [1, 0], "radius": 0.5, "samples": 12},
    "grid": {"x1": [0, 2], "x2": [-1, 1], "spacing": 0.5, "code": "-+-"},
    "scene": {"plane": [0, 2], "width": 640},
    "output": "polyline"
  })");
  EXPECT_NEAR(doc.fractal.profile.r_dot(1.0), 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(doc.fractal.profile.phi_dot(2.5), -1.0);
  ASSERT_EQ(doc.fractal.profile.turns.size(), 1u);
  ASSERT_EQ(doc.fractal.alpha_dots.size(), 1u);
  EXPECT_DOUBLE_EQ(doc.fractal.alpha_dots[0].initial, 1.0);
  ASSERT_EQ(doc.fractal.range_restrictions.size(), 1u);
  EXPECT_EQ(doc.fractal.range_restrictions[0].child, RangeRestriction::Child::plus);
  EXPECT_TRUE(std::holds_alternative<CircleShape>(*doc.shape));
  EXPECT_EQ(doc.grid->code->to_string(), "-+-");
  EXPECT_EQ(doc.scene.plane[1], 2);
  EXPECT_EQ(doc.output, OutputKind::polyline);
}

TEST(Document, HigherAnglesDefaultToPlanarEmbedding) {
  const auto doc = parse_document(R"({"schema_version": 1, "fractal": {"dimension": 4}})");
  ASSERT_EQ(doc.fractal.alpha_dots.size(), 2u);
  EXPECT_DOUBLE_EQ(doc.fractal.alpha_dots[1].initial, std::numbers::pi / 2);
}

TEST(Document, SchemaVersionIsRequiredAndChecked) {
  EXPECT_EQ(field_of(R"({"fractal": {}})"), "schema_version");
  EXPECT_EQ(field_of(R"({"schema_version": 2, "fractal": {}})"), "schema_version");
}

TEST(Document, UnknownKeysAreRejected) {
  EXPECT_EQ(field_of(R"({"schema_version": 1, "fractal": {}, "extra": 1})"), "extra");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "fractal": {"rdot": 1}})"), "fractal.rdot");
}

TEST(Document, InvalidValuesNameTheirField) {
  EXPECT_EQ(field_of(R"({"schema_version": 1, "fractal": {"r_dot": {"kind": "exp", "base": -1}}})"),
            "fractal.r_dot.base");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "fractal": {"r_dot": {"kind": "const", "value": 0}}})"),
            "fractal.r_dot.value");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "fractal": {"phi_dot": {"kind": "sine"}}})"),
            "fractal.phi_dot.kind");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "fractal": {"generations": "four"}})"),
            "fractal.generations");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "fractal": {"generations": 21}})"),
            "fractal.generations");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "fractal": {}, "grid": {"spacing": 0}})"),
            "grid.spacing");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "fractal": {}, "output": "png"})"), "output");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "fractal": {},
                         "shape": {"kind": "ellipse", "center": [0, 0], "semi_axes": [1, 0]}})"),
            "shape.semi_axes");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "fractal": {"dimension": 3, "alpha_dots": []}})"),
            "fractal.alpha_dots");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "fractal": {"range_restrictions":
                         [{"generation": 1, "child": "left"}]}})"),
            "fractal.range_restrictions[0].child");
}

TEST(Document, SyntaxErrorsReportLineAndColumn) {
  try {
    parse_document("{\n  \"schema_version\": 1,\n  \"fractal\": {,}\n}");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "(json)");
    EXPECT_NE(e.message().find("line 3"), std::string::npos) << e.message();
    EXPECT_NE(e.message().find("column"), std::string::npos);
  }
}

TEST(Document, MissingFileIsAValidationError) {
  EXPECT_THROW(load_document("/nonexistent/fracspace.json"), ValidationError);
}

TEST(Document, StandaloneShape) {
  const auto shape = parse_shape(R"({"kind": "segment", "from": [0, 0], "to": [1, 0.5]})");
  ASSERT_TRUE(std::holds_alternative<SegmentShape>(shape));
  EXPECT_THROW(parse_shape(R"({"kind": "blob"})"), ValidationError);
}
