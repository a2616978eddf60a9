#pragma once

// Versioned run-configuration documents shared by the CLI and the HTTP service.
// The normative field list lives in docs/schema.md.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "fracspace/geometry2d.hpp"
#include "fracspace/profile.hpp"
#include "fracspace/quadrature.hpp"

namespace fracspace {

inline constexpr int kSchemaVersion = 1;

enum class OutputKind { svg, polyline };

struct SceneOptions {
  int width_px = 800;
  double stroke_px = 1.5;
  std::array<int, 2> plane{0, 1};  // coordinate axes shown for n > 2
  bool show_tree = true;
  double sample_step = 1.0 / 32.0;  // path-parameter step of tree polylines
};

struct GridSpec {
  GridWindow window{0.0, 4.0, -1.0, 1.0};
  double spacing = 1.0;
  std::optional<BranchCode> code;  // unset: every branch of the configured generation
};

struct RunConfigDocument {
  int schema_version = kSchemaVersion;
  FractalConfig fractal;
  SceneOptions scene;
  std::optional<ShapeSpec> shape;
  std::optional<GridSpec> grid;
  bool canonical = false;
  OutputKind output = OutputKind::svg;
  QuadratureSettings quadrature;
};

/// Parses and validates a document. Syntax errors report line and column;
/// unknown keys, wrong types and invariant violations throw ValidationError
/// naming the dotted field path.
RunConfigDocument parse_document(std::string_view text);

RunConfigDocument load_document(const std::filesystem::path& path);

/// Parses a standalone shape object (the document's "shape" section).
ShapeSpec parse_shape(std::string_view text);

/// Re-checks the invariants after programmatic edits (e.g. CLI overrides).
void validate(const RunConfigDocument& doc);

}  // namespace fracspace
