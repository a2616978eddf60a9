#pragma once

// Deterministic SVG 1.1 output for polyline scenes.

#include <string>
#include <string_view>
#include <vector>

#include "fracspace/polyline.hpp"

namespace fracspace {

enum class LayerKind { tree, grid, shape, restriction_cut };

std::string_view layer_name(LayerKind kind);

struct Layer {
  LayerKind kind = LayerKind::tree;
  std::vector<Polyline> polylines;
};

struct SceneSpec {
  std::vector<Layer> layers;
  int width_px = 800;
  double stroke_px = 1.5;  // base stroke width in output pixels
};

struct ViewBox {
  double x = 0.0;
  double y = 0.0;
  double width = 1.0;
  double height = 1.0;
};

/// Bounding box of every point (y flipped to SVG orientation) grown by 5% of
/// the larger extent on each side.
ViewBox fit_view_box(const SceneSpec& scene);

/// Fixed six-decimal formatting used for every coordinate; -0 prints as 0.
std::string format_number(double value);

/// Byte-identical output for identical scenes. Throws EmptySceneError when
/// the scene holds no polylines.
std::string render(const SceneSpec& scene);

}  // namespace fracspace
