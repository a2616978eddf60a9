#include "fracspace/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "fracspace/errors.hpp"

namespace fracspace {

namespace {

struct Rgb {
  int r, g, b;
};

constexpr Rgb kTrunk{92, 58, 30};
constexpr Rgb kCrown{46, 139, 87};

std::string hex(Rgb c) {
  std::array<char, 8> buf{};
  std::snprintf(buf.data(), buf.size(), "#%02x%02x%02x", c.r, c.g, c.b);
  return buf.data();
}

std::string generation_color(std::size_t generation, std::size_t max_generation) {
  if (max_generation == 0) return hex(kTrunk);
  const double t = static_cast<double>(generation) / static_cast<double>(max_generation);
  auto mix = [t](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * t)); };
  return hex({mix(kTrunk.r, kCrown.r), mix(kTrunk.g, kCrown.g), mix(kTrunk.b, kCrown.b)});
}

std::string layer_color(LayerKind kind) {
  switch (kind) {
    case LayerKind::grid:
      return "#8c8c8c";
    case LayerKind::shape:
      return "#c0392b";
    case LayerKind::restriction_cut:
      return "#1f5fbf";
    case LayerKind::tree:
      break;
  }
  return hex(kTrunk);
}

double layer_stroke(LayerKind kind, std::size_t generation) {
  switch (kind) {
    case LayerKind::tree:
      return std::max(0.35, 1.0 - 0.1 * static_cast<double>(generation));
    case LayerKind::grid:
      return 0.5;
    case LayerKind::shape:
      return 0.9;
    case LayerKind::restriction_cut:
      return 0.8;
  }
  return 1.0;
}

void append_path(std::string& out, const Polyline& line) {
  out += "M";
  for (std::size_t i = 0; i < line.points.size(); ++i) {
    if (i == 1) out += " L";
    out += ' ';
    out += format_number(line.points[i].real());
    out += ',';
    out += format_number(-line.points[i].imag());
  }
}

}  // namespace

std::string_view layer_name(LayerKind kind) {
  switch (kind) {
    case LayerKind::tree:
      return "tree";
    case LayerKind::grid:
      return "grid";
    case LayerKind::shape:
      return "shape";
    case LayerKind::restriction_cut:
      return "restriction-cut";
  }
  return "tree";
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6f", value);
  std::string text(buf.data());
  if (text.find_first_not_of("-0.") == std::string::npos && text.front() == '-') text.erase(0, 1);
  return text;
}

ViewBox fit_view_box(const SceneSpec& scene) {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const Layer& layer : scene.layers) {
    for (const Polyline& line : layer.polylines) {
      for (const auto& p : line.points) {
        min_x = std::min(min_x, p.real());
        max_x = std::max(max_x, p.real());
        min_y = std::min(min_y, -p.imag());
        max_y = std::max(max_y, -p.imag());
      }
    }
  }
  if (!(min_x <= max_x)) return {};
  double extent = std::max(max_x - min_x, max_y - min_y);
  if (extent <= 0) extent = 1.0;
  const double margin = 0.05 * extent;
  return {min_x - margin, min_y - margin, (max_x - min_x) + 2 * margin,
          (max_y - min_y) + 2 * margin};
}

std::string render(const SceneSpec& scene) {
  std::size_t total = 0;
  for (const Layer& layer : scene.layers) {
    for (const Polyline& line : layer.polylines) {
      if (line.points.size() < 2)
        throw PreconditionError("polyline with fewer than two points in layer '" +
                                std::string(layer_name(layer.kind)) + "'");
      for (const auto& p : line.points) {
        if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
          throw PreconditionError("non-finite point in layer '" +
                                  std::string(layer_name(layer.kind)) + "'");
      }
      ++total;
    }
  }
  if (total == 0) throw EmptySceneError("scene contains no polylines");
  if (scene.width_px <= 0) throw PreconditionError("scene width must be > 0");

  const ViewBox box = fit_view_box(scene);
  const double unit = box.width / scene.width_px;  // user units per output pixel
  const auto height_px =
      std::max(1L, std::lround(scene.width_px * box.height / box.width));

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(scene.width_px) + "\" height=\"" + std::to_string(height_px) +
         "\" viewBox=\"" + format_number(box.x) + " " + format_number(box.y) + " " +
         format_number(box.width) + " " + format_number(box.height) + "\">\n";
  out += "<rect x=\"" + format_number(box.x) + "\" y=\"" + format_number(box.y) + "\" width=\"" +
         format_number(box.width) + "\" height=\"" + format_number(box.height) +
         "\" fill=\"#ffffff\"/>\n";

  for (const Layer& layer : scene.layers) {
    if (layer.polylines.empty()) continue;
    const std::string name(layer_name(layer.kind));
    std::size_t max_generation = 0;
    for (const Polyline& line : layer.polylines)
      max_generation = std::max(max_generation, line.code.size());

    out += "<g class=\"" + name +
           "\" fill=\"none\" stroke-linecap=\"round\" stroke-linejoin=\"round\"";
    if (layer.kind == LayerKind::restriction_cut) {
      out += " stroke-dasharray=\"" + format_number(4 * unit) + "," + format_number(3 * unit) +
             "\"";
    }
    out += ">\n";
    for (const Polyline& line : layer.polylines) {
      const std::size_t generation = line.code.size();
      const std::string color = layer.kind == LayerKind::tree
                                    ? generation_color(generation, max_generation)
                                    : layer_color(layer.kind);
      const double stroke = scene.stroke_px * unit * layer_stroke(layer.kind, generation);
      out += "<path class=\"";
      out += line.style.empty() ? name : line.style;
      out += " g" + std::to_string(generation) + "\" stroke=\"" + color + "\" stroke-width=\"" +
             format_number(stroke) + "\" d=\"";
      append_path(out, line);
      out += "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fracspace
