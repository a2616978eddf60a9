#include "fracspace/document.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "fracspace/errors.hpp"
#include "json.hpp"

namespace fracspace {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(path, "must be finite");
  return d;
}

int as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ValidationError(path, "expected an integer");
  const auto i = v.get<long long>();
  if (i < -1000000 || i > 1000000) throw ValidationError(path, "integer out of range");
  return static_cast<int>(i);
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ValidationError(path, "expected true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ValidationError(path, "expected a string");
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ValidationError(path, "expected an array");
  return v;
}

std::array<double, 2> as_pair(const json& v, const std::string& path) {
  as_array(v, path);
  if (v.size() != 2) throw ValidationError(path, "expected an array of two numbers");
  return {as_number(v[0], index(path, 0)), as_number(v[1], index(path, 1))};
}

// Object accessor that remembers which keys were read, so leftovers can be
// reported as unknown.
class Reader {
 public:
  Reader(const json& value, std::string path) : value_(value), path_(std::move(path)) {
    if (!value_.is_object())
      throw ValidationError(path_.empty() ? "(document)" : path_, "expected an object");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = value_.find(key);
    return it == value_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) throw ValidationError(field(key), "required field is missing");
    return *v;
  }

  double number(const std::string& key, double fallback) {
    const json* v = find(key);
    return v ? as_number(*v, field(key)) : fallback;
  }

  int integer(const std::string& key, int fallback) {
    const json* v = find(key);
    return v ? as_integer(*v, field(key)) : fallback;
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    return v ? as_bool(*v, field(key)) : fallback;
  }

  std::optional<double> optional_number(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) return std::nullopt;
    return as_number(*v, field(key));
  }

  std::string field(const std::string& key) const { return join(path_, key); }

  void finish() const {
    for (const auto& [key, _] : value_.items()) {
      if (!seen_.contains(key)) throw ValidationError(field(key), "unknown key");
    }
  }

 private:
  const json& value_;
  std::string path_;
  std::set<std::string> seen_;
};

ScalarFunction parse_function(const json& v, const std::string& path) {
  Reader r(v, path);
  const std::string kind = as_string(r.require("kind"), r.field("kind"));
  ScalarFunction fn;
  if (kind == "const") {
    fn = ScalarFunction::constant(as_number(r.require("value"), r.field("value")));
  } else if (kind == "exp") {
    const double base = as_number(r.require("base"), r.field("base"));
    const double scale = r.number("scale", 1.0);
    fn = ScalarFunction::exponential(base, scale);
  } else if (kind == "piecewise") {
    const std::string at = r.field("pieces");
    const json& list = as_array(r.require("pieces"), at);
    if (list.empty()) throw ValidationError(at, "must not be empty");
    std::vector<ScalarFunction::Piece> pieces;
    for (std::size_t i = 0; i < list.size(); ++i) {
      Reader piece(list[i], index(at, i));
      pieces.push_back({as_number(piece.require("start"), piece.field("start")),
                        as_number(piece.require("value"), piece.field("value"))});
      piece.finish();
    }
    for (std::size_t i = 1; i < pieces.size(); ++i) {
      if (!(pieces[i].start > pieces[i - 1].start))
        throw ValidationError(index(at, i) + ".start", "starts must be strictly increasing");
    }
    fn = ScalarFunction::piecewise(std::move(pieces));
  } else {
    throw ValidationError(r.field("kind"), "expected one of const, exp, piecewise; got '" +
                                               kind + "'");
  }
  r.finish();
  return fn;
}

RangeRestriction::Child parse_child(const json& v, const std::string& path) {
  const std::string text = as_string(v, path);
  if (text == "plus") return RangeRestriction::Child::plus;
  if (text == "minus") return RangeRestriction::Child::minus;
  if (text == "both") return RangeRestriction::Child::both;
  throw ValidationError(path, "expected one of plus, minus, both; got '" + text + "'");
}

FractalConfig parse_fractal(const json& v, const std::string& path) {
  Reader r(v, path);
  FractalConfig config;
  if (const json* f = r.find("r_dot")) config.profile.r_dot = parse_function(*f, r.field("r_dot"));
  if (const json* f = r.find("phi_dot"))
    config.profile.phi_dot = parse_function(*f, r.field("phi_dot"));
  if (const json* list = r.find("turns")) {
    const std::string at = r.field("turns");
    as_array(*list, at);
    for (std::size_t i = 0; i < list->size(); ++i) {
      Reader turn((*list)[i], index(at, i));
      config.profile.turns.push_back({as_number(turn.require("s"), turn.field("s")),
                                      as_number(turn.require("angle"), turn.field("angle"))});
      turn.finish();
    }
  }
  config.profile.theta0 = r.number("theta0", 0.0);
  config.branch_period = r.number("branch_period", 1.0);
  config.generations = r.integer("generations", 0);
  config.dimension = r.integer("dimension", 2);
  if (const json* list = r.find("alpha_dots")) {
    const std::string at = r.field("alpha_dots");
    as_array(*list, at);
    for (std::size_t i = 0; i < list->size(); ++i) {
      Reader entry((*list)[i], index(at, i));
      AngleRate rate;
      if (const json* fn = entry.find("rate")) rate.rate = parse_function(*fn, entry.field("rate"));
      rate.initial = entry.number("initial", std::numbers::pi / 2);
      entry.finish();
      config.alpha_dots.push_back(std::move(rate));
    }
  } else if (config.dimension > 2 && config.dimension <= 32) {
    config.alpha_dots.resize(static_cast<std::size_t>(config.dimension - 2));
  }
  if (const json* list = r.find("range_restrictions")) {
    const std::string at = r.field("range_restrictions");
    as_array(*list, at);
    for (std::size_t i = 0; i < list->size(); ++i) {
      Reader entry((*list)[i], index(at, i));
      RangeRestriction restriction;
      restriction.generation = as_integer(entry.require("generation"), entry.field("generation"));
      if (const json* c = entry.find("child")) restriction.child = parse_child(*c, entry.field("child"));
      restriction.x1_min = entry.optional_number("x1_min");
      restriction.x1_max = entry.optional_number("x1_max");
      restriction.x2_min = entry.optional_number("x2_min");
      restriction.x2_max = entry.optional_number("x2_max");
      entry.finish();
      config.range_restrictions.push_back(restriction);
    }
  }
  r.finish();
  return config;
}

SceneOptions parse_scene(const json& v, const std::string& path) {
  Reader r(v, path);
  SceneOptions scene;
  scene.width_px = r.integer("width", scene.width_px);
  scene.stroke_px = r.number("stroke_width", scene.stroke_px);
  if (const json* plane = r.find("plane")) {
    const std::string at = r.field("plane");
    as_array(*plane, at);
    if (plane->size() != 2) throw ValidationError(at, "expected two axis indices");
    scene.plane = {as_integer((*plane)[0], index(at, 0)), as_integer((*plane)[1], index(at, 1))};
  }
  scene.show_tree = r.boolean("show_tree", scene.show_tree);
  scene.sample_step = r.number("sample_step", scene.sample_step);
  r.finish();
  return scene;
}

SpaceCoordinate as_coordinate(const json& v, const std::string& path) {
  const auto pair = as_pair(v, path);
  return {pair[0], pair[1]};
}

ShapeSpec parse_shape_json(const json& v, const std::string& path) {
  Reader r(v, path);
  const std::string kind = as_string(r.require("kind"), r.field("kind"));
  ShapeSpec shape;
  if (kind == "ellipse") {
    EllipseShape e;
    if (const json* c = r.find("center")) e.center = as_coordinate(*c, r.field("center"));
    const auto axes = as_pair(r.require("semi_axes"), r.field("semi_axes"));
    e.semi_axis_1 = axes[0];
    e.semi_axis_2 = axes[1];
    e.samples = r.integer("samples", e.samples);
    shape = e;
  } else if (kind == "circle") {
    CircleShape c;
    if (const json* center = r.find("center")) c.center = as_coordinate(*center, r.field("center"));
    c.radius = as_number(r.require("radius"), r.field("radius"));
    c.samples = r.integer("samples", c.samples);
    shape = c;
  } else if (kind == "segment") {
    SegmentShape s;
    s.from = as_coordinate(r.require("from"), r.field("from"));
    s.to = as_coordinate(r.require("to"), r.field("to"));
    s.samples = r.integer("samples", 65);
    shape = s;
  } else if (kind == "points") {
    PointListShape p;
    const std::string at = r.field("points");
    const json& list = as_array(r.require("points"), at);
    for (std::size_t i = 0; i < list.size(); ++i) p.points.push_back(as_coordinate(list[i], index(at, i)));
    p.closed = r.boolean("closed", false);
    shape = p;
  } else {
    throw ValidationError(r.field("kind"),
                          "expected one of ellipse, circle, segment, points; got '" + kind + "'");
  }
  r.finish();
  validate(shape, path.empty() ? "" : path + ".");
  return shape;
}

GridSpec parse_grid(const json& v, const std::string& path) {
  Reader r(v, path);
  GridSpec grid;
  if (const json* x1 = r.find("x1")) {
    const auto pair = as_pair(*x1, r.field("x1"));
    grid.window.x1_min = pair[0];
    grid.window.x1_max = pair[1];
  }
  if (const json* x2 = r.find("x2")) {
    const auto pair = as_pair(*x2, r.field("x2"));
    grid.window.x2_min = pair[0];
    grid.window.x2_max = pair[1];
  }
  grid.spacing = r.number("spacing", grid.spacing);
  if (const json* code = r.find("code")) {
    try {
      grid.code = BranchCode::parse(as_string(*code, r.field("code")));
    } catch (const ValidationError& e) {
      if (e.field() == "code") throw ValidationError(r.field("code"), "expected only '+' and '-'");
      throw;
    }
  }
  r.finish();
  return grid;
}

QuadratureSettings parse_quadrature(const json& v, const std::string& path) {
  Reader r(v, path);
  QuadratureSettings q;
  q.abs_tol = r.number("abs_tol", q.abs_tol);
  q.max_depth = r.integer("max_depth", q.max_depth);
  r.finish();
  return q;
}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ValidationError("(json)", "syntax error at line " + std::to_string(line) +
                                        ", column " + std::to_string(column) + ": " + e.what());
  }
}

}  // namespace

void validate(const RunConfigDocument& doc) {
  if (doc.schema_version != kSchemaVersion)
    throw ValidationError("schema_version", "expected " + std::to_string(kSchemaVersion) +
                                                 ", got " + std::to_string(doc.schema_version));
  validate(doc.fractal, "fractal.");
  const auto& scene = doc.scene;
  if (scene.width_px < 16 || scene.width_px > 20000)
    throw ValidationError("scene.width", "must be between 16 and 20000");
  if (!(scene.stroke_px > 0) || !std::isfinite(scene.stroke_px))
    throw ValidationError("scene.stroke_width", "must be > 0");
  for (std::size_t i = 0; i < 2; ++i) {
    if (scene.plane[i] < 0 || scene.plane[i] >= doc.fractal.dimension)
      throw ValidationError("scene.plane[" + std::to_string(i) + "]",
                            "axis index must be in [0, dimension)");
  }
  if (scene.plane[0] == scene.plane[1])
    throw ValidationError("scene.plane", "axes must be distinct");
  if (!(scene.sample_step > 0) || !std::isfinite(scene.sample_step))
    throw ValidationError("scene.sample_step", "must be > 0");
  if (doc.shape) validate(*doc.shape, "shape.");
  if (doc.grid) {
    const auto& g = *doc.grid;
    if (!(g.spacing > 0) || !std::isfinite(g.spacing))
      throw ValidationError("grid.spacing", "must be > 0");
    if (!(g.window.x1_min <= g.window.x1_max))
      throw ValidationError("grid.x1", "lower bound must not exceed upper bound");
    if (!(g.window.x2_min <= g.window.x2_max))
      throw ValidationError("grid.x2", "lower bound must not exceed upper bound");
  }
  if (!(doc.quadrature.abs_tol > 0) || !std::isfinite(doc.quadrature.abs_tol))
    throw ValidationError("quadrature.abs_tol", "must be > 0");
  if (doc.quadrature.max_depth < 1 || doc.quadrature.max_depth > 60)
    throw ValidationError("quadrature.max_depth", "must be between 1 and 60");
}

RunConfigDocument parse_document(std::string_view text) {
  const json root = parse_json_text(text);
  Reader r(root, "");
  RunConfigDocument doc;
  doc.schema_version = as_integer(r.require("schema_version"), "schema_version");
  if (doc.schema_version != kSchemaVersion)
    throw ValidationError("schema_version", "expected " + std::to_string(kSchemaVersion) +
                                                 ", got " + std::to_string(doc.schema_version));
  doc.fractal = parse_fractal(r.require("fractal"), "fractal");
  if (const json* scene = r.find("scene")) doc.scene = parse_scene(*scene, "scene");
  if (const json* shape = r.find("shape")) doc.shape = parse_shape_json(*shape, "shape");
  if (const json* grid = r.find("grid")) doc.grid = parse_grid(*grid, "grid");
  doc.canonical = r.boolean("canonical", false);
  if (const json* output = r.find("output")) {
    const std::string kind = as_string(*output, "output");
    if (kind == "svg")
      doc.output = OutputKind::svg;
    else if (kind == "polyline")
      doc.output = OutputKind::polyline;
    else
      throw ValidationError("output", "expected svg or polyline; got '" + kind + "'");
  }
  if (const json* q = r.find("quadrature")) doc.quadrature = parse_quadrature(*q, "quadrature");
  r.finish();
  validate(doc);
  return doc;
}

RunConfigDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("(file)", "cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_document(text.str());
  } catch (const ValidationError& e) {
    throw ValidationError(e.field(), e.message() + " (in " + path.string() + ")");
  }
}

ShapeSpec parse_shape(std::string_view text) {
  return parse_shape_json(parse_json_text(text), "shape");
}

}  // namespace fracspace
