#include "fracspace/scenes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "fracspace/errors.hpp"
#include "fracspace/geometry2d.hpp"
#include "fracspace/geometry_nd.hpp"
#include "fracspace/integrator.hpp"
#include "json.hpp"

namespace fracspace {

namespace {

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a)
    return std::numeric_limits<std::size_t>::max();
  return a * b;
}

std::size_t samples_per_node(double period, double step) {
  return static_cast<std::size_t>(std::floor(period / step)) + 2;
}

std::size_t tree_nodes(int generation) {
  return generation == 0 ? 1 : (std::size_t{1} << (generation + 1)) - 2;
}

// Maps coordinates and path samples of any dimension onto the scene plane.
class PlaneEvaluator {
 public:
  PlaneEvaluator(const FractalConfig& config, std::array<int, 2> plane,
                 const QuadratureSettings& settings)
      : config_(config), plane_(plane), settings_(settings) {}

  bool planar_identity() const {
    return config_.dimension == 2 && plane_[0] == 0 && plane_[1] == 1;
  }

  std::complex<double> to_plane(const VectorN& v) const {
    return {v[plane_[0]], v[plane_[1]]};
  }

  std::complex<double> point(const BranchCode& code, SpaceCoordinate x) const {
    if (planar_identity()) return project_point(config_, code, x, settings_);
    std::vector<double> coords(static_cast<std::size_t>(config_.dimension), 0.0);
    coords[0] = x.x1;
    coords[1] = x.x2;
    return to_plane(project_point_nd(config_, code, coords, settings_));
  }

  std::vector<Polyline> runs(const BranchCode& code, std::span<const SpaceCoordinate> samples) const {
    if (planar_identity()) return project_samples(config_, code, samples, settings_);
    std::vector<Polyline> out;
    Polyline current{code, {}, {}};
    auto flush = [&] {
      if (current.points.size() >= 2) out.push_back(current);
      current.points.clear();
    };
    for (const SpaceCoordinate& x : samples) {
      if (!apply_range_restriction(config_.range_restrictions, code, x, config_.branch_period)) {
        flush();
        continue;
      }
      current.points.push_back(point(code, x));
    }
    flush();
    return out;
  }

  Polyline path(const BranchCode& code, double s_begin, double s_end, double step) const {
    if (planar_identity()) return sample_path(config_, code, s_begin, s_end, step, settings_);
    Polyline line{code, {}, {}};
    for (const VectorN& v : sample_path_nd(config_, code, s_begin, s_end, step, settings_))
      line.points.push_back(to_plane(v));
    return line;
  }

 private:
  const FractalConfig& config_;
  std::array<int, 2> plane_;
  const QuadratureSettings& settings_;
};

std::vector<Polyline> tree_layer(const PlaneEvaluator& eval, const FractalConfig& config,
                                 int generation, double step) {
  std::vector<Polyline> out;
  if (generation == 0) {
    out.push_back(eval.path(BranchCode{}, 0.0, 0.0, step));
    return out;
  }
  const double period = config.branch_period;
  for (int k = 1; k <= generation; ++k) {
    for (const BranchCode& code : enumerate_codes(k))
      out.push_back(eval.path(code, period * (k - 1), period * k, step));
  }
  return out;
}

std::vector<Polyline> branch_layer(const PlaneEvaluator& eval, const FractalConfig& config,
                                   const BranchCode& code, double step) {
  std::vector<Polyline> out;
  const double period = config.branch_period;
  for (std::size_t k = 1; k <= code.size(); ++k) {
    out.push_back(eval.path(code.prefix(k), period * static_cast<double>(k - 1),
                            period * static_cast<double>(k), step));
  }
  if (out.empty()) out.push_back(eval.path(code, 0.0, 0.0, step));
  return out;
}

FractalConfig effective_config(const RunConfigDocument& doc) {
  FractalConfig config = doc.fractal;
  if (doc.canonical) config.profile = canonical_profile(config.profile);
  return config;
}

std::vector<SpaceCoordinate> clipped_line(bool iso_x1, double value, double lo, double hi,
                                          double depth, double max_step) {
  std::vector<SpaceCoordinate> out;
  if (iso_x1) {
    if (value > depth) return out;
    hi = std::min(hi, depth - value);
  } else {
    hi = std::min(hi, depth - std::max(value, 0.0));
  }
  if (!(hi > lo)) return out;
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / max_step)));
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = i == n ? hi : lo + (hi - lo) * static_cast<double>(i) / n;
    out.push_back(iso_x1 ? SpaceCoordinate{value, t} : SpaceCoordinate{t, value});
  }
  return out;
}

// Images of the restriction bounds across the shape's coordinate extent.
std::vector<Polyline> cut_layer(const RunConfigDocument& doc, const FractalConfig& config,
                                const std::vector<SpaceCoordinate>& samples,
                                std::span<const BranchCode> codes) {
  std::vector<Polyline> out;
  if (config.range_restrictions.empty() || samples.empty()) return out;
  double x1_lo = samples.front().x1, x1_hi = x1_lo, x2_lo = samples.front().x2, x2_hi = x2_lo;
  for (const auto& x : samples) {
    x1_lo = std::min(x1_lo, x.x1);
    x1_hi = std::max(x1_hi, x.x1);
    x2_lo = std::min(x2_lo, x.x2);
    x2_hi = std::max(x2_hi, x.x2);
  }
  FractalConfig unrestricted = config;
  unrestricted.range_restrictions.clear();
  const PlaneEvaluator eval(unrestricted, doc.scene.plane, doc.quadrature);
  const double step = doc.scene.sample_step;

  for (const RangeRestriction& r : config.range_restrictions) {
    const auto at = static_cast<std::size_t>(r.generation - 1);
    const double branch_point = config.branch_period * static_cast<double>(at);
    for (const BranchCode& code : codes) {
      if (code.size() <= at) continue;
      const int sign = code[at];
      if ((r.child == RangeRestriction::Child::plus && sign < 0) ||
          (r.child == RangeRestriction::Child::minus && sign > 0))
        continue;
      const double depth = config.realize(code).depth();
      auto emit = [&](const std::vector<SpaceCoordinate>& line) {
        std::vector<SpaceCoordinate> past;
        for (const auto& x : line) {
          if (std::max(x.x1, x.x1 + x.x2) > branch_point) past.push_back(x);
        }
        if (past.size() < 2) return;
        auto runs = eval.runs(code, past);
        out.insert(out.end(), runs.begin(), runs.end());
      };
      for (const auto& bound : {r.x2_min, r.x2_max}) {
        if (bound) emit(clipped_line(false, *bound, x1_lo, x1_hi, depth, step));
      }
      for (const auto& bound : {r.x1_min, r.x1_max}) {
        if (bound) emit(clipped_line(true, *bound, x2_lo, x2_hi, depth, step));
      }
    }
  }
  return out;
}

}  // namespace

std::string_view command_name(Command command) {
  switch (command) {
    case Command::tree:
      return "tree";
    case Command::grid:
      return "grid";
    case Command::project:
      return "project";
  }
  return "tree";
}

WorkBudget WorkBudget::from_environment() {
  if (const char* text = std::getenv("FRACSPACE_MAX_CODES")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(text, &end, 10);
    if (end != text && *end == '\0' && value > 0) return WorkBudget(static_cast<std::size_t>(value));
  }
  return WorkBudget();
}

void WorkBudget::charge(std::size_t work, std::string_view what) const {
  if (work > limit_) {
    throw LimitError(std::string(what) + " needs " + std::to_string(work) +
                     " code-samples, above the limit of " + std::to_string(limit_));
  }
}

std::vector<Polyline> tree_polylines(const FractalConfig& config, int generation, double step,
                                     const QuadratureSettings& settings) {
  const PlaneEvaluator eval(config, {0, 1}, settings);
  return tree_layer(eval, config, generation, step);
}

SceneSpec build_scene(Command command, const RunConfigDocument& doc, const WorkBudget& budget) {
  validate(doc);
  const FractalConfig config = effective_config(doc);
  const int generation = config.generations;
  const double step = doc.scene.sample_step;
  const PlaneEvaluator eval(config, doc.scene.plane, doc.quadrature);
  const std::size_t node_work =
      saturating_mul(tree_nodes(generation), samples_per_node(config.branch_period, step));

  SceneSpec scene;
  scene.width_px = doc.scene.width_px;
  scene.stroke_px = doc.scene.stroke_px;

  switch (command) {
    case Command::tree: {
      budget.charge(node_work, "tree");
      scene.layers.push_back({LayerKind::tree, tree_layer(eval, config, generation, step)});
      break;
    }
    case Command::grid: {
      const GridSpec grid = doc.grid.value_or(GridSpec{});
      std::vector<BranchCode> codes =
          grid.code ? std::vector<BranchCode>{*grid.code} : enumerate_codes(generation);
      const double depth = config.realize(codes.front()).depth();
      std::size_t samples = 0;
      for (const auto& line : grid_lines(grid.window, grid.spacing, depth)) samples += line.size();
      std::size_t work = saturating_mul(codes.size(), samples);
      if (doc.scene.show_tree) work += grid.code ? codes.front().size() * samples_per_node(config.branch_period, step) : node_work;
      budget.charge(work, "grid");

      Layer lines{LayerKind::grid, {}};
      for (const BranchCode& code : codes) {
        for (const auto& line : grid_lines(grid.window, grid.spacing, depth)) {
          auto runs = eval.runs(code, line);
          lines.polylines.insert(lines.polylines.end(), runs.begin(), runs.end());
        }
      }
      scene.layers.push_back(std::move(lines));
      if (doc.scene.show_tree) {
        scene.layers.push_back(
            {LayerKind::tree, grid.code ? branch_layer(eval, config, *grid.code, step)
                                        : tree_layer(eval, config, generation, step)});
      }
      break;
    }
    case Command::project: {
      if (!doc.shape) throw ValidationError("shape", "a shape is required for project");
      const auto samples = sample_shape(*doc.shape);
      const auto codes = enumerate_codes(generation);
      std::size_t work = saturating_mul(codes.size(), samples.size());
      if (doc.scene.show_tree) work += node_work;
      budget.charge(work, "project");

      if (doc.scene.show_tree)
        scene.layers.push_back({LayerKind::tree, tree_layer(eval, config, generation, step)});
      Layer shape{LayerKind::shape, {}};
      for (const BranchCode& code : codes) {
        auto runs = eval.runs(code, samples);
        shape.polylines.insert(shape.polylines.end(), runs.begin(), runs.end());
      }
      scene.layers.push_back(std::move(shape));
      auto cuts = cut_layer(doc, config, samples, codes);
      if (!cuts.empty()) scene.layers.push_back({LayerKind::restriction_cut, std::move(cuts)});
      break;
    }
  }
  return scene;
}

std::string render_document(Command command, const RunConfigDocument& doc,
                            const WorkBudget& budget) {
  return render(build_scene(command, doc, budget));
}

std::string polylines_json(Command command, const SceneSpec& scene) {
  using nlohmann::json;
  json layers = json::array();
  for (const Layer& layer : scene.layers) {
    json lines = json::array();
    for (const Polyline& line : layer.polylines) {
      json points = json::array();
      for (const auto& p : line.points) points.push_back({p.real(), p.imag()});
      lines.push_back({{"code", line.code.to_string()},
                       {"generation", line.code.size()},
                       {"points", std::move(points)}});
    }
    layers.push_back({{"kind", layer_name(layer.kind)}, {"polylines", std::move(lines)}});
  }
  const ViewBox box = fit_view_box(scene);
  json out = {{"schema_version", kSchemaVersion},
              {"command", command_name(command)},
              {"view_box", {box.x, box.y, box.width, box.height}},
              {"layers", std::move(layers)}};
  return out.dump();
}

}  // namespace fracspace
