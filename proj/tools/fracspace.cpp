// fracspace command-line front end: tree, grid, project and serve.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracspace/document.hpp"
#include "fracspace/errors.hpp"
#include "fracspace/scenes.hpp"
#include "fracspace/service.hpp"

namespace fs = std::filesystem;
using namespace fracspace;

namespace {

struct RunOptions {
  std::string config;
  std::string out;
  std::string format;
  std::optional<int> generations;
};

void write_output(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const fs::path target(out);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
    if (!stream) throw ValidationError("out", "cannot write " + tmp.string());
    stream << text;
    if (!stream.flush()) throw ValidationError("out", "cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::pair<double, double> parse_range(const std::string& text, const std::string& field) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const double lo = std::stod(text.substr(0, comma), &used);
    const std::string rest = text.substr(comma + 1);
    std::size_t used_hi = 0;
    const double hi = std::stod(rest, &used_hi);
    if (used != comma || used_hi != rest.size()) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ValidationError(field, "expected LO,HI, got '" + text + "'");
  }
}

RunConfigDocument load_with_overrides(const RunOptions& options) {
  RunConfigDocument doc = load_document(options.config);
  if (options.generations) doc.fractal.generations = *options.generations;
  if (options.format == "svg") doc.output = OutputKind::svg;
  if (options.format == "polyline") doc.output = OutputKind::polyline;
  return doc;
}

void emit(Command command, const RunConfigDocument& doc, const std::string& out) {
  validate(doc);
  const SceneSpec scene = build_scene(command, doc);
  write_output(doc.output == OutputKind::polyline ? polylines_json(command, scene) + "\n"
                                                  : render(scene),
               out);
}

void add_run_options(CLI::App* sub, RunOptions& options) {
  sub->add_option("config", options.config, "run configuration document (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--out,-o", options.out, "output file (default: stdout)");
  sub->add_option("--format", options.format, "svg or polyline (default: from the document)")
      ->check(CLI::IsMember({"svg", "polyline"}));
  sub->add_option("--generations,-g", options.generations, "override fractal.generations");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smooth binary tree fractals and their fractal geometric space"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunOptions tree_options;
  auto* tree = app.add_subcommand("tree", "draw the branch tree");
  add_run_options(tree, tree_options);

  RunOptions grid_options;
  std::string grid_x1, grid_x2, grid_code;
  std::optional<double> grid_spacing;
  bool all_branches = false;
  auto* grid = app.add_subcommand("grid", "draw the warped coordinate grid");
  add_run_options(grid, grid_options);
  grid->add_option("--x1", grid_x1, "x1 window as LO,HI");
  grid->add_option("--x2", grid_x2, "x2 window as LO,HI");
  grid->add_option("--spacing", grid_spacing, "grid line spacing");
  auto* code_opt = grid->add_option("--code", grid_code, "single branch code such as -+--");
  grid->add_flag("--all-branches", all_branches, "draw every branch of the generation")
      ->excludes(code_opt);

  RunOptions project_options;
  std::string shape_arg;
  bool canonical = false;
  auto* project = app.add_subcommand("project", "map a shape through every branch");
  add_run_options(project, project_options);
  project->add_option("--shape", shape_arg, "shape JSON file or inline JSON object");
  project->add_flag("--canonical", canonical, "replace the profile with the canonical one");

  int port = 8080;
  std::string host = "127.0.0.1";
  std::string config_dir;
  auto* serve = app.add_subcommand("serve", "serve the JSON/HTTP interface");
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "bind address");
  serve->add_option("--config-dir", config_dir, "directory of named run documents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*tree) {
      emit(Command::tree, load_with_overrides(tree_options), tree_options.out);
    } else if (*grid) {
      RunConfigDocument doc = load_with_overrides(grid_options);
      GridSpec spec = doc.grid.value_or(GridSpec{});
      if (!grid_x1.empty()) {
        const auto [lo, hi] = parse_range(grid_x1, "x1");
        spec.window.x1_min = lo;
        spec.window.x1_max = hi;
      }
      if (!grid_x2.empty()) {
        const auto [lo, hi] = parse_range(grid_x2, "x2");
        spec.window.x2_min = lo;
        spec.window.x2_max = hi;
      }
      if (grid_spacing) spec.spacing = *grid_spacing;
      if (!grid_code.empty()) spec.code = BranchCode::parse(grid_code);
      if (all_branches) spec.code.reset();
      doc.grid = spec;
      emit(Command::grid, doc, grid_options.out);
    } else if (*project) {
      RunConfigDocument doc = load_with_overrides(project_options);
      if (!shape_arg.empty()) {
        if (shape_arg.front() == '{') {
          doc.shape = parse_shape(shape_arg);
        } else {
          std::ifstream in(shape_arg, std::ios::binary);
          if (!in) throw ValidationError("shape", "cannot read " + shape_arg);
          std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
          doc.shape = parse_shape(text);
        }
      }
      if (canonical) doc.canonical = true;
      emit(Command::project, doc, project_options.out);
    } else if (*serve) {
      std::optional<fs::path> dir;
      if (!config_dir.empty()) dir = fs::path(config_dir);
      HttpServer server{Service(dir)};
      std::cerr << "fracspace serving on http://" << host << ":" << port << "\n";
      server.listen(host, port);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ComputationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
