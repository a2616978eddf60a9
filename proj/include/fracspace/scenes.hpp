#pragma once

// Builds the tree, grid and projection scenes of a run document. The CLI and
// the HTTP service both go through these functions, which keeps their SVG
// output byte-identical.

#include <cstddef>
#include <string>
#include <string_view>

#include "fracspace/document.hpp"
#include "fracspace/svg.hpp"

namespace fracspace {

enum class Command { tree, grid, project };

std::string_view command_name(Command command);

/// Caps codes x samples per request.
class WorkBudget {
 public:
  static constexpr std::size_t kDefaultLimit = std::size_t{1} << 22;

  explicit WorkBudget(std::size_t limit = kDefaultLimit) : limit_(limit) {}

  /// Reads FRACSPACE_MAX_CODES when set to a positive integer.
  static WorkBudget from_environment();

  std::size_t limit() const noexcept { return limit_; }

  /// Throws LimitError when `work` exceeds the limit.
  void charge(std::size_t work, std::string_view what) const;

 private:
  std::size_t limit_;
};

/// One polyline per tree node: the segment [(k-1)T, kT] of every code of
/// length k = 1..generation. Generation 0 yields the degenerate root polyline.
std::vector<Polyline> tree_polylines(const FractalConfig& config, int generation, double step,
                                     const QuadratureSettings& settings = {});

SceneSpec build_scene(Command command, const RunConfigDocument& doc,
                      const WorkBudget& budget = WorkBudget::from_environment());

/// SVG text of the scene for `doc`.
std::string render_document(Command command, const RunConfigDocument& doc,
                            const WorkBudget& budget = WorkBudget::from_environment());

/// Structured per-code polyline data (math orientation, full precision).
std::string polylines_json(Command command, const SceneSpec& scene);

}  // namespace fracspace
