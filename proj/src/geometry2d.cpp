#include "fracspace/geometry2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fracspace/errors.hpp"

namespace fracspace {

namespace {

constexpr double kDedupeTolerance = 1e-12;

bool child_matches(RangeRestriction::Child child, int sign) {
  switch (child) {
    case RangeRestriction::Child::plus:
      return sign > 0;
    case RangeRestriction::Child::minus:
      return sign < 0;
    case RangeRestriction::Child::both:
      return true;
  }
  return false;
}

bool within(const std::optional<double>& lo, const std::optional<double>& hi, double v) {
  return (!lo || v >= *lo) && (!hi || v <= *hi);
}

std::vector<SpaceCoordinate> closed_curve(SpaceCoordinate center, double r1, double r2,
                                          int samples) {
  std::vector<SpaceCoordinate> out;
  out.reserve(static_cast<std::size_t>(samples) + 1);
  for (int j = 0; j < samples; ++j) {
    const double t = 2.0 * std::numbers::pi * j / samples;
    out.push_back({center.x1 + r1 * std::cos(t), center.x2 + r2 * std::sin(t)});
  }
  out.push_back(out.front());
  return out;
}

std::vector<double> even_samples(double lo, double hi, double max_step) {
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / max_step - 1e-9)));
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / n;
  out.back() = hi;
  return out;
}

void require_finite(double v, const std::string& field) {
  if (!std::isfinite(v)) throw ValidationError(field, "must be a finite number");
}

}  // namespace

void require_in_domain(const UnitFunctionRealization& realization, SpaceCoordinate x) {
  if (!std::isfinite(x.x1) || !std::isfinite(x.x2))
    throw OutOfRangeError("coordinate must be finite");
  realization.require_within_depth(x.x1);
  realization.require_within_depth(x.x1 + x.x2);
}

std::complex<double> project_point(const FractalConfig& config, const BranchCode& code,
                                   SpaceCoordinate x, const QuadratureSettings& settings) {
  const auto realization = config.realize(code);
  require_in_domain(realization, x);
  const auto along = integrate_range(config.profile, realization, 0.0, x.x1, settings);
  if (x.x2 == 0.0) return along;
  const auto across = integrate_range(config.profile, realization, x.x1, x.x1 + x.x2, settings);
  return along + std::complex<double>(0.0, 1.0) * across;
}

bool apply_range_restriction(std::span<const RangeRestriction> restrictions,
                             const BranchCode& code, SpaceCoordinate x, double branch_period) {
  const double reach = std::max(x.x1, x.x1 + x.x2);
  for (const RangeRestriction& r : restrictions) {
    const auto index = static_cast<std::size_t>(r.generation - 1);
    if (r.generation < 1 || code.size() <= index) continue;
    if (!child_matches(r.child, code[index])) continue;
    if (!(reach > static_cast<double>(index) * branch_period)) continue;
    if (!within(r.x1_min, r.x1_max, x.x1) || !within(r.x2_min, r.x2_max, x.x2)) return false;
  }
  return true;
}

PointSet project_point_multivalued(const FractalConfig& config, SpaceCoordinate x, int generation,
                                   const QuadratureSettings& settings, Dedupe dedupe) {
  const auto codes = enumerate_codes(generation);
  require_in_domain(config.realize(codes.front()), x);
  PointSet set;
  set.entries.reserve(codes.size());
  for (const BranchCode& code : codes) {
    if (!apply_range_restriction(config.range_restrictions, code, x, config.branch_period))
      continue;
    set.entries.push_back({code, project_point(config, code, x, settings)});
  }
  if (dedupe == Dedupe::off || set.entries.size() < 2) return set;

  auto& entries = set.entries;
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return entries[l].value.real() < entries[r].value.real();
  });
  std::vector<bool> keep(entries.size(), true);
  for (std::size_t p = 1; p < order.size(); ++p) {
    const auto& v = entries[order[p]].value;
    for (std::size_t q = p; q-- > 0;) {
      const auto& w = entries[order[q]].value;
      if (v.real() - w.real() > kDedupeTolerance) break;
      if (keep[order[q]] && std::abs(v - w) <= kDedupeTolerance) {
        keep[order[p]] = false;
        break;
      }
    }
  }
  std::vector<PointSetEntry> unique;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (keep[i]) unique.push_back(std::move(entries[i]));
  }
  entries = std::move(unique);
  return set;
}

std::vector<SpaceCoordinate> sample_shape(const ShapeSpec& shape) {
  return std::visit(
      [](const auto& s) -> std::vector<SpaceCoordinate> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EllipseShape>) {
          return closed_curve(s.center, s.semi_axis_1, s.semi_axis_2, s.samples);
        } else if constexpr (std::is_same_v<T, CircleShape>) {
          return closed_curve(s.center, s.radius, s.radius, s.samples);
        } else if constexpr (std::is_same_v<T, SegmentShape>) {
          std::vector<SpaceCoordinate> out;
          const int n = std::max(2, s.samples);
          for (int j = 0; j < n; ++j) {
            const double t = static_cast<double>(j) / (n - 1);
            out.push_back({s.from.x1 + (s.to.x1 - s.from.x1) * t,
                           s.from.x2 + (s.to.x2 - s.from.x2) * t});
          }
          out.back() = s.to;
          return out;
        } else {
          auto out = s.points;
          if (s.closed && !out.empty()) out.push_back(out.front());
          return out;
        }
      },
      shape);
}

void validate(const ShapeSpec& shape, const std::string& prefix) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EllipseShape>) {
          require_finite(s.center.x1, prefix + "center");
          require_finite(s.center.x2, prefix + "center");
          if (!(s.semi_axis_1 > 0) || !(s.semi_axis_2 > 0) || !std::isfinite(s.semi_axis_1) ||
              !std::isfinite(s.semi_axis_2))
            throw ValidationError(prefix + "semi_axes", "must be finite and > 0");
          if (s.samples < 3) throw ValidationError(prefix + "samples", "must be >= 3");
        } else if constexpr (std::is_same_v<T, CircleShape>) {
          require_finite(s.center.x1, prefix + "center");
          require_finite(s.center.x2, prefix + "center");
          if (!(s.radius > 0) || !std::isfinite(s.radius))
            throw ValidationError(prefix + "radius", "must be finite and > 0");
          if (s.samples < 3) throw ValidationError(prefix + "samples", "must be >= 3");
        } else if constexpr (std::is_same_v<T, SegmentShape>) {
          for (double v : {s.from.x1, s.from.x2}) require_finite(v, prefix + "from");
          for (double v : {s.to.x1, s.to.x2}) require_finite(v, prefix + "to");
          if (s.samples < 2) throw ValidationError(prefix + "samples", "must be >= 2");
        } else {
          const std::size_t minimum = s.closed ? 3 : 2;
          if (s.points.size() < minimum)
            throw ValidationError(prefix + "points",
                                  "needs at least " + std::to_string(minimum) + " points");
          for (std::size_t i = 0; i < s.points.size(); ++i) {
            const std::string at = prefix + "points[" + std::to_string(i) + "]";
            require_finite(s.points[i].x1, at);
            require_finite(s.points[i].x2, at);
          }
        }
      },
      shape);
}

std::vector<Polyline> project_samples(const FractalConfig& config, const BranchCode& code,
                                      std::span<const SpaceCoordinate> samples,
                                      const QuadratureSettings& settings) {
  std::vector<Polyline> runs;
  Polyline current{code, {}, {}};
  auto flush = [&] {
    if (current.points.size() >= 2) runs.push_back(current);
    current.points.clear();
  };
  for (const SpaceCoordinate& x : samples) {
    if (!apply_range_restriction(config.range_restrictions, code, x, config.branch_period)) {
      flush();
      continue;
    }
    current.points.push_back(project_point(config, code, x, settings));
  }
  flush();
  return runs;
}

std::vector<Polyline> project_curve(const FractalConfig& config, const ShapeSpec& shape,
                                    std::span<const BranchCode> codes,
                                    const QuadratureSettings& settings) {
  const auto samples = sample_shape(shape);
  std::vector<Polyline> out;
  for (const BranchCode& code : codes) {
    auto runs = project_samples(config, code, samples, settings);
    out.insert(out.end(), std::make_move_iterator(runs.begin()),
               std::make_move_iterator(runs.end()));
  }
  return out;
}

std::vector<Polyline> project_curve(const FractalConfig& config, const ShapeSpec& shape,
                                    int generation, const QuadratureSettings& settings) {
  const auto codes = enumerate_codes(generation);
  return project_curve(config, shape, codes, settings);
}

std::vector<std::vector<SpaceCoordinate>> grid_lines(const GridWindow& window, double spacing,
                                                     double depth) {
  if (!(spacing > 0) || !std::isfinite(spacing))
    throw ValidationError("spacing", "must be finite and > 0");
  if (!(window.x1_min <= window.x1_max) || !(window.x2_min <= window.x2_max))
    throw ValidationError("window", "lower bounds must not exceed upper bounds");
  const double step = spacing / 16.0;
  const double slack = 1e-9 * spacing;
  std::vector<std::vector<SpaceCoordinate>> lines;

  for (std::size_t j = 0;; ++j) {
    const double c = window.x1_min + spacing * static_cast<double>(j);
    if (c > window.x1_max + slack) break;
    if (c > depth) continue;
    const double lo = window.x2_min;
    const double hi = std::min(window.x2_max, depth - c);
    if (!(hi > lo)) continue;
    std::vector<SpaceCoordinate> line;
    for (double x2 : even_samples(lo, hi, step)) line.push_back({c, x2});
    lines.push_back(std::move(line));
  }
  for (std::size_t j = 0;; ++j) {
    const double d = window.x2_min + spacing * static_cast<double>(j);
    if (d > window.x2_max + slack) break;
    const double lo = window.x1_min;
    const double hi = std::min(window.x1_max, depth - std::max(d, 0.0));
    if (!(hi > lo)) continue;
    std::vector<SpaceCoordinate> line;
    for (double x1 : even_samples(lo, hi, step)) line.push_back({x1, d});
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<Polyline> grid_polylines(const FractalConfig& config, const GridWindow& window,
                                     double spacing, std::span<const BranchCode> codes,
                                     const QuadratureSettings& settings) {
  std::vector<Polyline> out;
  for (const BranchCode& code : codes) {
    const double depth = config.realize(code).depth();
    for (const auto& line : grid_lines(window, spacing, depth)) {
      auto runs = project_samples(config, code, line, settings);
      out.insert(out.end(), std::make_move_iterator(runs.begin()),
                 std::make_move_iterator(runs.end()));
    }
  }
  return out;
}

std::vector<Polyline> grid_polylines(const FractalConfig& config, const GridWindow& window,
                                     double spacing, int generation,
                                     const QuadratureSettings& settings) {
  const auto codes = enumerate_codes(generation);
  return grid_polylines(config, window, spacing, codes, settings);
}

}  // namespace fracspace
