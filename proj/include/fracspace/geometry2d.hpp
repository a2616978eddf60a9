#pragma once

// The fractal geometric space in the plane: a coordinate (x1, x2) maps to the
// point reached by travelling x1 along a branch and then x2 along the same
// path rotated by pi/2.

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "fracspace/integrator.hpp"
#include "fracspace/polyline.hpp"
#include "fracspace/profile.hpp"

namespace fracspace {

struct SpaceCoordinate {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct PointSetEntry {
  BranchCode code;
  std::complex<double> value;
};

struct PointSet {
  std::vector<PointSetEntry> entries;
};

enum class Dedupe { off, on };

struct EllipseShape {
  SpaceCoordinate center;
  double semi_axis_1 = 1.0;  // along x1
  double semi_axis_2 = 0.5;  // along x2
  int samples = 64;
};

struct CircleShape {
  SpaceCoordinate center;
  double radius = 1.0;
  int samples = 64;
};

struct SegmentShape {
  SpaceCoordinate from;
  SpaceCoordinate to;
  int samples = 2;
};

struct PointListShape {
  std::vector<SpaceCoordinate> points;
  bool closed = false;
};

using ShapeSpec = std::variant<EllipseShape, CircleShape, SegmentShape, PointListShape>;

/// Axis-aligned window of the coordinate space.
struct GridWindow {
  double x1_min = 0.0;
  double x1_max = 1.0;
  double x2_min = 0.0;
  double x2_max = 1.0;
};

/// Throws OutOfRangeError unless x1 and x1 + x2 are within the code depth.
void require_in_domain(const UnitFunctionRealization& realization, SpaceCoordinate x);

/// f(x) = p(x1) + i * (integral of the velocity from x1 to x1 + x2).
std::complex<double> project_point(const FractalConfig& config, const BranchCode& code,
                                   SpaceCoordinate x, const QuadratureSettings& settings = {});

/// One entry per generation-g code whose coordinate survives the range
/// restrictions. Requires x within depth g * T.
PointSet project_point_multivalued(const FractalConfig& config, SpaceCoordinate x, int generation,
                                   const QuadratureSettings& settings = {},
                                   Dedupe dedupe = Dedupe::off);

/// Keep/discard predicate; true when no active restriction rejects x.
bool apply_range_restriction(std::span<const RangeRestriction> restrictions,
                             const BranchCode& code, SpaceCoordinate x, double branch_period);

/// Coordinate samples of a shape; closed shapes repeat their first sample.
std::vector<SpaceCoordinate> sample_shape(const ShapeSpec& shape);

/// Throws ValidationError naming the field under `prefix`.
void validate(const ShapeSpec& shape, const std::string& prefix = "");

/// Image polyline(s) of the shape under each code. Samples removed by a
/// range restriction split the image into separate runs.
std::vector<Polyline> project_curve(const FractalConfig& config, const ShapeSpec& shape,
                                    std::span<const BranchCode> codes,
                                    const QuadratureSettings& settings = {});

std::vector<Polyline> project_curve(const FractalConfig& config, const ShapeSpec& shape,
                                    int generation, const QuadratureSettings& settings = {});

/// Projects arbitrary coordinate samples along one code, splitting at
/// restricted samples. Runs shorter than two points are dropped.
std::vector<Polyline> project_samples(const FractalConfig& config, const BranchCode& code,
                                      std::span<const SpaceCoordinate> samples,
                                      const QuadratureSettings& settings = {});

/// Iso-x1 and iso-x2 lines at multiples of `spacing` from the window's lower
/// corner, sampled at most spacing/16 apart and clipped to the code depth.
std::vector<Polyline> grid_polylines(const FractalConfig& config, const GridWindow& window,
                                     double spacing, std::span<const BranchCode> codes,
                                     const QuadratureSettings& settings = {});

std::vector<Polyline> grid_polylines(const FractalConfig& config, const GridWindow& window,
                                     double spacing, int generation,
                                     const QuadratureSettings& settings = {});

/// Coordinate samples of each grid line for one code depth (shared by the
/// 2-D and n-D grid builders).
std::vector<std::vector<SpaceCoordinate>> grid_lines(const GridWindow& window, double spacing,
                                                     double depth);

}  // namespace fracspace
