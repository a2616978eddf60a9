#pragma once

// Path integration p(s) = integral of r_dot(s) exp(i theta(s)) ds per branch code.

#include <complex>
#include <vector>

#include "fracspace/polyline.hpp"
#include "fracspace/profile.hpp"
#include "fracspace/quadrature.hpp"

namespace fracspace {

enum class SegmentMethod {
  automatic,    // closed form where the profile allows it, quadrature otherwise
  quadrature,   // always adaptive Simpson
  closed_form,  // closed form or PreconditionError
};

struct PathPoint {
  BranchCode code;
  double s;
  std::complex<double> value;
};

/// Integral of the velocity over [a, b]. [a, b] must not contain a branch
/// point in its interior; turn events and profile breakpoints are split
/// internally.
///
/// With r_dot = A R^s and a constant phi_dot = Phi on a piece, the closed form
///   A e^{i theta_a - i Phi u a} (R^b e^{i Phi u b} - R^a e^{i Phi u a}) / (ln R + i Phi u)
/// is used, falling back to A e^{i theta_a} R^a (b - a) when |ln R + i Phi u| < 1e-12.
std::complex<double> integrate_segment(const VelocityProfile& profile,
                                       const UnitFunctionRealization& realization, double a,
                                       double b, const QuadratureSettings& settings = {},
                                       SegmentMethod method = SegmentMethod::automatic);

/// Oriented integral over [a, b] (or minus the integral over [b, a]),
/// split at every branch point.
std::complex<double> integrate_range(const VelocityProfile& profile,
                                     const UnitFunctionRealization& realization, double a,
                                     double b, const QuadratureSettings& settings = {},
                                     SegmentMethod method = SegmentMethod::automatic);

/// p(s) under `code`; p(0) is the origin. Negative s follows the straight stem.
PathPoint path_point(const FractalConfig& config, const BranchCode& code, double s,
                     const QuadratureSettings& settings = {});

/// All 2^generation codes of length `generation`, lexicographic with -1 < +1.
std::vector<BranchCode> enumerate_codes(int generation);

/// Samples at s_begin, s_begin + step, ..., s_end plus every branch point,
/// turn event and profile breakpoint in range. Values are accumulated one
/// segment integral per step.
Polyline sample_path(const FractalConfig& config, const BranchCode& code, double s_begin,
                     double s_end, double step, const QuadratureSettings& settings = {});

/// Sample locations used by sample_path (exposed for the n-D sampler).
std::vector<double> sample_parameters(const FractalConfig& config,
                                      const UnitFunctionRealization& realization, double s_begin,
                                      double s_end, double step);

/// Arc length of the path over [a, b], integrating |velocity| numerically.
double arc_length(const VelocityProfile& profile, const UnitFunctionRealization& realization,
                  double a, double b, const QuadratureSettings& settings = {});

/// Turn events and profile breakpoints strictly inside (a, b), ascending.
std::vector<double> profile_events_in(const VelocityProfile& profile, double a, double b);

}  // namespace fracspace
