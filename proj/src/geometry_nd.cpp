#include "fracspace/geometry_nd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracspace/errors.hpp"
#include "fracspace/geometry2d.hpp"

namespace fracspace {

namespace {

std::vector<double> stack_events_in(const AngleProfileStack& stack, double a, double b) {
  std::vector<double> events = profile_events_in(stack.planar, a, b);
  for (const AngleRate& rate : stack.higher) {
    for (double s : rate.rate.breakpoints_in(a, b)) events.push_back(s);
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  return events;
}

// Direction from the planar angle and alpha_3 .. alpha_n, scaled by speed.
VectorN spherical_direction(double speed, double theta, std::span<const double> alphas) {
  VectorN v(2 + static_cast<Eigen::Index>(alphas.size()));
  v[0] = std::cos(theta);
  v[1] = std::sin(theta);
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const auto last = static_cast<Eigen::Index>(k + 2);
    const double s = std::sin(alphas[k]);
    for (Eigen::Index j = 0; j < last; ++j) v[j] *= s;
    v[last] = std::cos(alphas[k]);
  }
  return speed * v;
}

double higher_angle(const AngleRate& rate, const UnitFunctionRealization& realization, double s) {
  return rate.initial + signed_rate_integral(rate.rate, realization, s);
}

VectorN segment_nd(const AngleProfileStack& stack, const UnitFunctionRealization& realization,
                   double a, double b, const QuadratureSettings& settings) {
  const int sign = realization.sign_on(a, b);
  VectorN total = VectorN::Zero(stack.dimension());
  double lo = a;
  auto pieces = stack_events_in(stack, a, b);
  pieces.push_back(b);
  for (double hi : pieces) {
    const double theta_lo = accumulated_angle(stack.planar, realization, lo);
    std::vector<double> alpha_lo;
    double variation = std::abs(stack.planar.phi_dot.integral(lo, hi));
    for (const AngleRate& rate : stack.higher) {
      alpha_lo.push_back(higher_angle(rate, realization, lo));
      variation += std::abs(rate.rate.integral(lo, hi));
    }
    const auto speed_form = stack.planar.r_dot.exponential_form_on(lo, hi);
    variation += std::abs(std::log(speed_form.base) * (hi - lo));

    std::vector<double> alphas(alpha_lo.size());
    auto integrand = [&](double s) -> VectorN {
      const double theta = theta_lo + sign * stack.planar.phi_dot.integral(lo, s);
      for (std::size_t k = 0; k < alphas.size(); ++k)
        alphas[k] = alpha_lo[k] + sign * stack.higher[k].rate.integral(lo, s);
      return spherical_direction(stack.planar.r_dot(s), theta, alphas);
    };
    const int panels = static_cast<int>(
        std::clamp(std::ceil(variation / (std::numbers::pi / 8)), 1.0, 4096.0));
    total += adaptive_simpson(integrand, lo, hi, settings, panels);
    lo = hi;
  }
  return total;
}

VectorN from_complex(std::complex<double> z) {
  VectorN v(2);
  v << z.real(), z.imag();
  return v;
}

}  // namespace

AngleProfileStack angle_stack(const FractalConfig& config) {
  return {config.profile, config.alpha_dots};
}

RotationOperator::RotationOperator(int dimension, int leg) : dimension_(dimension), leg_(leg) {
  if (dimension < 2) throw PreconditionError("rotation dimension must be >= 2");
  if (leg < 2 || leg > dimension) throw PreconditionError("rotation leg must be in [2, n]");
}

VectorN RotationOperator::apply(const VectorN& v) const {
  if (v.size() != dimension_) throw PreconditionError("rotation applied to a vector of wrong size");
  VectorN out = v;
  const auto k = static_cast<Eigen::Index>(leg_ - 1);
  out[0] = -v[k];
  out[k] = v[0];
  return out;
}

Eigen::MatrixXd RotationOperator::matrix() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dimension_, dimension_);
  const auto k = static_cast<Eigen::Index>(leg_ - 1);
  m(0, 0) = 0.0;
  m(k, k) = 0.0;
  m(k, 0) = 1.0;
  m(0, k) = -1.0;
  return m;
}

Eigen::Vector3d velocity_3d(const AngleProfileStack& stack,
                            const UnitFunctionRealization& realization, double s) {
  if (stack.dimension() != 3) throw PreconditionError("velocity_3d needs a 3-D angle stack");
  const double phi = accumulated_angle(stack.planar, realization, s);
  const double vartheta = higher_angle(stack.higher[0], realization, s);
  const double speed = stack.planar.r_dot(s);
  return {speed * std::cos(phi) * std::sin(vartheta), speed * std::sin(phi) * std::sin(vartheta),
          speed * std::cos(vartheta)};
}

VectorN velocity_nd(const AngleProfileStack& stack, const UnitFunctionRealization& realization,
                    double s, int n) {
  if (n < 2) throw ValidationError("dimension", "must be >= 2");
  if (n > stack.dimension())
    throw PreconditionError("velocity_nd: stack has only " + std::to_string(stack.dimension()) +
                            " dimensions");
  const double theta = accumulated_angle(stack.planar, realization, s);
  std::vector<double> alphas;
  for (int k = 0; k < n - 2; ++k)
    alphas.push_back(higher_angle(stack.higher[static_cast<std::size_t>(k)], realization, s));
  return spherical_direction(stack.planar.r_dot(s), theta, alphas);
}

VectorN integrate_range_nd(const AngleProfileStack& stack,
                           const UnitFunctionRealization& realization, double a, double b,
                           const QuadratureSettings& settings) {
  if (stack.dimension() == 2)
    return from_complex(integrate_range(stack.planar, realization, a, b, settings));
  if (a > b) return -integrate_range_nd(stack, realization, b, a, settings);
  realization.require_within_depth(b);
  VectorN total = VectorN::Zero(stack.dimension());
  double lo = a;
  auto cuts = realization.branch_points_in(a, b);
  cuts.push_back(b);
  for (double hi : cuts) {
    if (hi > lo) total += segment_nd(stack, realization, lo, hi, settings);
    lo = hi;
  }
  return total;
}

VectorN path_point_nd(const FractalConfig& config, const BranchCode& code, double s,
                      const QuadratureSettings& settings) {
  return integrate_range_nd(angle_stack(config), config.realize(code), 0.0, s, settings);
}

std::vector<VectorN> sample_path_nd(const FractalConfig& config, const BranchCode& code,
                                    double s_begin, double s_end, double step,
                                    const QuadratureSettings& settings) {
  const auto realization = config.realize(code);
  realization.require_within_depth(s_end);
  const auto stack = angle_stack(config);
  auto params = sample_parameters(config, realization, s_begin, s_end, step);
  // Breakpoints of the higher angle rates must be sample points as well.
  for (double s : stack_events_in(stack, s_begin, s_end)) params.push_back(s);
  std::sort(params.begin() + 1, params.end());
  params.erase(std::unique(params.begin() + 1, params.end()), params.end());

  std::vector<VectorN> out;
  out.reserve(params.size());
  VectorN value = integrate_range_nd(stack, realization, 0.0, params.front(), settings);
  out.push_back(value);
  for (std::size_t i = 1; i < params.size(); ++i) {
    value += integrate_range_nd(stack, realization, params[i - 1], params[i], settings);
    out.push_back(value);
  }
  return out;
}

VectorN project_point_nd(const FractalConfig& config, const BranchCode& code,
                         std::span<const double> x, const QuadratureSettings& settings) {
  const int n = config.dimension;
  if (x.size() != static_cast<std::size_t>(n))
    throw ValidationError("coordinate", "expected " + std::to_string(n) + " components, got " +
                                            std::to_string(x.size()));
  if (n == 2) return from_complex(project_point(config, code, {x[0], x[1]}, settings));

  const auto realization = config.realize(code);
  std::vector<double> partial(x.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x[k])) throw OutOfRangeError("coordinate must be finite");
    sum += x[k];
    partial[k] = sum;
    realization.require_within_depth(sum);
  }
  const auto stack = angle_stack(config);
  VectorN f = integrate_range_nd(stack, realization, 0.0, partial[0], settings);
  for (int k = 2; k <= n; ++k) {
    const auto idx = static_cast<std::size_t>(k - 1);
    if (partial[idx] == partial[idx - 1]) continue;
    const VectorN leg = integrate_range_nd(stack, realization, partial[idx - 1], partial[idx],
                                           settings);
    f += RotationOperator(n, k).apply(leg);
  }
  return f;
}

}  // namespace fracspace
