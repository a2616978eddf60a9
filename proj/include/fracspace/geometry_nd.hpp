#pragma once

// Paths and the fractal geometric space in R^n. Directions follow the
// spherical recurrence p_n = (p_{n-1} sin(alpha_n), cos(alpha_n)) with the
// planar base (cos theta, sin theta); in R^3, alpha_3 is the polar angle.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fracspace/integrator.hpp"
#include "fracspace/profile.hpp"

namespace fracspace {

using VectorN = Eigen::VectorXd;

/// Angle rates alpha_2 .. alpha_n. alpha_2 is the planar angle of `planar`
/// (its phi_dot, turns and theta0); `higher` holds alpha_3 .. alpha_n.
struct AngleProfileStack {
  VelocityProfile planar;
  std::vector<AngleRate> higher;

  int dimension() const noexcept { return 2 + static_cast<int>(higher.size()); }
};

AngleProfileStack angle_stack(const FractalConfig& config);

/// The pi/2 rotation in the (axis 1, axis k) plane of R^n, 2 <= k <= n:
/// e_1 -> e_k, e_k -> -e_1. At n = 2 this is multiplication by i.
class RotationOperator {
 public:
  RotationOperator(int dimension, int leg);

  int dimension() const noexcept { return dimension_; }
  int leg() const noexcept { return leg_; }

  VectorN apply(const VectorN& v) const;
  Eigen::MatrixXd matrix() const;

 private:
  int dimension_;
  int leg_;
};

/// Spherical-direction velocity r_dot (cos phi sin vartheta, sin phi sin vartheta,
/// cos vartheta). Requires a stack of dimension 3.
Eigen::Vector3d velocity_3d(const AngleProfileStack& stack,
                            const UnitFunctionRealization& realization, double s);

/// Velocity in R^n via the recurrence, using alpha_3 .. alpha_n of the stack.
/// Requires 2 <= n <= stack.dimension().
VectorN velocity_nd(const AngleProfileStack& stack, const UnitFunctionRealization& realization,
                    double s, int n);

/// Oriented vector integral of velocity_nd over [a, b] at the stack's dimension.
VectorN integrate_range_nd(const AngleProfileStack& stack,
                           const UnitFunctionRealization& realization, double a, double b,
                           const QuadratureSettings& settings = {});

VectorN path_point_nd(const FractalConfig& config, const BranchCode& code, double s,
                      const QuadratureSettings& settings = {});

/// Samples of the n-D path at the same parameters sample_path uses.
std::vector<VectorN> sample_path_nd(const FractalConfig& config, const BranchCode& code,
                                    double s_begin, double s_end, double step,
                                    const QuadratureSettings& settings = {});

/// f(x) = integral over [0, S_1] + sum_k Q_k * integral over [S_{k-1}, S_k],
/// S_k the partial sums of x. Every S_k must lie within the code depth.
VectorN project_point_nd(const FractalConfig& config, const BranchCode& code,
                         std::span<const double> x, const QuadratureSettings& settings = {});

}  // namespace fracspace
