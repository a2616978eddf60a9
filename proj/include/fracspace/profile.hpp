#pragma once

// Derivative coordinate functions, branch codes and the fractal configuration.

#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracspace {

inline constexpr int kMaxGenerations = 20;

/// A scalar function of the path parameter s, restricted to the kinds the
/// engine can integrate: a constant, scale * base^s, or piecewise constants.
class ScalarFunction {
 public:
  enum class Kind { constant, exponential, piecewise };

  struct Piece {
    double start;  // value holds on [start, next start)
    double value;
  };

  /// scale * base^s locally valid on an interval without breakpoints.
  struct ExponentialForm {
    double scale;
    double base;
  };

  ScalarFunction() = default;

  static ScalarFunction constant(double value);
  static ScalarFunction exponential(double base, double scale = 1.0);
  /// Pieces must have strictly increasing starts. For s before the first
  /// start the first value applies.
  static ScalarFunction piecewise(std::vector<Piece> pieces);

  Kind kind() const noexcept { return kind_; }
  double base() const noexcept { return base_; }
  double scale() const noexcept { return scale_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }

  double operator()(double s) const;

  /// Oriented integral over [a, b].
  double integral(double a, double b) const;

  /// Breakpoints strictly inside (a, b), ascending.
  std::vector<double> breakpoints_in(double a, double b) const;

  /// Exponential form on [a, b]; assumes no breakpoint lies inside.
  ExponentialForm exponential_form_on(double a, double b) const;

  /// True when the function is > 0 for every s.
  bool strictly_positive() const;

 private:
  Kind kind_ = Kind::constant;
  double scale_ = 0.0;  // constant value, or exponential prefactor
  double base_ = 1.0;
  std::vector<Piece> pieces_;
};

/// Discrete tangent-angle jump of `angle` radians at path parameter `s`.
/// The jump is signed by the branch code like the angular frequency is.
struct Turn {
  double s;
  double angle;
};

struct VelocityProfile {
  ScalarFunction r_dot = ScalarFunction::constant(1.0);
  ScalarFunction phi_dot = ScalarFunction::constant(0.0);
  std::vector<Turn> turns;
  double theta0 = 0.0;
};

/// Angular-rate spec of one extra spherical angle (alpha_3 .. alpha_n).
/// The default initial angle pi/2 embeds the lower-dimensional tree.
struct AngleRate {
  ScalarFunction rate = ScalarFunction::constant(0.0);
  double initial = std::numbers::pi / 2;
};

/// One single-valued instance of the multivalued unit function: a word
/// over {-1, +1}; entry k is the sign on the k-th branch period.
class BranchCode {
 public:
  BranchCode() = default;
  BranchCode(std::initializer_list<int> signs);
  explicit BranchCode(std::vector<std::int8_t> signs);

  /// Parses "-+-" style text; the empty string is the root code.
  static BranchCode parse(std::string_view text);

  std::size_t size() const noexcept { return signs_.size(); }
  bool empty() const noexcept { return signs_.empty(); }
  int operator[](std::size_t k) const { return signs_[k]; }
  std::span<const std::int8_t> signs() const noexcept { return signs_; }

  BranchCode prefix(std::size_t length) const;
  BranchCode mirrored() const;
  BranchCode extended(int sign) const;

  std::string to_string() const;

  auto operator<=>(const BranchCode&) const = default;

 private:
  std::vector<std::int8_t> signs_;
};

/// The unit function u(s) for one branch code: code[k] on (kT, (k+1)T),
/// zero at branch points and on the stem s < 0.
class UnitFunctionRealization {
 public:
  UnitFunctionRealization(BranchCode code, double branch_period = 1.0);

  const BranchCode& code() const noexcept { return code_; }
  double branch_period() const noexcept { return period_; }
  double depth() const noexcept { return static_cast<double>(code_.size()) * period_; }

  /// u(s). Throws OutOfRangeError past the depth.
  int sign_at(double s) const;

  /// Sign governing the open interval that contains (a, b); the interval
  /// must not contain a branch point.
  int sign_on(double a, double b) const;

  /// Throws OutOfRangeError when s exceeds the code depth.
  void require_within_depth(double s) const;

  /// Branch points kT (k >= 0) strictly inside (a, b).
  std::vector<double> branch_points_in(double a, double b) const;

 private:
  BranchCode code_;
  double period_;
};

/// Axis-aligned bounds in coordinate space applied to codes whose sign at
/// index `generation - 1` matches `child`, for points that reach past that
/// branch point.
struct RangeRestriction {
  enum class Child { plus, minus, both };

  int generation = 1;
  Child child = Child::both;
  std::optional<double> x1_min, x1_max, x2_min, x2_max;
};

struct FractalConfig {
  VelocityProfile profile;
  double branch_period = 1.0;
  int generations = 0;
  std::vector<RangeRestriction> range_restrictions;
  int dimension = 2;
  std::vector<AngleRate> alpha_dots;  // size dimension - 2

  UnitFunctionRealization realize(const BranchCode& code) const {
    return UnitFunctionRealization(code, branch_period);
  }
};

/// Checks every invariant of the configuration; throws ValidationError
/// naming the offending field (relative to `prefix`).
void validate(const FractalConfig& config, const std::string& prefix = "");

/// Integral of u(s') * rate(s') over [0, s]; 0 for s <= 0.
double signed_rate_integral(const ScalarFunction& rate, const UnitFunctionRealization& realization,
                            double s);

/// theta(s) = theta0 + integral of u * phi_dot + the signed turns with s_k <= s.
double accumulated_angle(const VelocityProfile& profile, const UnitFunctionRealization& realization,
                         double s);

/// r_dot(s) * exp(i theta(s)).
std::complex<double> velocity(const VelocityProfile& profile,
                              const UnitFunctionRealization& realization, double s);

/// Sign applied to a turn event; throws PreconditionError for a turn placed
/// on a branch point.
int turn_sign(const UnitFunctionRealization& realization, double turn_s);

/// Canonical (degenerate) profile: r_dot = 1, phi_dot = 0, no turns. Keeps theta0.
VelocityProfile canonical_profile(const VelocityProfile& profile);

}  // namespace fracspace
