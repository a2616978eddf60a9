#include "fracspace/profile.hpp"

#include <algorithm>
#include <cmath>

#include "fracspace/errors.hpp"

namespace fracspace {

namespace {

double depth_slack(double depth) { return 1e-12 * std::max(1.0, depth); }

bool on_grid(double s, double period) {
  const double k = std::round(s / period);
  return std::abs(s - k * period) <= 1e-12 * std::max(1.0, std::abs(s));
}

void require_finite(double value, const std::string& field) {
  if (!std::isfinite(value)) throw ValidationError(field, "must be a finite number");
}

void validate_function(const ScalarFunction& fn, const std::string& field, bool positive) {
  switch (fn.kind()) {
    case ScalarFunction::Kind::constant:
      require_finite(fn.scale(), field + ".value");
      if (positive && fn.scale() <= 0) throw ValidationError(field + ".value", "must be > 0");
      break;
    case ScalarFunction::Kind::exponential:
      require_finite(fn.base(), field + ".base");
      require_finite(fn.scale(), field + ".scale");
      if (fn.base() <= 0) throw ValidationError(field + ".base", "must be > 0");
      if (positive && fn.scale() <= 0) throw ValidationError(field + ".scale", "must be > 0");
      break;
    case ScalarFunction::Kind::piecewise: {
      const auto& pieces = fn.pieces();
      if (pieces.empty()) throw ValidationError(field + ".pieces", "must not be empty");
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        const std::string at = field + ".pieces[" + std::to_string(i) + "]";
        require_finite(pieces[i].start, at + ".start");
        require_finite(pieces[i].value, at + ".value");
        if (i > 0 && pieces[i].start <= pieces[i - 1].start)
          throw ValidationError(at + ".start", "starts must be strictly increasing");
        if (positive && pieces[i].value <= 0) throw ValidationError(at + ".value", "must be > 0");
      }
      break;
    }
  }
}

}  // namespace

// ScalarFunction

ScalarFunction ScalarFunction::constant(double value) {
  ScalarFunction fn;
  fn.kind_ = Kind::constant;
  fn.scale_ = value;
  return fn;
}

ScalarFunction ScalarFunction::exponential(double base, double scale) {
  ScalarFunction fn;
  fn.kind_ = Kind::exponential;
  fn.base_ = base;
  fn.scale_ = scale;
  return fn;
}

ScalarFunction ScalarFunction::piecewise(std::vector<Piece> pieces) {
  if (pieces.empty()) throw ValidationError("pieces", "must not be empty");
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (!(pieces[i].start > pieces[i - 1].start))
      throw ValidationError("pieces[" + std::to_string(i) + "].start",
                            "starts must be strictly increasing");
  }
  ScalarFunction fn;
  fn.kind_ = Kind::piecewise;
  fn.pieces_ = std::move(pieces);
  return fn;
}

double ScalarFunction::operator()(double s) const {
  switch (kind_) {
    case Kind::constant:
      return scale_;
    case Kind::exponential:
      return scale_ * std::pow(base_, s);
    case Kind::piecewise: {
      auto it = std::upper_bound(pieces_.begin(), pieces_.end(), s,
                                 [](double v, const Piece& p) { return v < p.start; });
      if (it == pieces_.begin()) return pieces_.front().value;
      return std::prev(it)->value;
    }
  }
  return 0.0;
}

double ScalarFunction::integral(double a, double b) const {
  if (a == b) return 0.0;
  if (a > b) return -integral(b, a);
  switch (kind_) {
    case Kind::constant:
      return scale_ * (b - a);
    case Kind::exponential: {
      const double log_base = std::log(base_);
      if (log_base == 0.0) return scale_ * (b - a);
      return scale_ * std::pow(base_, a) * std::expm1(log_base * (b - a)) / log_base;
    }
    case Kind::piecewise: {
      double total = 0.0;
      for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const double lo = i == 0 ? a : std::max(a, pieces_[i].start);
        const double hi = i + 1 < pieces_.size() ? std::min(b, pieces_[i + 1].start) : b;
        if (hi > lo) total += pieces_[i].value * (hi - lo);
      }
      return total;
    }
  }
  return 0.0;
}

std::vector<double> ScalarFunction::breakpoints_in(double a, double b) const {
  std::vector<double> out;
  if (kind_ != Kind::piecewise) return out;
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i].start > a && pieces_[i].start < b) out.push_back(pieces_[i].start);
  }
  return out;
}

ScalarFunction::ExponentialForm ScalarFunction::exponential_form_on(double a, double b) const {
  switch (kind_) {
    case Kind::constant:
      return {scale_, 1.0};
    case Kind::exponential:
      return {scale_, base_};
    case Kind::piecewise:
      return {(*this)(0.5 * (a + b)), 1.0};
  }
  return {0.0, 1.0};
}

bool ScalarFunction::strictly_positive() const {
  switch (kind_) {
    case Kind::constant:
      return scale_ > 0;
    case Kind::exponential:
      return scale_ > 0 && base_ > 0;
    case Kind::piecewise:
      return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.value > 0; });
  }
  return false;
}

// BranchCode

BranchCode::BranchCode(std::initializer_list<int> signs) {
  signs_.reserve(signs.size());
  for (int s : signs) {
    if (s != 1 && s != -1) throw ValidationError("code", "signs must be -1 or +1");
    signs_.push_back(static_cast<std::int8_t>(s));
  }
}

BranchCode::BranchCode(std::vector<std::int8_t> signs) : signs_(std::move(signs)) {
  for (auto s : signs_) {
    if (s != 1 && s != -1) throw ValidationError("code", "signs must be -1 or +1");
  }
}

BranchCode BranchCode::parse(std::string_view text) {
  std::vector<std::int8_t> signs;
  signs.reserve(text.size());
  for (char c : text) {
    if (c == '+')
      signs.push_back(1);
    else if (c == '-')
      signs.push_back(-1);
    else
      throw ValidationError("code", "expected only '+' and '-' characters, got '" +
                                        std::string(text) + "'");
  }
  return BranchCode(std::move(signs));
}

BranchCode BranchCode::prefix(std::size_t length) const {
  length = std::min(length, signs_.size());
  return BranchCode(std::vector<std::int8_t>(signs_.begin(), signs_.begin() + length));
}

BranchCode BranchCode::mirrored() const {
  std::vector<std::int8_t> flipped(signs_);
  for (auto& s : flipped) s = static_cast<std::int8_t>(-s);
  return BranchCode(std::move(flipped));
}

BranchCode BranchCode::extended(int sign) const {
  std::vector<std::int8_t> longer(signs_);
  longer.push_back(static_cast<std::int8_t>(sign));
  return BranchCode(std::move(longer));
}

std::string BranchCode::to_string() const {
  std::string out;
  out.reserve(signs_.size());
  for (auto s : signs_) out.push_back(s > 0 ? '+' : '-');
  return out;
}

// UnitFunctionRealization

UnitFunctionRealization::UnitFunctionRealization(BranchCode code, double branch_period)
    : code_(std::move(code)), period_(branch_period) {
  if (!(branch_period > 0) || !std::isfinite(branch_period))
    throw ValidationError("branch_period", "must be > 0");
}

void UnitFunctionRealization::require_within_depth(double s) const {
  const double d = depth();
  if (!std::isfinite(s) || s > d + depth_slack(d)) {
    throw OutOfRangeError("path parameter s = " + std::to_string(s) + " exceeds the depth " +
                          std::to_string(d) + " of branch code '" + code_.to_string() + "'");
  }
}

int UnitFunctionRealization::sign_at(double s) const {
  require_within_depth(s);
  if (s <= 0) return 0;
  if (on_grid(s, period_)) return 0;
  if (code_.empty()) return 0;
  auto k = static_cast<std::size_t>(std::floor(s / period_));
  k = std::min(k, code_.size() - 1);
  return code_[k];
}

int UnitFunctionRealization::sign_on(double a, double b) const {
  const double mid = 0.5 * (a + b);
  if (mid < 0 || code_.empty()) return 0;
  auto k = static_cast<std::size_t>(std::floor(mid / period_));
  k = std::min(k, code_.size() - 1);
  return code_[k];
}

std::vector<double> UnitFunctionRealization::branch_points_in(double a, double b) const {
  std::vector<double> out;
  if (!(b > a)) return out;
  const auto first = static_cast<long long>(std::max(0.0, std::floor(a / period_)));
  for (long long k = first;; ++k) {
    const double point = static_cast<double>(k) * period_;
    if (point >= b) break;
    if (point > a) out.push_back(point);
  }
  return out;
}

int turn_sign(const UnitFunctionRealization& realization, double turn_s) {
  const double period = realization.branch_period();
  if (turn_s <= 0 || on_grid(turn_s, period))
    throw PreconditionError("turn at s = " + std::to_string(turn_s) +
                            " coincides with a branch point or the root");
  const auto& code = realization.code();
  if (code.empty()) return 0;
  auto k = static_cast<std::size_t>(std::floor(turn_s / period));
  return code[std::min(k, code.size() - 1)];
}

// Angle accumulation

double signed_rate_integral(const ScalarFunction& rate, const UnitFunctionRealization& realization,
                            double s) {
  realization.require_within_depth(s);
  if (s <= 0) return 0.0;
  const auto& code = realization.code();
  const double period = realization.branch_period();
  double total = 0.0;
  for (std::size_t k = 0; k < code.size(); ++k) {
    const double lo = static_cast<double>(k) * period;
    if (lo >= s) break;
    const double hi = std::min(static_cast<double>(k + 1) * period, s);
    total += code[k] * rate.integral(lo, hi);
  }
  return total;
}

double accumulated_angle(const VelocityProfile& profile, const UnitFunctionRealization& realization,
                         double s) {
  double theta = profile.theta0 + signed_rate_integral(profile.phi_dot, realization, s);
  for (const Turn& turn : profile.turns) {
    if (turn.s > s) break;
    theta += turn_sign(realization, turn.s) * turn.angle;
  }
  return theta;
}

std::complex<double> velocity(const VelocityProfile& profile,
                              const UnitFunctionRealization& realization, double s) {
  const double theta = accumulated_angle(profile, realization, s);
  return profile.r_dot(s) * std::polar(1.0, theta);
}

VelocityProfile canonical_profile(const VelocityProfile& profile) {
  VelocityProfile out;
  out.theta0 = profile.theta0;
  return out;
}

// Validation

void validate(const FractalConfig& config, const std::string& prefix) {
  const auto& p = config.profile;
  require_finite(config.branch_period, prefix + "branch_period");
  if (config.branch_period <= 0) throw ValidationError(prefix + "branch_period", "must be > 0");
  if (config.generations < 0 || config.generations > kMaxGenerations)
    throw ValidationError(prefix + "generations",
                          "must be between 0 and " + std::to_string(kMaxGenerations));
  validate_function(p.r_dot, prefix + "r_dot", true);
  validate_function(p.phi_dot, prefix + "phi_dot", false);
  require_finite(p.theta0, prefix + "theta0");
  for (std::size_t i = 0; i < p.turns.size(); ++i) {
    const std::string at = prefix + "turns[" + std::to_string(i) + "]";
    require_finite(p.turns[i].s, at + ".s");
    require_finite(p.turns[i].angle, at + ".angle");
    if (p.turns[i].s <= 0) throw ValidationError(at + ".s", "must be > 0");
    if (i > 0 && p.turns[i].s <= p.turns[i - 1].s)
      throw ValidationError(at + ".s", "turn events must be strictly increasing in s");
    if (on_grid(p.turns[i].s, config.branch_period))
      throw ValidationError(at + ".s", "must not coincide with a branch point");
  }
  if (config.dimension < 2 || config.dimension > 32)
    throw ValidationError(prefix + "dimension", "must be between 2 and 32");
  if (config.alpha_dots.size() != static_cast<std::size_t>(config.dimension - 2))
    throw ValidationError(prefix + "alpha_dots",
                          "expected " + std::to_string(config.dimension - 2) +
                              " entries (dimension - 2)");
  for (std::size_t i = 0; i < config.alpha_dots.size(); ++i) {
    const std::string at = prefix + "alpha_dots[" + std::to_string(i) + "]";
    validate_function(config.alpha_dots[i].rate, at + ".rate", false);
    require_finite(config.alpha_dots[i].initial, at + ".initial");
  }
  for (std::size_t i = 0; i < config.range_restrictions.size(); ++i) {
    const auto& r = config.range_restrictions[i];
    const std::string at = prefix + "range_restrictions[" + std::to_string(i) + "]";
    if (r.generation < 1 || r.generation > kMaxGenerations)
      throw ValidationError(at + ".generation",
                            "must be between 1 and " + std::to_string(kMaxGenerations));
    auto check_pair = [&](const std::optional<double>& lo, const std::optional<double>& hi,
                          const std::string& axis) {
      if (lo) require_finite(*lo, at + "." + axis + "_min");
      if (hi) require_finite(*hi, at + "." + axis + "_max");
      if (lo && hi && !(*lo < *hi))
        throw ValidationError(at + "." + axis + "_min", "lower bound must be < upper bound");
    };
    check_pair(r.x1_min, r.x1_max, "x1");
    check_pair(r.x2_min, r.x2_max, "x2");
  }
}

}  // namespace fracspace
