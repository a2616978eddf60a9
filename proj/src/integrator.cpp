#include "fracspace/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracspace/errors.hpp"

namespace fracspace {

namespace {

constexpr double kDegenerateRate = 1e-12;

// e^z - 1 without cancellation for small |z|.
std::complex<double> expm1(std::complex<double> z) {
  const double x = z.real();
  const double y = z.imag();
  const double half_sin = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin, std::exp(x) * std::sin(y)};
}

// Panels that keep the angle change per panel at or below pi/8, so the
// initial Simpson estimate cannot alias an oscillating integrand.
int panel_count(double angle_change, double log_speed_change) {
  const double variation = std::abs(angle_change) + std::abs(log_speed_change);
  const double panels = std::ceil(variation / (std::numbers::pi / 8));
  return static_cast<int>(std::clamp(panels, 1.0, 4096.0));
}

struct SmoothPiece {
  double lo;
  double hi;
};

std::vector<SmoothPiece> smooth_pieces(const VelocityProfile& profile, double a, double b) {
  std::vector<SmoothPiece> pieces;
  double lo = a;
  for (double cut : profile_events_in(profile, a, b)) {
    pieces.push_back({lo, cut});
    lo = cut;
  }
  pieces.push_back({lo, b});
  return pieces;
}

std::complex<double> closed_form_piece(const ScalarFunction::ExponentialForm& speed, double phi,
                                       int sign, double theta_lo, double lo, double hi) {
  const double h = hi - lo;
  const std::complex<double> rate(std::log(speed.base), phi * sign);
  const std::complex<double> prefactor = speed.scale * std::pow(speed.base, lo) *
                                         std::polar(1.0, theta_lo);
  if (std::abs(rate) < kDegenerateRate) return prefactor * h;
  return prefactor * expm1(rate * h) / rate;
}

}  // namespace

std::vector<double> profile_events_in(const VelocityProfile& profile, double a, double b) {
  std::vector<double> events;
  for (const Turn& t : profile.turns) {
    if (t.s > a && t.s < b) events.push_back(t.s);
  }
  for (double s : profile.r_dot.breakpoints_in(a, b)) events.push_back(s);
  for (double s : profile.phi_dot.breakpoints_in(a, b)) events.push_back(s);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  return events;
}

std::complex<double> integrate_segment(const VelocityProfile& profile,
                                       const UnitFunctionRealization& realization, double a,
                                       double b, const QuadratureSettings& settings,
                                       SegmentMethod method) {
  if (!(a <= b)) throw PreconditionError("integrate_segment requires a <= b");
  realization.require_within_depth(b);
  if (a == b) return {0.0, 0.0};
  if (!realization.branch_points_in(a, b).empty())
    throw PreconditionError("integrate_segment: branch point inside (" + std::to_string(a) +
                            ", " + std::to_string(b) + "); split the range first");

  const int sign = realization.sign_on(a, b);
  std::complex<double> total{0.0, 0.0};
  for (const SmoothPiece& piece : smooth_pieces(profile, a, b)) {
    const double lo = piece.lo;
    const double hi = piece.hi;
    const double theta_lo = accumulated_angle(profile, realization, lo);
    const auto speed = profile.r_dot.exponential_form_on(lo, hi);
    const auto turning = profile.phi_dot.exponential_form_on(lo, hi);
    const bool closed = turning.base == 1.0;

    if (method == SegmentMethod::closed_form && !closed)
      throw PreconditionError("closed form requires a constant phi_dot on the segment");

    if (method != SegmentMethod::quadrature && closed) {
      total += closed_form_piece(speed, turning.scale, sign, theta_lo, lo, hi);
      continue;
    }

    auto integrand = [&](double s) {
      const double theta = theta_lo + sign * profile.phi_dot.integral(lo, s);
      return profile.r_dot(s) * std::polar(1.0, theta);
    };
    const int panels = panel_count(profile.phi_dot.integral(lo, hi),
                                   std::log(speed.base) * (hi - lo));
    total += adaptive_simpson(integrand, lo, hi, settings, panels);
  }
  return total;
}

std::complex<double> integrate_range(const VelocityProfile& profile,
                                     const UnitFunctionRealization& realization, double a,
                                     double b, const QuadratureSettings& settings,
                                     SegmentMethod method) {
  if (a > b) return -integrate_range(profile, realization, b, a, settings, method);
  realization.require_within_depth(b);
  std::complex<double> total{0.0, 0.0};
  double lo = a;
  for (double point : realization.branch_points_in(a, b)) {
    total += integrate_segment(profile, realization, lo, point, settings, method);
    lo = point;
  }
  total += integrate_segment(profile, realization, lo, b, settings, method);
  return total;
}

PathPoint path_point(const FractalConfig& config, const BranchCode& code, double s,
                     const QuadratureSettings& settings) {
  const auto realization = config.realize(code);
  return {code, s, integrate_range(config.profile, realization, 0.0, s, settings)};
}

std::vector<BranchCode> enumerate_codes(int generation) {
  if (generation < 0) throw PreconditionError("generation must be >= 0");
  if (generation > kMaxGenerations)
    throw LimitError("generation " + std::to_string(generation) + " exceeds the limit of " +
                     std::to_string(kMaxGenerations));
  const std::size_t count = std::size_t{1} << generation;
  std::vector<BranchCode> codes;
  codes.reserve(count);
  for (std::size_t index = 0; index < count; ++index) {
    std::vector<std::int8_t> signs(static_cast<std::size_t>(generation));
    for (int k = 0; k < generation; ++k) {
      const bool plus = (index >> (generation - 1 - k)) & 1U;
      signs[static_cast<std::size_t>(k)] = plus ? 1 : -1;
    }
    codes.emplace_back(std::move(signs));
  }
  return codes;
}

std::vector<double> sample_parameters(const FractalConfig& config,
                                      const UnitFunctionRealization& realization, double s_begin,
                                      double s_end, double step) {
  if (!(step > 0) || !std::isfinite(step)) throw PreconditionError("sample step must be > 0");
  if (!(s_begin <= s_end)) throw PreconditionError("sample range must satisfy begin <= end");

  struct Candidate {
    double s;
    bool event;
  };
  std::vector<Candidate> candidates;
  const double span = s_end - s_begin;
  const auto steps = static_cast<std::size_t>(std::floor(span / step + 1e-9));
  for (std::size_t j = 0; j <= steps; ++j) candidates.push_back({s_begin + step * j, false});
  candidates.push_back({s_end, true});
  for (double s : realization.branch_points_in(s_begin, s_end)) candidates.push_back({s, true});
  for (double s : profile_events_in(config.profile, s_begin, s_end)) candidates.push_back({s, true});
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& l, const Candidate& r) { return l.s < r.s; });

  const double merge = 1e-9 * step;
  std::vector<Candidate> merged;
  for (const Candidate& c : candidates) {
    if (c.s > s_end) continue;
    if (!merged.empty() && c.s - merged.back().s <= merge) {
      // Keep event locations exact; s_begin always stays.
      if (c.event && !(merged.size() == 1 && merged.back().s == s_begin)) merged.back() = c;
      continue;
    }
    merged.push_back(c);
  }
  std::vector<double> out;
  out.reserve(merged.size());
  for (const Candidate& c : merged) out.push_back(c.s);
  if (out.size() == 1) out.push_back(out.front());
  return out;
}

Polyline sample_path(const FractalConfig& config, const BranchCode& code, double s_begin,
                     double s_end, double step, const QuadratureSettings& settings) {
  const auto realization = config.realize(code);
  realization.require_within_depth(s_end);
  const auto params = sample_parameters(config, realization, s_begin, s_end, step);
  Polyline line;
  line.code = code;
  line.points.reserve(params.size());
  std::complex<double> value = integrate_range(config.profile, realization, 0.0, params.front(),
                                               settings);
  line.points.push_back(value);
  for (std::size_t i = 1; i < params.size(); ++i) {
    value += integrate_range(config.profile, realization, params[i - 1], params[i], settings);
    line.points.push_back(value);
  }
  return line;
}

double arc_length(const VelocityProfile& profile, const UnitFunctionRealization& realization,
                  double a, double b, const QuadratureSettings& settings) {
  if (a > b) std::swap(a, b);
  realization.require_within_depth(b);
  std::vector<double> cuts = realization.branch_points_in(a, b);
  for (double s : profile_events_in(profile, a, b)) cuts.push_back(s);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(b);
  double total = 0.0;
  double lo = a;
  for (double hi : cuts) {
    if (hi > lo) {
      auto speed = [&](double s) { return std::abs(velocity(profile, realization, s)); };
      total += adaptive_simpson(speed, lo, hi, settings);
    }
    lo = hi;
  }
  return total;
}

}  // namespace fracspace
