#pragma once

#include <complex>
#include <string>
#include <vector>

#include "fracspace/profile.hpp"

namespace fracspace {

/// Ordered sampled curve in the plane, tagged with the branch code that
/// produced it. `style` is the layer class used by the renderer.
struct Polyline {
  BranchCode code;
  std::vector<std::complex<double>> points;
  std::string style;
};

}  // namespace fracspace
