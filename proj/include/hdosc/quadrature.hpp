#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hdosc/log_value.hpp"

namespace hdosc {

/// Controls for integrate_log.
///
/// The integrand is assumed piecewise smooth between `split_points` and to
/// decay at least exponentially on an infinite upper tail. `peak` and
/// `scale` locate the bulk of the integrand; when absent they are found by a
/// one-dimensional search, which can miss a very narrow peak on a wide
/// interval, so callers that know them should pass them.
struct QuadratureSpec {
  double target_rel_tol = 1e-10;
  int max_panels = 4096;
  std::vector<double> split_points;
  /// Stop extending an infinite tail once a panel contributes less than
  /// exp(tail_cutoff_log) of the accumulated integral.
  double tail_cutoff_log = -42.0;
  std::optional<double> peak;
  std::optional<double> scale;
  /// Names the integral in convergence errors.
  std::string label;

  /// Default tolerance, overridable through OSC_DEFAULT_TOL.
  static QuadratureSpec defaults();
};

struct Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

using LogIntegrand = std::function<LogValue(double)>;

/// Integral of f over `domain`, accumulated in log space with adaptive
/// Gauss-Legendre panels. Throws ConvergenceError when max_panels is hit.
LogValue integrate_log(const LogIntegrand& f, Interval domain, const QuadratureSpec& spec);

}  // namespace hdosc
