#pragma once

#include <vector>

namespace hdosc {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Half-width of the 95% confidence interval; 0 when only two points.
  double half_width_95 = 0.0;
  int points = 0;
};

/// Ordinary least squares of ln|y| on ln x. Points with y == 0 are skipped.
SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hdosc
