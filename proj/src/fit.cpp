#include "hdosc/fit.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <stdexcept>

namespace hdosc {

SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_loglog_slope: size mismatch");
  std::vector<double> u;
  std::vector<double> v;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] != 0.0 && std::isfinite(y[i])) {
      u.push_back(std::log(x[i]));
      v.push_back(std::log(std::fabs(y[i])));
    }
  }
  SlopeFit fit;
  fit.points = static_cast<int>(u.size());
  if (u.size() < 2) throw std::invalid_argument("fit_loglog_slope: need at least two usable points");
  const double n = static_cast<double>(u.size());
  double mu = 0.0;
  double mv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= n;
  mv /= n;
  double suu = 0.0;
  double suv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suv += (u[i] - mu) * (v[i] - mv);
  }
  if (suu == 0.0) throw std::invalid_argument("fit_loglog_slope: abscissae coincide");
  fit.slope = suv / suu;
  fit.intercept = mv - fit.slope * mu;
  if (u.size() > 2) {
    double sse = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double r = v[i] - fit.intercept - fit.slope * u[i];
      sse += r * r;
    }
    const double dof = n - 2.0;
    const double se = std::sqrt(sse / dof / suu);
    boost::math::students_t dist(dof);
    fit.half_width_95 = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
  }
  return fit;
}

}  // namespace hdosc
