#include "hdosc/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "hdosc/errors.hpp"

namespace hdosc::specfun {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;
constexpr double kLogPi = 1.14472988584940017414342735135306;
constexpr double kStirlingCutoff = 15.0;

// Stirling series remainder: ln Gamma(z) - [(z - 1/2) ln z - z + ln sqrt(2 pi)].
// Used for Gamma ratios at large arguments, where two separate lgamma calls cancel.
double stirling_tail(double z) {
  static constexpr std::array<double, 8> kCoeff = {
      1.0 / 12.0,         -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0,       -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0};
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  double acc = 0.0;
  for (auto it = kCoeff.rbegin(); it != kCoeff.rend(); ++it) acc = acc * inv2 + *it;
  return acc * inv;
}

struct Bracket {
  double lo;
  double hi;
};

// Bisection down to a coarse bracket, then Newton clipped to the bracket.
double refine_root(const std::function<LogValue(double)>& value,
                   const std::function<LogValue(double)>& derivative, Bracket br) {
  double a = br.lo;
  double b = br.hi;
  const int sign_a = value(a).sign;
  for (int it = 0; it < 200 && (b - a) > 1e-6 * std::max({std::fabs(a), std::fabs(b), 1e-300}); ++it) {
    const double mid = 0.5 * (a + b);
    const int s = value(mid).sign;
    if (s == 0) return mid;
    (s == sign_a ? a : b) = mid;
  }
  double x = 0.5 * (a + b);
  for (int it = 0; it < 100; ++it) {
    const LogValue v = value(x);
    if (v.sign == 0) return x;
    (v.sign == sign_a ? a : b) = x;
    const LogValue d = derivative(x);
    double next = d.sign == 0 ? 0.5 * (a + b) : x - (v / d).to_double();
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    const double step = std::fabs(next - x);
    x = next;
    if (step <= 4e-16 * std::fabs(x) || b - a <= 4e-16 * std::fabs(x)) break;
  }
  return x;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite, got " + std::to_string(x));
  }
  return boost::math::lgamma(x);
}

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("digamma: argument must be positive and finite");
  }
  return boost::math::digamma(x);
}

double log_pochhammer(double x, double a) {
  if (!(x > 0.0) || !(x + a > 0.0)) {
    throw DomainError("log_pochhammer: need x > 0 and x + a > 0");
  }
  if (a == 0.0) return 0.0;
  if (a > 0.0 && a <= 32.0 && a == std::floor(a)) {
    double acc = 0.0;
    for (int i = 0; i < static_cast<int>(a); ++i) acc += std::log(x + i);
    return acc;
  }
  const double y = x + a;
  if (x >= kStirlingCutoff && y >= kStirlingCutoff) {
    return (x - 0.5) * std::log1p(a / x) + a * std::log(y) - a + stirling_tail(y) - stirling_tail(x);
  }
  return log_gamma(y) - log_gamma(x);
}

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  if (n < 2) return 0.0;
  return log_gamma(n + 1.0);
}

double log_sine_power_integral(double s) {
  if (!(s > -1.0)) throw DomainError("log_sine_power_integral: need s > -1");
  // sqrt(pi) Gamma((s+1)/2) / Gamma(s/2 + 1)
  return 0.5 * kLogPi - log_pochhammer(0.5 * (s + 1.0), 0.5);
}

LogValue laguerre_eval(int n, double alpha, double x) {
  if (n < 0) throw DomainError("laguerre_eval: negative degree");
  if (!(alpha > -1.0)) throw DomainError("laguerre_eval: alpha must exceed -1");
  if (n == 0) return LogValue::one();
  double p0 = 1.0;
  double p1 = alpha + 1.0 - x;
  double log_scale = 0.0;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0 + alpha - x) * p1 - (k + alpha) * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
    const double big = std::max(std::fabs(p0), std::fabs(p1));
    if (big > 1e150 || (big < 1e-150 && big > 0.0)) {
      p0 /= big;
      p1 /= big;
      log_scale += std::log(big);
    }
  }
  if (p1 == 0.0) return LogValue::zero();
  return {p1 > 0 ? 1 : -1, std::log(std::fabs(p1)) + log_scale};
}

std::vector<double> laguerre_roots(int n, double alpha) {
  if (n < 1) throw DomainError("laguerre_roots: degree must be >= 1");
  if (!(alpha > -1.0)) throw DomainError("laguerre_roots: alpha must exceed -1");
  std::vector<double> roots = {alpha + 1.0};
  for (int k = 2; k <= n; ++k) {
    const double upper = 4.0 * k + 2.0 * alpha + 2.0;
    std::vector<double> next;
    next.reserve(k);
    auto value = [k, alpha](double x) { return laguerre_eval(k, alpha, x); };
    auto derivative = [k, alpha](double x) { return -laguerre_eval(k - 1, alpha + 1.0, x); };
    double lo = 0.0;
    for (int i = 0; i <= static_cast<int>(roots.size()); ++i) {
      const double hi = i < static_cast<int>(roots.size()) ? roots[i] : upper;
      next.push_back(refine_root(value, derivative, {lo, hi}));
      lo = hi;
    }
    roots = std::move(next);
  }
  return roots;
}

LogValue gegenbauer_eval(int m, double alpha, double t) {
  if (m < 0) throw DomainError("gegenbauer_eval: negative degree");
  if (!(alpha > -0.5)) throw DomainError("gegenbauer_eval: alpha must exceed -1/2");
  if (m == 0) return LogValue::one();
  double c0 = 1.0;
  double c1 = 2.0 * alpha * t;
  double log_scale = 0.0;
  for (int k = 1; k < m; ++k) {
    const double c2 = (2.0 * (k + alpha) * t * c1 - (k + 2.0 * alpha - 1.0) * c0) / (k + 1.0);
    c0 = c1;
    c1 = c2;
    const double big = std::max(std::fabs(c0), std::fabs(c1));
    if (big > 1e150 || (big < 1e-150 && big > 0.0)) {
      c0 /= big;
      c1 /= big;
      log_scale += std::log(big);
    }
  }
  if (c1 == 0.0) return LogValue::zero();
  return {c1 > 0 ? 1 : -1, std::log(std::fabs(c1)) + log_scale};
}

std::vector<double> gegenbauer_roots(int m, double alpha) {
  if (m < 1) throw DomainError("gegenbauer_roots: degree must be >= 1");
  if (!(alpha > -0.5) || alpha == 0.0) {
    throw DomainError("gegenbauer_roots: alpha must exceed -1/2 and be nonzero");
  }
  std::vector<double> roots = {0.0};
  for (int k = 2; k <= m; ++k) {
    std::vector<double> next;
    next.reserve(k);
    auto value = [k, alpha](double t) { return gegenbauer_eval(k, alpha, t); };
    auto derivative = [k, alpha](double t) {
      return LogValue::from_double(2.0 * alpha) * gegenbauer_eval(k - 1, alpha + 1.0, t);
    };
    double lo = -1.0;
    for (int i = 0; i <= static_cast<int>(roots.size()); ++i) {
      const double hi = i < static_cast<int>(roots.size()) ? roots[i] : 1.0;
      next.push_back(refine_root(value, derivative, {lo, hi}));
      lo = hi;
    }
    roots = std::move(next);
  }
  return roots;
}

}  // namespace hdosc::specfun
