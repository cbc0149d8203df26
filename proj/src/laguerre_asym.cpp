#include "hdosc/laguerre_asym.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hdosc/errors.hpp"
#include "hdosc/specfun.hpp"

namespace hdosc {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

void check_params(const J1Params& p) {
  if (!(p.rate > 0.0)) throw DomainError("J1: rate must be positive");
  if (!(p.kappa > 0.0)) throw DomainError("J1: kappa must be positive");
  if (p.m < 0) throw DomainError("J1: degree m must be non-negative");
  if (!(p.alpha > -1.0)) throw DomainError("J1: alpha must exceed -1");
  if (!(p.alpha + p.sigma > 0.0)) throw DomainError("J1: alpha + sigma must be positive");
}

}  // namespace

void AsymptoticBreakdown::add(std::string label, double value) {
  terms.push_back({std::move(label), value});
  total_log += value;
}

double AsymptoticBreakdown::term(const std::string& label) const {
  for (const auto& t : terms) {
    if (t.label == label) return t.value;
  }
  return 0.0;
}

LogValue j1_exact(const J1Params& p, const QuadratureSpec& spec_in) {
  check_params(p);
  QuadratureSpec spec = spec_in;
  const double power = p.alpha + p.sigma - 1.0;
  if (p.m > 0) {
    const auto roots = specfun::laguerre_roots(p.m, p.alpha);
    spec.split_points.insert(spec.split_points.end(), roots.begin(), roots.end());
  }
  if (!spec.peak) spec.peak = std::max(power + p.kappa * p.m, 0.0) / p.rate;
  if (!spec.scale) spec.scale = std::sqrt(std::max(power + p.kappa * p.m, 1.0)) / p.rate;
  if (spec.label.empty()) {
    std::ostringstream name;
    name << "J1(sigma=" << p.sigma << ", rate=" << p.rate << ", kappa=" << p.kappa << ", m=" << p.m
         << ", alpha=" << p.alpha << ")";
    spec.label = name.str();
  }
  auto f = [&p, power](double x) -> LogValue {
    if (x <= 0.0) return LogValue::zero();
    const LogValue lag = specfun::laguerre_eval(p.m, p.alpha, x);
    if (lag.is_zero()) return LogValue::zero();
    return LogValue::from_log(power * std::log(x) - p.rate * x + p.kappa * lag.log_mag);
  };
  return integrate_log(f, Interval{}, spec);
}

double d1_coefficient(double kappa, int m, double sigma, double rate) {
  const double k = kappa;
  const double mm = m;
  const double s = sigma;
  const double r = rate;
  const double poly = 1.0 - 12.0 * k * mm * s * r + 6.0 * s * s * r * r - 12.0 * s * s * r - 6.0 * s * r * r +
                      12.0 * s * r + 6.0 * k * k * mm * mm + 12.0 * k * mm * s - 12.0 * k * mm * mm * r -
                      12.0 * k * mm * r + 6.0 * k * mm * r * r + 6.0 * k * mm * mm * r * r + r * r + 6.0 * s * s -
                      2.0 * r - 6.0 * s + 6.0 * k * mm * mm;
  return poly / (12.0 * (r - 1.0) * (r - 1.0));
}

double d1_coefficient_laplace(double kappa, int m, double sigma, double rate) {
  const double w = rate - 1.0;
  const double km = kappa * m;
  return (6.0 * sigma * sigma - 6.0 * sigma + 1.0) / 12.0 + 0.5 * km * (m + 1.0) - (sigma - 1.0) * km / w +
         0.5 * (kappa - 1.0) * km * m / (w * w);
}

AsymptoticBreakdown j1_asym(const J1Params& p, int order, double near_one_warning, D1Form d1) {
  check_params(p);
  if (!(p.alpha > 0.0)) throw DomainError("j1_asym: alpha must be positive");
  if (order != 0 && order != 1) throw DomainError("j1_asym: order must be 0 or 1");
  if (p.rate == 1.0) {
    throw DomainError("j1_asym: rate = 1 is the degenerate case; use corollary_asym (kappa = 2)");
  }
  const double a = p.alpha;
  const double km = p.kappa * p.m;
  const double log_a = std::log(a);
  AsymptoticBreakdown out;
  out.add("alpha log alpha", a * log_a);
  out.add("linear", -a * (1.0 + std::log(p.rate)));
  out.add("log alpha", (p.sigma + km - 0.5) * log_a);
  out.add("constant", -(p.sigma + km) * std::log(p.rate) + km * std::log(std::fabs(p.rate - 1.0)) + kHalfLog2Pi -
                          p.kappa * specfun::log_factorial(p.m));
  if (order >= 1) {
    const double coeff = d1 == D1Form::published ? d1_coefficient(p.kappa, p.m, p.sigma, p.rate)
                                                 : d1_coefficient_laplace(p.kappa, p.m, p.sigma, p.rate);
    const double c = 1.0 + coeff / a;
    if (!(c > 0.0)) throw DomainError("j1_asym: 1 + D1/alpha is not positive; alpha too small for order 1");
    out.add("D1 correction", std::log(c));
  }
  if (std::fabs(p.rate - 1.0) < near_one_warning) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "|rate-1| = %.3g below %.3g: the |rate-1|^{kappa m} factor degrades the expansion",
                  std::fabs(p.rate - 1.0), near_one_warning);
    out.notes.emplace_back(buf);
  }
  return out;
}

AsymptoticBreakdown corollary_asym(double sigma, int m, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("corollary_asym: alpha must be positive");
  if (m < 0) throw DomainError("corollary_asym: m must be non-negative");
  const double log_a = std::log(alpha);
  AsymptoticBreakdown out;
  out.add("alpha log alpha", alpha * log_a);
  out.add("linear", -alpha);
  out.add("log alpha", (sigma + m - 0.5) * log_a);
  out.add("constant", kHalfLog2Pi - specfun::log_factorial(m));
  return out;
}

}  // namespace hdosc
