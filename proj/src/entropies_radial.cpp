#include <cmath>
#include <sstream>

#include "entropies_detail.hpp"
#include "hdosc/errors.hpp"
#include "hdosc/specfun.hpp"

namespace hdosc {

double q_power_factor(double q) {
  if (!(q > 0.0)) throw DomainError("q must be positive");
  if (detail::near_shannon(q)) return std::exp(1.0);
  return std::exp(std::log(q) / (q - 1.0));
}

LogValue entropic_moment_radial(const HarmonicState& s, double q, Space space, const QuadratureSpec& spec_in) {
  validate(s);
  if (!(q > 0.0)) throw DomainError("entropic_moment_radial: q must be positive");
  const int l = s.l();
  const double alpha = s.alpha();
  if (!(0.5 * s.dimension + l * q - 1.0 > -1.0)) {
    throw DomainError("entropic_moment_radial: D/2 + l q - 1 must exceed -1");
  }
  const double lam = detail::effective_lambda(s, space);
  // W = 2^{q-1} lam^{(q-1)D/2} (n!/Gamma(alpha+n+1))^q J1(1 + l(q-1), q, 2q, n; alpha)
  double log_w = (q - 1.0) * std::log(2.0) + 0.5 * (q - 1.0) * s.dimension * std::log(lam) +
                 q * (specfun::log_factorial(s.n) - specfun::log_gamma(alpha + s.n + 1.0));
  if (s.n == 0) {
    // x^{a} e^{-q x} integrates in closed form.
    const double a = l * q + 0.5 * s.dimension;
    log_w += specfun::log_gamma(a) - a * std::log(q);
    return LogValue::from_log(log_w);
  }
  QuadratureSpec spec = spec_in;
  std::ostringstream name;
  name << "radial entropic moment q=" << q << " (" << to_string(space) << ", " << format_state(s) << ")";
  spec.label = name.str();
  const J1Params p{1.0 + l * (q - 1.0), q, 2.0 * q, s.n, alpha};
  const LogValue j = j1_exact(p, spec);
  return LogValue::from_log(log_w + j.log_mag);
}

namespace detail {

double radial_shannon_exact(const HarmonicState& s, Space space, const QuadratureSpec& spec_in) {
  const int l = s.l();
  const double alpha = s.alpha();
  const double lam = effective_lambda(s, space);
  const double log_norm = specfun::log_factorial(s.n) - specfun::log_gamma(alpha + s.n + 1.0);
  // ln rho = ln A - x + l ln x + 2 ln|L|, x = lam r^2, A = 2 n! lam^{D/2} / Gamma(alpha+n+1).
  const double log_a = std::log(2.0) + 0.5 * s.dimension * std::log(lam) + log_norm;
  const double mean_x = 2.0 * s.n + alpha + 1.0;
  double result = -log_a + mean_x;
  if (l == 0 && s.n == 0) return result;

  QuadratureSpec spec = spec_in;
  std::ostringstream name;
  name << "radial Shannon integral (" << to_string(space) << ", " << format_state(s) << ")";
  spec.label = name.str();
  if (s.n > 0) {
    const auto roots = specfun::laguerre_roots(s.n, alpha);
    spec.split_points.insert(spec.split_points.end(), roots.begin(), roots.end());
  }
  spec.split_points.push_back(1.0);
  spec.peak = alpha + 2.0 * s.n;
  spec.scale = std::sqrt(std::max(alpha + 2.0 * s.n, 1.0));
  auto f = [&](double x) -> LogValue {
    if (x <= 0.0) return LogValue::zero();
    const LogValue lag = specfun::laguerre_eval(s.n, alpha, x);
    if (lag.is_zero()) return LogValue::zero();
    const double g = l * std::log(x) + 2.0 * lag.log_mag;
    if (g == 0.0) return LogValue::zero();
    const double log_w = log_norm + alpha * std::log(x) - x + 2.0 * lag.log_mag;
    return LogValue::from_log(log_w + std::log(std::fabs(g)), g > 0 ? 1 : -1);
  };
  const LogValue expectation = integrate_log(f, Interval{}, spec);
  return result - expectation.to_double();
}

AsymptoticBreakdown radial_asym(const HarmonicState& s, double q, Space space) {
  const double d = s.dimension;
  const double lam = effective_lambda(s, space);
  const double n = s.n;
  const double l = s.l();
  const double log_d = std::log(d);
  const double log_q_factor = std::log(q_power_factor(q));
  AsymptoticBreakdown out;
  out.add("D log D", 0.5 * d * log_d);
  out.add("linear", 0.5 * (log_q_factor - std::log(2.0 * lam) - 1.0) * d);
  const double log_coeff = q * n / (1.0 - q) - 0.5;
  out.add("log D", log_coeff * log_d);
  // ln C~(n,l,q) with C~ = 2^{q-1} (2 pi)^{(1-q)/2} q^{-lq} (|q-1|/q)^{2qn} / (n!)^q.
  const double log_c = (q - 1.0) * std::log(2.0) + 0.5 * (1.0 - q) * std::log(2.0 * M_PI) - l * q * std::log(q) +
                       2.0 * q * n * (std::log(std::fabs(q - 1.0)) - std::log(q)) -
                       q * specfun::log_factorial(s.n);
  // The expansion in ln(D/2) moves -log_coeff ln 2 into the constant.
  out.add("constant", log_c / (1.0 - q) - log_coeff * std::log(2.0));
  return out;
}

}  // namespace detail

EntropyResult renyi_radial(const HarmonicState& s, double q, Space space, Mode mode, const QuadratureSpec& spec) {
  validate(s);
  if (!(q > 0.0)) throw DomainError("renyi_radial: q must be positive");
  EntropyResult r;
  if (detail::near_shannon(q)) {
    const EntropyResult sh = shannon(s, space, mode, spec);
    r = sh;
    r.value = sh.radial_part;
    r.angular_part = 0.0;
    if (r.breakdown) {
      r.breakdown = AsymptoticBreakdown{};
      r.breakdown->add("radial", sh.radial_part);
    }
    r.notes.emplace_back("q within 1e-6 of 1: Shannon limit");
    return r;
  }
  if (mode == Mode::exact) {
    r.radial_part = entropic_moment_radial(s, q, space, spec).log_mag / (1.0 - q);
  } else {
    r.breakdown = detail::radial_asym(s, q, space);
    r.radial_part = r.breakdown->total_log;
  }
  r.value = r.radial_part;
  return r;
}

}  // namespace hdosc
