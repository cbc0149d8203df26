#include "hdosc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "hdosc/errors.hpp"

namespace hdosc {
namespace {

constexpr int kNodes = 16;

struct GaussRule {
  std::array<double, kNodes> x{};
  std::array<double, kNodes> log_w{};
};

// Nodes and log-weights on [-1, 1] by Newton iteration on P_n.
GaussRule make_gauss_legendre() {
  GaussRule rule;
  constexpr double kPi = 3.14159265358979323846;
  for (int i = 0; i < kNodes; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (kNodes + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= kNodes; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = kNodes * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-17) break;
    }
    rule.x[i] = z;
    rule.log_w[i] = std::log(2.0 / ((1.0 - z * z) * dp * dp));
  }
  return rule;
}

const GaussRule& gauss_legendre() {
  static const GaussRule rule = make_gauss_legendre();
  return rule;
}

LogValue gauss_panel(const LogIntegrand& f, double a, double b) {
  const GaussRule& rule = gauss_legendre();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double log_half = std::log(half);
  LogAccumulator acc;
  for (int i = 0; i < kNodes; ++i) {
    const LogValue v = f(mid + half * rule.x[i]);
    if (v.sign == 0) continue;
    acc.add(v.sign, v.log_mag + rule.log_w[i] + log_half);
  }
  return acc.total();
}

struct Panel {
  double a;
  double b;
  LogValue whole;  // single-rule estimate over [a, b]
  LogValue left;
  LogValue right;
  LogValue value;  // left + right
  double log_err;  // ln |whole - value|
  bool splittable = true;
};

Panel make_panel(const LogIntegrand& f, double a, double b, LogValue whole) {
  Panel p{a, b, whole, {}, {}, {}, 0.0};
  const double m = 0.5 * (a + b);
  p.left = gauss_panel(f, a, m);
  p.right = gauss_panel(f, m, b);
  p.value = p.left + p.right;
  p.log_err = (whole - p.value).log_mag;
  p.splittable = (b - a) > 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(m), 1e-300);
  return p;
}

Panel make_panel(const LogIntegrand& f, double a, double b) {
  return make_panel(f, a, b, gauss_panel(f, a, b));
}

double log_of(const LogIntegrand& f, double x) {
  const LogValue v = f(x);
  return v.sign == 0 ? -std::numeric_limits<double>::infinity() : v.log_mag;
}

// Golden-section refinement of the maximum of ln|f| inside [a, b].
double refine_peak(const LogIntegrand& f, double a, double b) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = log_of(f, c);
  double fd = log_of(f, d);
  for (int it = 0; it < 80 && (b - a) > 1e-10 * std::max(std::fabs(a) + std::fabs(b), 1e-300); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = log_of(f, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = log_of(f, d);
    }
  }
  return 0.5 * (a + b);
}

double locate_peak(const LogIntegrand& f, Interval dom) {
  std::vector<double> xs;
  if (std::isfinite(dom.hi)) {
    constexpr int kSamples = 512;
    const double h = (dom.hi - dom.lo) / kSamples;
    for (int i = 0; i < kSamples; ++i) xs.push_back(dom.lo + (i + 0.5) * h);
  } else {
    const double base = std::max(std::fabs(dom.lo), 1.0) * 1e-8;
    for (int i = 0; i < 4 * 80; ++i) xs.push_back(dom.lo + base * std::exp2(i / 4.0));
  }
  std::size_t best = 0;
  double best_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = log_of(f, xs[i]);
    if (v > best_log) {
      best_log = v;
      best = i;
    }
  }
  if (!std::isfinite(best_log)) return xs[xs.size() / 2];
  const double a = best == 0 ? dom.lo : xs[best - 1];
  const double b = best + 1 < xs.size() ? xs[best + 1] : xs[best];
  return refine_peak(f, a, b);
}

double estimate_scale(const LogIntegrand& f, Interval dom, double peak) {
  const double fallback = std::isfinite(dom.hi) ? (dom.hi - dom.lo) / 64.0 : 0.1 * std::max(std::fabs(peak), 1.0);
  const double h = std::max(1e-4 * std::fabs(peak), 1e-6);
  if (peak - h <= dom.lo || peak + h >= dom.hi) return fallback;
  const double l0 = log_of(f, peak);
  const double lm = log_of(f, peak - h);
  const double lp = log_of(f, peak + h);
  const double curv = (lp - 2.0 * l0 + lm) / (h * h);
  if (!std::isfinite(curv) || curv >= 0.0) return fallback;
  return std::min(1.0 / std::sqrt(-curv), fallback * 64.0);
}

std::string describe(const QuadratureSpec& spec) {
  return spec.label.empty() ? std::string("integral") : spec.label;
}

}  // namespace

QuadratureSpec QuadratureSpec::defaults() {
  QuadratureSpec spec;
  if (const char* env = std::getenv("OSC_DEFAULT_TOL")) {
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (end != env && tol > 0.0 && tol < 1.0) spec.target_rel_tol = tol;
  }
  return spec;
}

LogValue integrate_log(const LogIntegrand& f, Interval dom, const QuadratureSpec& spec) {
  if (!(dom.hi > dom.lo)) throw DomainError("integrate_log: empty or inverted interval");
  if (!(spec.target_rel_tol > 0.0 && spec.target_rel_tol < 1.0)) {
    throw DomainError("integrate_log: target_rel_tol must lie in (0, 1)");
  }
  const bool infinite = !std::isfinite(dom.hi);

  double peak = spec.peak ? *spec.peak : locate_peak(f, dom);
  peak = std::clamp(peak, dom.lo, infinite ? std::numeric_limits<double>::max() : dom.hi);
  double scale = spec.scale ? *spec.scale : estimate_scale(f, dom, peak);
  scale = std::max(scale, 1e-12 * std::max(std::fabs(peak), 1e-3));

  // Breakpoints: ends, caller splits, the peak, and a doubling grid around it.
  std::vector<double> pts = {dom.lo, peak};
  if (!infinite) pts.push_back(dom.hi);
  for (double s : spec.split_points) {
    if (s > dom.lo && (infinite || s < dom.hi)) pts.push_back(s);
  }
  for (double step = scale; peak - step > dom.lo; step *= 2.0) pts.push_back(peak - step);
  const double right_limit = infinite
                                 ? std::max(peak + scale, spec.split_points.empty()
                                                              ? peak
                                                              : *std::max_element(spec.split_points.begin(),
                                                                                  spec.split_points.end()))
                                 : dom.hi;
  double step = scale;
  for (; peak + step < right_limit; step *= 2.0) pts.push_back(peak + step);
  if (infinite) pts.push_back(peak + step);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<Panel> panels;
  panels.reserve(64);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) panels.push_back(make_panel(f, pts[i], pts[i + 1]));

  if (infinite) {
    LogAccumulator running;
    for (const Panel& p : panels) running.add(p.value);
    double a = pts.back();
    double width = std::max(a - peak, scale);
    int quiet = 0;
    for (int it = 0; it < 1100 && quiet < 2; ++it) {
      const double b = a + width;
      if (!std::isfinite(b)) break;
      panels.push_back(make_panel(f, a, b));
      const Panel& p = panels.back();
      running.add(p.value);
      const LogValue tot = running.total_abs();
      const bool small = p.value.is_zero() || p.value.log_mag < tot.log_mag + spec.tail_cutoff_log;
      const bool decaying = log_of(f, b) <= log_of(f, a);
      quiet = (small && decaying) ? quiet + 1 : 0;
      a = b;
      width *= 2.0;
    }
  }

  double last_rel = std::numeric_limits<double>::infinity();
  while (true) {
    LogAccumulator total_acc;
    LogAccumulator err_acc;
    for (const Panel& p : panels) {
      total_acc.add(p.value);
      err_acc.add(1, p.log_err);
    }
    const LogValue total = total_acc.total();
    const LogValue l1 = total_acc.total_abs();
    if (l1.is_zero()) return LogValue::zero();
    const double log_ref = std::max(total.is_zero() ? -std::numeric_limits<double>::infinity() : total.log_mag,
                                    l1.log_mag + std::log(1e-4));
    const LogValue err = err_acc.total();
    last_rel = err.is_zero() ? 0.0 : std::exp(err.log_mag - log_ref);
    if (last_rel <= spec.target_rel_tol) return total;

    // Split the worst panels until half of the outstanding error is covered.
    std::vector<std::size_t> order(panels.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return panels[i].log_err > panels[j].log_err; });
    LogAccumulator covered;
    std::vector<std::size_t> to_split;
    for (std::size_t idx : order) {
      if (!panels[idx].splittable) continue;
      to_split.push_back(idx);
      covered.add(1, panels[idx].log_err);
      if (covered.total().log_mag >= err.log_mag + std::log(0.5)) break;
    }
    if (to_split.empty()) {
      // Remaining error sits on panels at the resolution limit of a double.
      return total;
    }
    if (panels.size() + to_split.size() > static_cast<std::size_t>(spec.max_panels)) {
      std::ostringstream msg;
      msg << describe(spec) << ": quadrature did not converge within " << spec.max_panels
          << " panels (estimated relative error " << last_rel << ")";
      throw ConvergenceError(msg.str(), last_rel);
    }
    std::sort(to_split.begin(), to_split.end(), std::greater<>());
    for (std::size_t idx : to_split) {
      const Panel old = panels[idx];
      const double m = 0.5 * (old.a + old.b);
      panels[idx] = make_panel(f, old.a, m, old.left);
      panels.push_back(make_panel(f, m, old.b, old.right));
    }
  }
}

}  // namespace hdosc
