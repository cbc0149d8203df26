#include <cmath>
#include <sstream>

#include "entropies_detail.hpp"
#include "hdosc/errors.hpp"
#include "hdosc/specfun.hpp"

namespace hdosc {
namespace {

constexpr double kLogPi = 1.14472988584940017414342735135306;
constexpr double kLog2Pi = 1.83787706640934548356065947281123;

// One theta_j factor: Gegenbauer degree k, parameter beta = alpha_j + mu_{j+1},
// where mu_{j+1} is the next chain entry and 2 alpha_j = D - j - 1.
struct Factor {
  int k;
  int mu_next;
  double alpha_j;
  double beta() const { return alpha_j + mu_next; }
};

// ln of the normalizer c with c * int C_k^beta(cos t)^2 sin^{2 beta} t dt = 1.
double log_factor_norm(const Factor& f) {
  const double b = f.beta();
  const double log_inv = 0.5 * kLogPi + specfun::log_pochhammer(2.0 * b, f.k) + specfun::log_pochhammer(b, 0.5) -
                         specfun::log_factorial(f.k) - std::log(f.k + b);
  return -log_inv;
}

// Closed form of ln prod_{j=a}^{b} int_0^pi sin^{c + D - j - 1} t dt.
double log_sine_run(double c, int dimension, int a, int b) {
  const double h = 0.5 * (b - a + 1);
  return h * kLogPi - specfun::log_pochhammer(0.5 * (c + dimension - b), h);
}

QuadratureSpec factor_spec(const QuadratureSpec& base, const Factor& f, double power, const char* what) {
  QuadratureSpec spec = base;
  if (f.k > 0) {
    for (double t : specfun::gegenbauer_roots(f.k, f.beta())) spec.split_points.push_back(std::acos(t));
    std::sort(spec.split_points.begin(), spec.split_points.end());
  }
  spec.peak = 0.5 * M_PI;
  spec.scale = std::min(1.0 / std::sqrt(std::max(power, 1.0)), 0.25);
  std::ostringstream name;
  name << what << " (degree " << f.k << ", parameter " << f.beta() << ")";
  spec.label = name.str();
  return spec;
}

// ln of c^q int |C_k^beta(cos t)|^{2q} sin^{2 q mu_next + 2 alpha_j} t dt.
double log_factor_moment(const Factor& f, double q, const QuadratureSpec& base) {
  const double power = 2.0 * q * f.mu_next + 2.0 * f.alpha_j;
  const double beta = f.beta();
  const QuadratureSpec spec = factor_spec(base, f, power, "angular factor integral");
  auto integrand = [&](double t) -> LogValue {
    const double s = std::sin(t);
    if (s <= 0.0) return LogValue::zero();
    const LogValue c = specfun::gegenbauer_eval(f.k, beta, std::cos(t));
    if (c.is_zero()) return LogValue::zero();
    return LogValue::from_log(2.0 * q * c.log_mag + power * std::log(s));
  };
  const LogValue integral = integrate_log(integrand, Interval{0.0, M_PI}, spec);
  return q * log_factor_norm(f) + integral.log_mag;
}

// -int p ln(c C^2 sin^{2 mu_next} t) dt with p = c C^2 sin^{2 beta} t.
double factor_shannon(const Factor& f, const QuadratureSpec& base) {
  const double beta = f.beta();
  const double log_c = log_factor_norm(f);
  const QuadratureSpec spec = factor_spec(base, f, 2.0 * beta, "angular Shannon factor integral");
  auto integrand = [&](double t) -> LogValue {
    const double s = std::sin(t);
    if (s <= 0.0) return LogValue::zero();
    const LogValue c = specfun::gegenbauer_eval(f.k, beta, std::cos(t));
    if (c.is_zero()) return LogValue::zero();
    const double g = 2.0 * c.log_mag + 2.0 * f.mu_next * std::log(s);
    if (g == 0.0) return LogValue::zero();
    return LogValue::from_log(log_c + 2.0 * c.log_mag + 2.0 * beta * std::log(s) + std::log(std::fabs(g)),
                              g > 0 ? 1 : -1);
  };
  return -log_c - integrate_log(integrand, Interval{0.0, M_PI}, spec).to_double();
}

struct Transition {
  int j;  // chain position of the upper entry
  Factor factor;
};

// Non-trivial transitions and the trivial runs between them, over the
// effective chain.
struct AngularLayout {
  std::vector<Transition> transitions;
  struct TrivialRun {
    int a;
    int b;
    int mu;
  };
  std::vector<TrivialRun> trivial;
};

AngularLayout layout(const HarmonicState& s) {
  AngularLayout out;
  const auto runs = effective_runs(s);
  const int d = s.dimension;
  int start = 1;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const int end = start + runs[i].multiplicity - 1;
    if (end - 1 >= start) out.trivial.push_back({start, end - 1, runs[i].value});
    if (i + 1 < runs.size()) {
      const Factor f{runs[i].value - runs[i + 1].value, runs[i + 1].value, 0.5 * (d - end - 1)};
      out.transitions.push_back({end, f});
    }
    start = end + 1;
  }
  return out;
}

}  // namespace

LogValue angular_entropic_moment(const HarmonicState& s, double q, const QuadratureSpec& spec,
                                 bool force_quadrature) {
  validate(s);
  if (!(q > 0.0)) throw DomainError("angular_entropic_moment: q must be positive");
  const int d = s.dimension;
  double log_lambda = (1.0 - q) * kLog2Pi;
  if (force_quadrature) {
    const auto chain = expand_chain(effective_runs(s));
    for (int j = 1; j <= d - 2; ++j) {
      const Factor f{chain[j - 1] - chain[j], chain[j], 0.5 * (d - j - 1)};
      log_lambda += log_factor_moment(f, q, spec);
    }
    return LogValue::from_log(log_lambda);
  }
  const AngularLayout lay = layout(s);
  for (const auto& run : lay.trivial) {
    log_lambda += log_sine_run(2.0 * q * run.mu, d, run.a, run.b) - q * log_sine_run(2.0 * run.mu, d, run.a, run.b);
  }
  for (const auto& t : lay.transitions) log_lambda += log_factor_moment(t.factor, q, spec);
  return LogValue::from_log(log_lambda);
}

namespace detail {

double angular_shannon_exact(const HarmonicState& s, const QuadratureSpec& spec) {
  const int d = s.dimension;
  double total = kLog2Pi;
  const AngularLayout lay = layout(s);
  for (const auto& run : lay.trivial) {
    total += log_sine_run(2.0 * run.mu, d, run.a, run.b);
    if (run.mu != 0) {
      total -= run.mu * (specfun::digamma(0.5 * (2.0 * run.mu + d - run.b)) -
                         specfun::digamma(0.5 * (2.0 * run.mu + d - run.a + 1)));
    }
  }
  for (const auto& t : lay.transitions) total += factor_shannon(t.factor, spec);
  return total;
}

AsymptoticBreakdown angular_asym(const HarmonicState& s, double q) {
  const double d = s.dimension;
  const double log_d = std::log(d);
  AsymptoticBreakdown out;
  out.add("D log D", -0.5 * d * log_d);
  out.add("linear", 0.5 * std::log(2.0 * M_E * M_PI) * d);
  out.add("log D", 0.5 * log_d);
  out.add("constant", (q * e_tilde(s).value.log_mag + m_tilde(s, q).log_mag) / (1.0 - q));
  return out;
}

}  // namespace detail

LogValue m_tilde(const HarmonicState& s, double q) {
  validate(s);
  const auto runs = effective_runs(s);
  const int families = static_cast<int>(runs.size());
  double acc = q * (s.l() - std::abs(s.m())) * std::log(4.0) + 0.5 * (1 - families) * kLogPi;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    const double jump = runs[i].value - runs[i + 1].value;
    acc += specfun::log_gamma(q * jump + 0.5) - q * specfun::log_gamma(jump + 1.0);
  }
  return LogValue::from_log(acc);
}

ETilde e_tilde(const HarmonicState& s) {
  validate(s);
  double acc = 0.0;
  for (const auto& t : layout(s).transitions) {
    const double b = t.factor.beta();
    const int jump = t.factor.k;
    acc += 2.0 * jump * std::log(b) - specfun::log_pochhammer(2.0 * b, jump) - specfun::log_pochhammer(b, jump);
  }
  return {LogValue::from_log(acc), s.l() - std::abs(s.m())};
}

EntropyResult renyi_angular(const HarmonicState& s, double q, Mode mode, const QuadratureSpec& spec) {
  validate(s);
  if (!(q > 0.0)) throw DomainError("renyi_angular: q must be positive");
  EntropyResult r;
  if (detail::near_shannon(q)) {
    const EntropyResult sh = shannon(s, Space::position, mode, spec);
    r.angular_part = sh.angular_part;
    r.conjecture = sh.conjecture;
    if (sh.breakdown) {
      r.breakdown = AsymptoticBreakdown{};
      r.breakdown->add("angular", sh.angular_part);
    }
    r.notes.emplace_back("q within 1e-6 of 1: Shannon limit");
  } else if (mode == Mode::exact) {
    r.angular_part = angular_entropic_moment(s, q, spec).log_mag / (1.0 - q);
  } else {
    r.breakdown = detail::angular_asym(s, q);
    r.angular_part = r.breakdown->total_log;
  }
  r.value = r.angular_part;
  return r;
}

}  // namespace hdosc
