#include "hdosc/moments.hpp"

#include <cmath>
#include <sstream>

#include "hdosc/errors.hpp"
#include "hdosc/laguerre_asym.hpp"
#include "hdosc/specfun.hpp"

namespace hdosc {

const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "asymptotic"; }

double radial_moment(const MomentQuery& q, const QuadratureSpec& spec_in) {
  validate(q.state);
  if (!(q.order >= 0.0)) throw DomainError("radial_moment: order must be non-negative");
  const HarmonicState& s = q.state;
  const double lam_exp = q.space == Space::position ? -0.5 * q.order : 0.5 * q.order;
  if (q.mode == Mode::asymptotic) {
    const double base = q.space == Space::position ? s.dimension / (2.0 * s.lambda) : s.lambda * s.dimension / 2.0;
    return std::pow(base, 0.5 * q.order);
  }
  if (q.order == 0.0) return 1.0;
  const double alpha = s.alpha();
  QuadratureSpec spec = spec_in;
  std::ostringstream name;
  name << "radial moment order " << q.order << " (" << to_string(q.space) << ", " << format_state(s) << ")";
  spec.label = name.str();
  const J1Params p{0.5 * q.order + 1.0, 1.0, 2.0, s.n, alpha};
  const LogValue j = j1_exact(p, spec);
  const double log_moment = specfun::log_factorial(s.n) + lam_exp * std::log(s.lambda) -
                            specfun::log_gamma(alpha + s.n + 1.0) + j.log_mag;
  return std::exp(log_moment);
}

double heisenberg_product(const HarmonicState& state, double k, double t, Mode mode, const QuadratureSpec& spec) {
  if (mode == Mode::asymptotic) {
    validate(state);
    return std::pow(state.lambda, 0.5 * (t - k)) * std::pow(0.5 * state.dimension, 0.5 * (k + t));
  }
  const double r = radial_moment({state, k, Space::position, mode}, spec);
  const double p = radial_moment({state, t, Space::momentum, mode}, spec);
  return r * p;
}

BoundsReport check_bounds(const HarmonicState& state, const QuadratureSpec& spec) {
  BoundsReport b{};
  b.product = heisenberg_product(state, 2.0, 2.0, Mode::exact, spec);
  const double half_d = 0.5 * state.dimension;
  b.heisenberg_bound = half_d * half_d;
  b.central_bound = (state.l() + half_d) * (state.l() + half_d);
  b.heisenberg_slack = b.product - b.heisenberg_bound;
  b.central_slack = b.product - b.central_bound;
  // Saturated bounds are met only to quadrature accuracy.
  const double tol = 1e-9 * b.product;
  b.heisenberg_satisfied = b.heisenberg_slack >= -tol;
  b.central_satisfied = b.central_slack >= -tol;
  return b;
}

CharacteristicLength characteristic_length(const HarmonicState& state) {
  validate(state);
  const double rc = std::sqrt(state.dimension / (2.0 * state.lambda));
  return {rc, state.lambda * state.lambda * rc * rc, 0.5 * state.dimension};
}

}  // namespace hdosc
