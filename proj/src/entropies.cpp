#include "hdosc/entropies.hpp"

#include <cmath>
#include <cstdio>

#include "entropies_detail.hpp"
#include "hdosc/errors.hpp"
#include "hdosc/specfun.hpp"

namespace hdosc {
namespace {

AsymptoticBreakdown merge(const AsymptoticBreakdown& a, const AsymptoticBreakdown& b) {
  AsymptoticBreakdown out;
  std::vector<AsymptoticTerm> terms = a.terms;
  for (const auto& t : b.terms) {
    bool found = false;
    for (auto& mine : terms) {
      if (mine.label == t.label) {
        mine.value += t.value;
        found = true;
        break;
      }
    }
    if (!found) terms.push_back(t);
  }
  for (auto& t : terms) out.add(t.label, t.value);
  out.notes = a.notes;
  out.notes.insert(out.notes.end(), b.notes.begin(), b.notes.end());
  return out;
}

void flag_validity(EntropyResult& r) {
  if (!r.breakdown) return;
  const double leading = r.breakdown->term("linear") + r.breakdown->term("D log D");
  const double dropped = r.breakdown->term("log D") + r.breakdown->term("constant");
  if (std::fabs(dropped) > 0.1 * std::fabs(leading)) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "sub-leading terms (%.4g) exceed 10%% of the leading terms (%.4g) at this D; expansion not yet in "
                  "its asymptotic regime",
                  dropped, leading);
    r.notes.emplace_back(buf);
  }
}

}  // namespace

EntropyResult renyi_total(const HarmonicState& s, double q, Space space, Mode mode, const QuadratureSpec& spec) {
  validate(s);
  if (!(q > 0.0)) throw DomainError("renyi_total: q must be positive");
  if (detail::near_shannon(q)) {
    EntropyResult r = shannon(s, space, mode, spec);
    r.notes.emplace_back("q within 1e-6 of 1: Shannon limit");
    return r;
  }
  const EntropyResult rad = renyi_radial(s, q, space, mode, spec);
  const EntropyResult ang = renyi_angular(s, q, mode, spec);
  EntropyResult r;
  r.radial_part = rad.radial_part;
  r.angular_part = ang.angular_part;
  r.value = r.radial_part + r.angular_part;
  if (mode == Mode::asymptotic) {
    r.breakdown = merge(*rad.breakdown, *ang.breakdown);
    flag_validity(r);
  }
  return r;
}

AsymptoticBreakdown renyi_total_closed_form(const HarmonicState& s, double q, Space space) {
  validate(s);
  if (!(q > 0.0) || detail::near_shannon(q)) throw DomainError("renyi_total_closed_form: need q > 0, q != 1");
  const double d = s.dimension;
  const double lam = detail::effective_lambda(s, space);
  const double n = s.n;
  const double l = s.l();
  AsymptoticBreakdown out;
  out.add("linear", 0.5 * std::log(q_power_factor(q) * M_PI / lam) * d);
  out.add("log D", q * n / (1.0 - q) * std::log(d));
  // C^ = C~ / (2 pi)^{(1-q)/2} = 2^{q-1} q^{-lq} (|q-1|/q)^{2qn} / (n!)^q
  const double log_c_hat = (q - 1.0) * std::log(2.0) - l * q * std::log(q) +
                           2.0 * q * n * (std::log(std::fabs(q - 1.0)) - std::log(q)) -
                           q * specfun::log_factorial(s.n);
  const double log_arg =
      q * e_tilde(s).value.log_mag + m_tilde(s, q).log_mag + log_c_hat - q * n * std::log(2.0);
  out.add("constant", log_arg / (1.0 - q));
  return out;
}

EntropyResult shannon(const HarmonicState& s, Space space, Mode mode, const QuadratureSpec& spec) {
  validate(s);
  EntropyResult r;
  if (mode == Mode::exact) {
    r.radial_part = detail::radial_shannon_exact(s, space, spec);
    r.angular_part = detail::angular_shannon_exact(s, spec);
  } else {
    const double d = s.dimension;
    const double lam = detail::effective_lambda(s, space);
    AsymptoticBreakdown rad;
    rad.add("D log D", 0.5 * d * std::log(d));
    rad.add("linear", -0.5 * std::log(2.0 * lam) * d);
    AsymptoticBreakdown ang;
    ang.add("D log D", -0.5 * d * std::log(d));
    ang.add("linear", 0.5 * std::log(2.0 * M_E * M_PI) * d);
    r.radial_part = rad.total_log;
    r.angular_part = ang.total_log;
    r.breakdown = merge(rad, ang);
    r.conjecture = true;
    r.notes.emplace_back("conjectured leading term; not a proven expansion");
  }
  r.value = r.radial_part + r.angular_part;
  return r;
}

double tsallis_from_renyi(double renyi_value, double q) {
  if (!(q > 0.0)) throw DomainError("tsallis_from_renyi: need q > 0");
  if (detail::near_shannon(q)) return renyi_value;  // both tend to the Shannon entropy
  return std::expm1((1.0 - q) * renyi_value) / (1.0 - q);
}

double disequilibrium(const HarmonicState& s, Space space, DisequilibriumConvention convention,
                      const QuadratureSpec& spec) {
  const double r2 = renyi_total(s, 2.0, space, Mode::exact, spec).value;
  return std::exp(convention == DisequilibriumConvention::entropic_moment ? -r2 : r2);
}

double conjugate_exponent(double q) {
  if (!(q > 0.5)) throw DomainError("conjugate exponent needs q > 1/2");
  return q / (2.0 * q - 1.0);
}

UncertaintyReport uncertainty_sum(const HarmonicState& s, double q, const QuadratureSpec& spec) {
  validate(s);
  UncertaintyReport u{};
  u.q = q;
  u.p = conjugate_exponent(q);
  const double d = s.dimension;
  u.sum_exact = renyi_total(s, q, Space::position, Mode::exact, spec).value +
                renyi_total(s, u.p, Space::momentum, Mode::exact, spec).value;
  u.sum_asym = renyi_total(s, q, Space::position, Mode::asymptotic, spec).value +
               renyi_total(s, u.p, Space::momentum, Mode::asymptotic, spec).value;
  u.renyi_bound = 0.5 * d * (std::log(q_power_factor(u.p)) + std::log(q_power_factor(q))) + d * std::log(M_PI);
  u.renyi_slack = u.sum_exact - u.renyi_bound;
  u.shannon_sum = shannon(s, Space::position, Mode::exact, spec).value +
                  shannon(s, Space::momentum, Mode::exact, spec).value;
  u.shannon_bound = d * (1.0 + std::log(M_PI));
  u.shannon_slack = u.shannon_sum - u.shannon_bound;
  return u;
}

}  // namespace hdosc
