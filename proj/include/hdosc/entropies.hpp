#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hdosc/laguerre_asym.hpp"
#include "hdosc/log_value.hpp"
#include "hdosc/moments.hpp"
#include "hdosc/quadrature.hpp"
#include "hdosc/states.hpp"

namespace hdosc {

struct EntropySpec {
  double q = 2.0;
  Space space = Space::position;
  Mode mode = Mode::exact;
};

/// Entropy in nats. value == radial_part + angular_part.
struct EntropyResult {
  double value = 0.0;
  double radial_part = 0.0;
  double angular_part = 0.0;
  std::optional<AsymptoticBreakdown> breakdown;
  bool conjecture = false;
  std::vector<std::string> notes;
};

/// |q - 1| below this is treated as the Shannon limit.
inline constexpr double kShannonRoutingWidth = 1e-6;

/// q^{1/(q-1)}, continued by e at q = 1.
double q_power_factor(double q);

/// W_q = int rho^q r^{D-1} dr of the radial density in the given space.
LogValue entropic_moment_radial(const HarmonicState& state, double q, Space space,
                                const QuadratureSpec& spec = QuadratureSpec::defaults());

EntropyResult renyi_radial(const HarmonicState& state, double q, Space space, Mode mode,
                           const QuadratureSpec& spec = QuadratureSpec::defaults());

/// Lambda = int |Y|^{2q} dOmega over S^{D-1}. Factors whose Gegenbauer degree
/// is zero are evaluated in closed form per run unless force_quadrature is set,
/// in which case every factor is integrated one at a time (small D only).
LogValue angular_entropic_moment(const HarmonicState& state, double q,
                                 const QuadratureSpec& spec = QuadratureSpec::defaults(),
                                 bool force_quadrature = false);

/// Angular part; identical in position and momentum space.
EntropyResult renyi_angular(const HarmonicState& state, double q, Mode mode,
                            const QuadratureSpec& spec = QuadratureSpec::defaults());

/// Angular correction factor built from Gamma(q d + 1/2) / Gamma(d + 1)^q over chain transitions.
LogValue m_tilde(const HarmonicState& state, double q);

struct ETilde {
  LogValue value;
  /// Growth exponent l - |mu_{D-1}| predicted for e_tilde ~ (D/2)^exponent.
  int predicted_growth_exponent;
};

ETilde e_tilde(const HarmonicState& state);

/// Radial plus angular. The asymptotic breakdown is the sum of the radial and
/// angular expansions, term by term.
EntropyResult renyi_total(const HarmonicState& state, double q, Space space, Mode mode,
                          const QuadratureSpec& spec = QuadratureSpec::defaults());

/// The closed total expansion as usually quoted: linear term
/// (1/2) ln(q^{1/(q-1)} pi / lambda) D (position) or with lambda -> 1/lambda
/// (momentum), (qn/(1-q)) ln D, and a constant. It differs from the radial
/// plus angular sum by a D-independent constant only.
AsymptoticBreakdown renyi_total_closed_form(const HarmonicState& state, double q, Space space);

/// Shannon entropy. Asymptotic mode returns the conjectured leading behavior
/// (D/2) ln(e pi / lambda) (position) or (D/2) ln(e pi lambda) (momentum).
EntropyResult shannon(const HarmonicState& state, Space space, Mode mode,
                      const QuadratureSpec& spec = QuadratureSpec::defaults());

/// T_q = (e^{(1-q) R_q} - 1) / (1 - q).
double tsallis_from_renyi(double renyi_value, double q);

enum class DisequilibriumConvention {
  entropic_moment,  // W_2 = int rho^2 = exp(-R_2)
  printed,          // exp(+R_2)
};

double disequilibrium(const HarmonicState& state, Space space,
                      DisequilibriumConvention convention = DisequilibriumConvention::entropic_moment,
                      const QuadratureSpec& spec = QuadratureSpec::defaults());

/// Conjugate exponent p with 1/p + 1/q = 2.
double conjugate_exponent(double q);

struct UncertaintyReport {
  double q;
  double p;
  double sum_exact;     // R_q[rho] + R_p[gamma]
  double sum_asym;
  double renyi_bound;   // D ln(p^{1/(2(p-1))} q^{1/(2(q-1))} pi)
  double renyi_slack;
  double shannon_sum;   // S[rho] + S[gamma]
  double shannon_bound; // D (1 + ln pi)
  double shannon_slack;
};

UncertaintyReport uncertainty_sum(const HarmonicState& state, double q,
                                  const QuadratureSpec& spec = QuadratureSpec::defaults());

}  // namespace hdosc
