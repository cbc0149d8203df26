#pragma once

#include <string>
#include <vector>

#include "hdosc/log_value.hpp"
#include "hdosc/quadrature.hpp"

namespace hdosc {

/// Parameters of J1 = int_0^inf x^{alpha+sigma-1} e^{-rate x} |L_m^{(alpha)}(x)|^kappa dx.
struct J1Params {
  double sigma = 1.0;
  double rate = 1.0;
  double kappa = 2.0;
  int m = 0;
  double alpha = 1.0;
};

struct AsymptoticTerm {
  std::string label;
  double value;
};

/// A log-space asymptotic estimate split into labeled additive pieces.
struct AsymptoticBreakdown {
  double total_log = 0.0;
  std::vector<AsymptoticTerm> terms;
  std::vector<std::string> notes;

  void add(std::string label, double value);
  double term(const std::string& label) const;  // 0 when absent
};

/// Quadrature value of J1. Accepts alpha > -1 (alpha + sigma > 0).
LogValue j1_exact(const J1Params& p, const QuadratureSpec& spec);

/// Which first-order coefficient j1_asym uses.
enum class D1Form {
  published,  // the printed polynomial, kept verbatim
  laplace,    // re-derived by Laplace's method; differs from the printed one when m > 0
};

/// Large-alpha expansion of J1 to the given order (0 or 1). rate == 1 is
/// refused; |rate - 1| < near_one_warning adds a note to the result.
AsymptoticBreakdown j1_asym(const J1Params& p, int order, double near_one_warning = 0.05,
                            D1Form d1 = D1Form::published);

/// First correction coefficient D1(kappa, m, sigma, rate) as printed.
double d1_coefficient(double kappa, int m, double sigma, double rate);

/// D1 from a second-order Laplace expansion around x = alpha / rate:
/// (6 sigma^2 - 6 sigma + 1)/12 + kappa m (m+1)/2 - (sigma-1) kappa m/(rate-1)
///   + kappa (kappa-1) m^2 / (2 (rate-1)^2).
/// Agrees with d1_coefficient at m = 0.
double d1_coefficient_laplace(double kappa, int m, double sigma, double rate);

/// rate = 1, kappa = 2 case: alpha^{alpha+sigma+m} e^{-alpha} sqrt(2 pi / alpha) / m!.
AsymptoticBreakdown corollary_asym(double sigma, int m, double alpha);

}  // namespace hdosc
