#pragma once

#include <vector>

#include "hdosc/log_value.hpp"

namespace hdosc::specfun {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Digamma psi(x) for x > 0.
double digamma(double x);

/// ln[Gamma(x + a) / Gamma(x)] for x > 0, x + a > 0. Large x is handled
/// without the cancellation of two separate log_gamma calls.
double log_pochhammer(double x, double a);

double log_factorial(int n);

/// ln of the integral of sin(theta)^s over [0, pi], s > -1.
double log_sine_power_integral(double s);

/// Generalized Laguerre polynomial L_n^{(alpha)}(x), alpha > -1.
LogValue laguerre_eval(int n, double alpha, double x);

/// The n simple zeros of L_n^{(alpha)}, ascending.
std::vector<double> laguerre_roots(int n, double alpha);

/// Gegenbauer polynomial C_m^{(alpha)}(t), alpha > -1/2, t in [-1, 1].
LogValue gegenbauer_eval(int m, double alpha, double t);

/// The m simple zeros of C_m^{(alpha)} in (-1, 1), ascending. alpha != 0.
std::vector<double> gegenbauer_roots(int m, double alpha);

}  // namespace hdosc::specfun
