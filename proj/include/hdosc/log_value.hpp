#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace hdosc {

/// Signed number stored as (sign, ln|x|). Gamma ratios and polynomial values
/// at large dimension overflow a double long before their logarithms do.
struct LogValue {
  int sign = 0;
  double log_mag = -std::numeric_limits<double>::infinity();

  static constexpr LogValue zero() { return {}; }
  static LogValue one() { return {1, 0.0}; }
  static LogValue from_log(double log_mag, int sign = 1) {
    if (sign == 0 || log_mag == -std::numeric_limits<double>::infinity()) return zero();
    return {sign > 0 ? 1 : -1, log_mag};
  }
  static LogValue from_double(double x) {
    if (x == 0.0) return zero();
    return {x > 0 ? 1 : -1, std::log(std::fabs(x))};
  }

  bool is_zero() const { return sign == 0; }
  double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_mag); }
  LogValue abs() const { return sign == 0 ? zero() : LogValue{1, log_mag}; }
  LogValue operator-() const { return {-sign, log_mag}; }

  /// |x|^p keeping the sign of x; only meaningful for sign >= 0 unless p is integral.
  LogValue pow_abs(double p) const {
    if (sign == 0) return p > 0 ? zero() : LogValue{1, 0.0};
    return {1, p * log_mag};
  }

  friend LogValue operator*(LogValue a, LogValue b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return {a.sign * b.sign, a.log_mag + b.log_mag};
  }
  friend LogValue operator/(LogValue a, LogValue b) {
    if (a.sign == 0) return zero();
    if (b.sign == 0) return {a.sign, std::numeric_limits<double>::infinity()};
    return {a.sign * b.sign, a.log_mag - b.log_mag};
  }
  friend LogValue operator+(LogValue a, LogValue b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    if (a.log_mag < b.log_mag) std::swap(a, b);
    const double r = std::exp(b.log_mag - a.log_mag);
    if (a.sign == b.sign) return {a.sign, a.log_mag + std::log1p(r)};
    if (r == 1.0) return zero();
    return {a.sign, a.log_mag + std::log1p(-r)};
  }
  friend LogValue operator-(LogValue a, LogValue b) { return a + (-b); }
};

/// Sums many signed LogValues with a running reference scale and Kahan
/// compensation on the shifted exponentials.
class LogAccumulator {
 public:
  void add(LogValue v) {
    if (v.sign == 0) return;
    if (v.log_mag > ref_) {
      const double s = std::isinf(ref_) ? 0.0 : std::exp(ref_ - v.log_mag);
      sum_ *= s;
      comp_ *= s;
      abs_sum_ *= s;
      ref_ = v.log_mag;
    }
    const double term = v.sign * std::exp(v.log_mag - ref_);
    const double y = term - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
    abs_sum_ += std::fabs(term);
  }
  void add(int sign, double log_mag) { add(LogValue::from_log(log_mag, sign)); }

  LogValue total() const {
    if (sum_ == 0.0) return LogValue::zero();
    return {sum_ > 0 ? 1 : -1, ref_ + std::log(std::fabs(sum_))};
  }
  /// Sum of magnitudes of everything added.
  LogValue total_abs() const {
    if (abs_sum_ == 0.0) return LogValue::zero();
    return {1, ref_ + std::log(abs_sum_)};
  }

 private:
  double ref_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_sum_ = 0.0;
};

}  // namespace hdosc
