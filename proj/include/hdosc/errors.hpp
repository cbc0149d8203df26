#pragma once

#include <stdexcept>
#include <string>

namespace hdosc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature ran out of panels before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_rel_error)
      : std::runtime_error(what), last_rel_error_(last_rel_error) {}

  double last_rel_error() const noexcept { return last_rel_error_; }

 private:
  double last_rel_error_;
};

/// Invalid hyperquantum chain. `index` is the 1-based chain position of the
/// first offending entry; `value` and `previous` are the entries involved.
class StateError : public std::invalid_argument {
 public:
  StateError(const std::string& what, int index, int previous, int value)
      : std::invalid_argument(what), index_(index), previous_(previous), value_(value) {}

  int index() const noexcept { return index_; }
  int previous() const noexcept { return previous_; }
  int value() const noexcept { return value_; }

 private:
  int index_;
  int previous_;
  int value_;
};

}  // namespace hdosc
