#pragma once

#include "hdosc/quadrature.hpp"
#include "hdosc/states.hpp"

namespace hdosc {

enum class Mode { exact, asymptotic };

const char* to_string(Mode m);

struct MomentQuery {
  HarmonicState state;
  double order = 2.0;  // k (position) or t (momentum), any real >= 0
  Space space = Space::position;
  Mode mode = Mode::exact;
};

/// <r^k> or <p^t> over the radial density.
double radial_moment(const MomentQuery& q, const QuadratureSpec& spec = QuadratureSpec::defaults());

/// <r^k><p^t>.
double heisenberg_product(const HarmonicState& state, double k, double t, Mode mode,
                          const QuadratureSpec& spec = QuadratureSpec::defaults());

struct BoundsReport {
  double product;          // exact <r^2><p^2>
  double heisenberg_bound; // D^2 / 4
  double central_bound;    // (l + D/2)^2
  double heisenberg_slack;
  double central_slack;
  bool heisenberg_satisfied;
  bool central_satisfied;
};

BoundsReport check_bounds(const HarmonicState& state, const QuadratureSpec& spec = QuadratureSpec::defaults());

struct CharacteristicLength {
  double r_c;
  double energy;
  double angular_momentum;
};

/// r_c = sqrt(D / (2 lambda)), E = lambda^2 r_c^2, L = D/2.
CharacteristicLength characteristic_length(const HarmonicState& state);

}  // namespace hdosc
