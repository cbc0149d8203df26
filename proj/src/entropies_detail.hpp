#pragma once

#include "hdosc/entropies.hpp"

namespace hdosc::detail {

inline bool near_shannon(double q) { return std::fabs(q - 1.0) < kShannonRoutingWidth; }

/// lambda as seen by the radial density of the given space.
inline double effective_lambda(const HarmonicState& s, Space space) {
  return space == Space::position ? s.lambda : 1.0 / s.lambda;
}

double radial_shannon_exact(const HarmonicState& s, Space space, const QuadratureSpec& spec);
double angular_shannon_exact(const HarmonicState& s, const QuadratureSpec& spec);

AsymptoticBreakdown radial_asym(const HarmonicState& s, double q, Space space);
AsymptoticBreakdown angular_asym(const HarmonicState& s, double q);

}  // namespace hdosc::detail
