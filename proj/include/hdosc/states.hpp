#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hdosc/log_value.hpp"

namespace hdosc {

enum class Space { position, momentum };

const char* to_string(Space s);
Space parse_space(std::string_view text);

/// `multiplicity` consecutive chain entries equal to `value`.
struct MuRun {
  int value = 0;
  int multiplicity = 1;

  friend bool operator==(const MuRun&, const MuRun&) = default;
};

/// Stationary state (n, l, {mu}) of the D-dimensional isotropic oscillator
/// V(r) = lambda^2 r^2 / 2. The chain mu_1 = l >= mu_2 >= ... >= |mu_{D-1}|
/// is run-length encoded so that very large D costs O(number of runs).
struct HarmonicState {
  int dimension = 3;
  double lambda = 1.0;
  int n = 0;
  std::vector<MuRun> mu_runs;

  int l() const;
  /// Signed final chain entry mu_{D-1}.
  int m() const;
  /// Laguerre parameter l + D/2 - 1.
  double alpha() const;

  friend bool operator==(const HarmonicState&, const HarmonicState&) = default;
};

/// Throws StateError naming the first offending chain entry.
void validate(const HarmonicState& state);

/// E = lambda (2n + l + D/2).
double energy(const HarmonicState& state);

/// Radial density rho_{n,l}(r) (position) or gamma_{n,l}(p) (momentum), both
/// normalized against r^{D-1} dr. The momentum density is the position one
/// with lambda replaced by 1/lambda.
LogValue radial_density(const HarmonicState& state, double r, Space space);

struct MuFamily {
  int boundary_index;  // k_i: last chain position of the family
  int size;            // M_i
};

struct MuFamilies {
  std::vector<MuFamily> families;
  int count() const { return static_cast<int>(families.size()); }
};

/// Family (run) decomposition exactly as encoded.
MuFamilies mu_families(const HarmonicState& state);

/// Chain with mu_{D-1} replaced by |mu_{D-1}| and equal neighbours merged;
/// this is the chain the angular integrals see.
std::vector<MuRun> effective_runs(const HarmonicState& state);

std::vector<int> expand_chain(const std::vector<MuRun>& runs);
std::vector<MuRun> encode_chain(const std::vector<int>& chain);

/// Convenience builders.
HarmonicState ground_state(int dimension, double lambda = 1.0);
HarmonicState ns_state(int dimension, int n, double lambda = 1.0);
HarmonicState circular_state(int dimension, int n, double lambda = 1.0);
/// Chain (l, 0, ..., 0) (or all zero when l = 0).
HarmonicState single_step_state(int dimension, int n, int l, double lambda = 1.0);

// Text form: "D=5;lambda=1;n=0;mu=2^2,1^1,0^1". Whitespace is ignored, a
// bare value means multiplicity 1, and "v^*" fills the rest of the chain.

/// A state whose dimension may still be open (for grids over D).
struct StateTemplate {
  std::optional<int> dimension;
  double lambda = 1.0;
  int n = 0;
  std::vector<MuRun> runs;     // multiplicity -1 marks the fill run
  HarmonicState instantiate(int dimension) const;
  HarmonicState instantiate() const;
};

StateTemplate parse_state_template(std::string_view text);
HarmonicState parse_state(std::string_view text);
std::string format_state(const HarmonicState& state);

}  // namespace hdosc
