#include "hdosc/states.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hdosc/errors.hpp"
#include "hdosc/specfun.hpp"

namespace hdosc {

const char* to_string(Space s) { return s == Space::position ? "position" : "momentum"; }

Space parse_space(std::string_view text) {
  if (text == "position" || text == "r") return Space::position;
  if (text == "momentum" || text == "p") return Space::momentum;
  throw std::invalid_argument("unknown space '" + std::string(text) + "' (expected position|momentum)");
}

int HarmonicState::l() const { return mu_runs.empty() ? 0 : std::abs(mu_runs.front().value); }
int HarmonicState::m() const { return mu_runs.empty() ? 0 : mu_runs.back().value; }
double HarmonicState::alpha() const { return l() + 0.5 * dimension - 1.0; }

void validate(const HarmonicState& s) {
  if (s.dimension < 2) throw StateError("dimension must be >= 2", 0, 0, s.dimension);
  if (!(s.lambda > 0.0) || !std::isfinite(s.lambda)) {
    throw std::invalid_argument("oscillator strength lambda must be positive and finite");
  }
  if (s.n < 0) throw StateError("principal number n must be >= 0", 0, 0, s.n);
  if (s.mu_runs.empty()) throw StateError("empty mu chain", 1, 0, 0);

  long long total = 0;
  int position = 1;
  for (std::size_t i = 0; i < s.mu_runs.size(); ++i) {
    const MuRun& run = s.mu_runs[i];
    if (run.multiplicity < 1) {
      throw StateError("run multiplicity must be positive", position, 0, run.multiplicity);
    }
    const bool last = i + 1 == s.mu_runs.size();
    if (run.value < 0) {
      const bool allowed = last && run.multiplicity == 1 && (i > 0 || s.dimension == 2);
      if (!allowed) {
        throw StateError("only the final chain entry mu_{D-1} may be negative", position,
                         i > 0 ? s.mu_runs[i - 1].value : 0, run.value);
      }
    }
    if (i > 0) {
      const int prev = s.mu_runs[i - 1].value;
      if (run.value > prev) {
        std::ostringstream msg;
        msg << "mu chain must be non-increasing: mu_" << position - 1 << "=" << prev << " < mu_" << position
            << "=" << run.value;
        throw StateError(msg.str(), position - 1, prev, run.value);
      }
      if (run.value < 0 && -run.value > prev) {
        std::ostringstream msg;
        msg << "|mu_" << position << "|=" << -run.value << " exceeds mu_" << position - 1 << "=" << prev;
        throw StateError(msg.str(), position - 1, prev, run.value);
      }
    }
    total += run.multiplicity;
    position += run.multiplicity;
  }
  if (total != s.dimension - 1) {
    std::ostringstream msg;
    msg << "mu chain has " << total << " entries, expected D-1=" << s.dimension - 1;
    throw StateError(msg.str(), static_cast<int>(total), 0, s.dimension - 1);
  }
}

double energy(const HarmonicState& s) { return s.lambda * (2.0 * s.n + s.l() + 0.5 * s.dimension); }

LogValue radial_density(const HarmonicState& s, double r, Space space) {
  if (r < 0.0) throw DomainError("radial_density: r must be non-negative");
  const double lam = space == Space::position ? s.lambda : 1.0 / s.lambda;
  const int l = s.l();
  const double alpha = s.alpha();
  const double x = lam * r * r;
  // 2 n! lam^{l+D/2} / Gamma(n+l+D/2) * e^{-x} r^{2l} [L_n^alpha(x)]^2
  double log_rho = std::log(2.0) + specfun::log_factorial(s.n) + (l + 0.5 * s.dimension) * std::log(lam) -
                   specfun::log_gamma(s.n + alpha + 1.0) - x;
  if (l > 0) {
    if (r == 0.0) return LogValue::zero();
    log_rho += 2.0 * l * std::log(r);
  }
  const LogValue lag = specfun::laguerre_eval(s.n, alpha, x);
  if (lag.is_zero()) return LogValue::zero();
  return LogValue::from_log(log_rho + 2.0 * lag.log_mag);
}

MuFamilies mu_families(const HarmonicState& s) {
  MuFamilies out;
  int k = 0;
  for (const MuRun& run : s.mu_runs) {
    k += run.multiplicity;
    out.families.push_back({k, run.multiplicity});
  }
  return out;
}

std::vector<MuRun> effective_runs(const HarmonicState& s) {
  std::vector<MuRun> out;
  for (std::size_t i = 0; i < s.mu_runs.size(); ++i) {
    MuRun run = s.mu_runs[i];
    run.value = std::abs(run.value);
    if (!out.empty() && out.back().value == run.value) {
      out.back().multiplicity += run.multiplicity;
    } else {
      out.push_back(run);
    }
  }
  return out;
}

std::vector<int> expand_chain(const std::vector<MuRun>& runs) {
  std::vector<int> chain;
  for (const MuRun& run : runs) chain.insert(chain.end(), run.multiplicity, run.value);
  return chain;
}

std::vector<MuRun> encode_chain(const std::vector<int>& chain) {
  std::vector<MuRun> runs;
  for (int v : chain) {
    if (!runs.empty() && runs.back().value == v) {
      ++runs.back().multiplicity;
    } else {
      runs.push_back({v, 1});
    }
  }
  return runs;
}

HarmonicState ground_state(int dimension, double lambda) { return ns_state(dimension, 0, lambda); }

HarmonicState ns_state(int dimension, int n, double lambda) {
  return {dimension, lambda, n, {{0, dimension - 1}}};
}

HarmonicState circular_state(int dimension, int n, double lambda) {
  const int l = std::max(n - 1, 0);
  return {dimension, lambda, n, {{l, dimension - 1}}};
}

HarmonicState single_step_state(int dimension, int n, int l, double lambda) {
  if (l == 0 || dimension == 2) return {dimension, lambda, n, {{l, dimension - 1}}};
  return {dimension, lambda, n, {{l, 1}, {0, dimension - 2}}};
}

namespace {

std::string strip(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

int parse_int(const std::string& text, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::invalid_argument(std::string("state: bad integer for ") + what + ": '" + text + "'");
  }
  return v;
}

double parse_double(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::invalid_argument(std::string("state: bad number for ") + what + ": '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

StateTemplate parse_state_template(std::string_view raw) {
  const std::string text = strip(raw);
  StateTemplate t;
  bool have_mu = false;
  for (const std::string& field : split(text, ';')) {
    if (field.empty()) continue;
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("state: field without '=': '" + field + "'");
    const std::string key = field.substr(0, eq);
    const std::string val = field.substr(eq + 1);
    if (key == "D") {
      t.dimension = parse_int(val, "D");
    } else if (key == "lambda") {
      t.lambda = parse_double(val, "lambda");
    } else if (key == "n") {
      t.n = parse_int(val, "n");
    } else if (key == "mu") {
      have_mu = true;
      for (const std::string& item : split(val, ',')) {
        const auto caret = item.find('^');
        MuRun run;
        if (caret == std::string::npos) {
          run = {parse_int(item, "mu value"), 1};
        } else {
          const std::string mult = item.substr(caret + 1);
          run.value = parse_int(item.substr(0, caret), "mu value");
          run.multiplicity = mult == "*" ? -1 : parse_int(mult, "mu multiplicity");
        }
        t.runs.push_back(run);
      }
    } else {
      throw std::invalid_argument("state: unknown field '" + key + "'");
    }
  }
  if (!have_mu) throw std::invalid_argument("state: missing mu=...");
  int fills = 0;
  for (const MuRun& r : t.runs) fills += r.multiplicity == -1;
  if (fills > 1) throw std::invalid_argument("state: at most one '^*' run");
  return t;
}

HarmonicState StateTemplate::instantiate(int dim) const {
  HarmonicState s{dim, lambda, n, runs};
  int fixed = 0;
  for (const MuRun& r : runs) fixed += r.multiplicity == -1 ? 0 : r.multiplicity;
  for (MuRun& r : s.mu_runs) {
    if (r.multiplicity == -1) r.multiplicity = dim - 1 - fixed;
  }
  validate(s);
  return s;
}

HarmonicState StateTemplate::instantiate() const {
  if (!dimension) throw std::invalid_argument("state: missing D=...");
  return instantiate(*dimension);
}

HarmonicState parse_state(std::string_view text) { return parse_state_template(text).instantiate(); }

std::string format_state(const HarmonicState& s) {
  char lam[64];
  std::snprintf(lam, sizeof lam, "%.17g", s.lambda);
  std::ostringstream out;
  out << "D=" << s.dimension << ";lambda=" << lam << ";n=" << s.n << ";mu=";
  for (std::size_t i = 0; i < s.mu_runs.size(); ++i) {
    if (i) out << ',';
    out << s.mu_runs[i].value << '^' << s.mu_runs[i].multiplicity;
  }
  return out.str();
}

}  // namespace hdosc
