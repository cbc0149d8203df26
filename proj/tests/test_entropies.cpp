#include <cmath>
#include <random>

#include "doctest.h"
#include "hdosc/errors.hpp"
#include "hdosc/entropies.hpp"
#include "hdosc/specfun.hpp"

using namespace hdosc;

namespace {

const double kLogPi = std::log(M_PI);

double sphere_log_area(int d) { return std::log(2.0) + 0.5 * d * kLogPi - std::lgamma(0.5 * d); }

// Radial W_q of the ground state: (2 lambda^{D/2} / Gamma(D/2))^q Gamma(D/2) / (2 (q lambda)^{D/2}).
double ground_log_w(int d, double lam, double q) {
  return q * (std::log(2.0) + 0.5 * d * std::log(lam) - std::lgamma(0.5 * d)) + std::lgamma(0.5 * d) -
         std::log(2.0) - 0.5 * d * std::log(q * lam);
}

// Chain-by-chain products, one factor per chain position.
double brute_m_tilde(const HarmonicState& s, double q) {
  std::vector<int> chain;
  for (const auto& r : effective_runs(s)) chain.insert(chain.end(), r.multiplicity, r.value);
  const int d = s.dimension;
  double acc = q * (s.l() - std::abs(s.m())) * std::log(4.0) + (1.0 - 0.5 * d) * kLogPi;
  for (int j = 1; j <= d - 2; ++j) {
    const int jump = chain[j - 1] - chain[j];
    acc += std::lgamma(q * jump + 0.5) - q * std::lgamma(jump + 1.0);
  }
  return acc;
}

double brute_e_tilde(const HarmonicState& s) {
  std::vector<int> chain;
  for (const auto& r : effective_runs(s)) chain.insert(chain.end(), r.multiplicity, r.value);
  const int d = s.dimension;
  double acc = 0.0;
  for (int j = 1; j <= d - 2; ++j) {
    const int jump = chain[j - 1] - chain[j];
    const double b = 0.5 * (d - j - 1) + chain[j];
    for (int i = 0; i < jump; ++i) acc += 2.0 * std::log(b) - std::log(2.0 * b + i) - std::log(b + i);
  }
  return acc;
}

}  // namespace

TEST_CASE("radial entropic moment of the ground state") {
  for (int d : {2, 3, 12, 200}) {
    for (double lam : {0.5, 2.0}) {
      for (double q : {0.5, 1.0, 2.0, 3.5}) {
        for (Space sp : {Space::position, Space::momentum}) {
          const double eff = sp == Space::position ? lam : 1.0 / lam;
          const double v = entropic_moment_radial(ground_state(d, lam), q, sp).log_mag;
          CHECK(v == doctest::Approx(ground_log_w(d, eff, q)).epsilon(1e-10));
        }
      }
    }
  }
  CHECK(std::fabs(entropic_moment_radial(single_step_state(9, 2, 1, 1.4), 1.0, Space::position).log_mag) < 1e-10);
}

TEST_CASE("radial entropic moment against a dense trapezoid oracle") {
  // n = 1, l = 0, D = 4, lambda = 1, q = 2: rho = 2 e^{-r^2} (2 - r^2)^2 / 2 with L_1^{(1)}(x) = 2 - x
  const int points = 1000000;
  const double hi = 12.0;
  const double h = hi / points;
  double sum = 0.0;
  for (int i = 1; i <= points; ++i) {
    const double r = i * h;
    const double lag = 2.0 - r * r;
    const double rho = 2.0 * 1.0 / std::tgamma(3.0) * std::exp(-r * r) * lag * lag;
    sum += (i == points ? 0.5 : 1.0) * rho * rho * r * r * r;
  }
  const double oracle = sum * h;
  const LogValue w = entropic_moment_radial(single_step_state(4, 1, 0), 2.0, Space::position);
  CHECK(w.to_double() == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("radial Renyi asymptotics approach the exact value") {
  double prev = 1e300;
  for (int d : {100, 1000, 10000}) {
    const HarmonicState s = ground_state(d);
    const double diff = std::fabs(renyi_radial(s, 2.0, Space::position, Mode::exact).value -
                                  renyi_radial(s, 2.0, Space::position, Mode::asymptotic).value) /
                        d;
    CHECK(diff < prev);
    prev = diff;
  }
}

TEST_CASE("angular entropy of uniform states is the log sphere area") {
  for (int d : {2, 3, 10, 50, 1000}) {
    for (double q : {0.3, 0.5, 2.0, 7.0}) {
      CHECK(renyi_angular(ns_state(d, 2), q, Mode::exact).value == doctest::Approx(sphere_log_area(d)).epsilon(1e-12));
    }
    CHECK(shannon(ns_state(d, 1), Space::position, Mode::exact).angular_part ==
          doctest::Approx(sphere_log_area(d)).epsilon(1e-12));
  }
}

TEST_CASE("closed-form runs agree with factor-by-factor quadrature") {
  const std::vector<HarmonicState> states = {
      HarmonicState{6, 1.0, 0, {{2, 3}, {1, 1}, {0, 1}}},
      HarmonicState{5, 1.0, 1, {{3, 3}, {-1, 1}}},
      circular_state(8, 3),
      single_step_state(12, 0, 2),
  };
  for (const auto& s : states) {
    for (double q : {0.6, 2.0, 3.0}) {
      const double a = angular_entropic_moment(s, q).log_mag;
      const double b = angular_entropic_moment(s, q, QuadratureSpec::defaults(), true).log_mag;
      CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
  }
}

TEST_CASE("circular state closed forms") {
  for (int n : {2, 3}) {
    for (int d : {5, 9}) {
      for (double q : {0.5, 2.0}) {
        const double exact = renyi_angular(circular_state(d, n), q, Mode::exact).value;
        const double half = 0.5 * d - 1.0;
        // (1/(1-q)) ln[(2 pi^{D/2})^{1-q} ((n)_{D/2-1})^q / (1 + q(n-1))_{D/2-1}]
        const double first = std::log(2.0) + 0.5 * d * kLogPi +
                             (q * specfun::log_pochhammer(n, half) - specfun::log_pochhammer(1.0 + q * (n - 1), half)) /
                                 (1.0 - q);
        const double second = (q * std::lgamma(half + n) - std::lgamma(0.5 * d + q * (n - 1))) / (1.0 - q) +
                               0.5 * d * kLogPi +
                               (std::lgamma(1.0 + q * (n - 1)) - q * std::lgamma(n)) / (1.0 - q);
        CHECK(exact == doctest::Approx(first).epsilon(1e-10));
        // the simplified line drops the sphere's factor 2
        CHECK(first - second == doctest::Approx(std::log(2.0)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("angular correction factors") {
  // all-equal chains
  for (const auto& s : {circular_state(20, 4), ns_state(20, 1), HarmonicState{5, 1.0, 0, {{2, 3}, {-2, 1}}}}) {
    CHECK(std::fabs(m_tilde(s, 2.0).log_mag) < 1e-14);
    CHECK(std::fabs(e_tilde(s).value.log_mag) < 1e-14);
  }
  // chain-by-chain oracle
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    const int d = 3 + static_cast<int>(rng() % 28);
    std::vector<int> chain(d - 1);
    int v = static_cast<int>(rng() % 5);
    for (int j = 0; j < d - 1; ++j) {
      if (rng() % 4 == 0 && v > 0) v -= 1 + static_cast<int>(rng() % v);
      chain[j] = v;
    }
    const HarmonicState s{d, 1.0, 0, encode_chain(chain)};
    for (double q : {0.5, 2.0, 3.0}) CHECK(m_tilde(s, q).log_mag == doctest::Approx(brute_m_tilde(s, q)).epsilon(1e-12));
    CHECK(e_tilde(s).value.log_mag == doctest::Approx(brute_e_tilde(s)).epsilon(1e-12));
    CHECK(e_tilde(s).predicted_growth_exponent == chain.front() - chain.back());
  }
}

TEST_CASE("e_tilde stays bounded as D grows") {
  // each transition of height k tends to 2^{-k}, so e_tilde approaches 2^{-(l - m)}
  for (int l : {1, 2, 3}) {
    const double v = e_tilde(single_step_state(1000000, 0, l)).value.log_mag;
    CHECK(v == doctest::Approx(-l * std::log(2.0)).epsilon(1e-4));
  }
}

TEST_CASE("angular expansion constant for uniform states") {
  // exact minus expansion tends to -(1/2) ln pi
  const double diff = renyi_angular(ns_state(100000, 1), 2.0, Mode::exact).value -
                      renyi_angular(ns_state(100000, 1), 2.0, Mode::asymptotic).value;
  CHECK(diff == doctest::Approx(-0.5 * kLogPi).epsilon(1e-4));
}

TEST_CASE("total Renyi entropy of the ground state") {
  for (int d : {3, 7, 15}) {
    for (double lam : {0.5, 1.0, 2.0}) {
      for (double q : {0.5, 2.0, 3.0}) {
        const double expect = 0.5 * d * std::log(q_power_factor(q) * M_PI / lam);
        CHECK(renyi_total(ground_state(d, lam), q, Space::position, Mode::exact).value ==
              doctest::Approx(expect).epsilon(1e-10));
      }
    }
  }
  CHECK(renyi_total(ground_state(3), 2.0, Space::position, Mode::exact).value ==
        doctest::Approx(1.5 * std::log(2 * M_PI)).epsilon(1e-12));
}

TEST_CASE("decomposition into radial and angular parts") {
  const HarmonicState s{7, 1.2, 1, {{2, 2}, {1, 3}, {-1, 1}}};
  for (Mode mode : {Mode::exact, Mode::asymptotic}) {
    const EntropyResult r = renyi_total(s, 2.5, Space::momentum, mode);
    CHECK(r.value == doctest::Approx(r.radial_part + r.angular_part).epsilon(1e-12));
  }
}

TEST_CASE("momentum shift identity") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 10; ++rep) {
    const int d = 2 + static_cast<int>(rng() % 20);
    const HarmonicState s = single_step_state(d, static_cast<int>(rng() % 3), static_cast<int>(rng() % 3),
                                              0.2 + 0.3 * static_cast<double>(rng() % 10));
    for (double q : {0.4, 1.0, 2.0, 3.3}) {
      const double pos = renyi_total(s, q, Space::position, Mode::exact).value;
      const double mom = renyi_total(s, q, Space::momentum, Mode::exact).value;
      CHECK(mom - pos == doctest::Approx(d * std::log(s.lambda)).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("Renyi entropy is non-increasing in q") {
  for (const auto& s : {single_step_state(5, 1, 1), single_step_state(30, 2, 0), ground_state(8)}) {
    double prev = 1e300;
    for (double q : {0.5, 0.8, 1.2, 2.0, 3.0, 5.0}) {
      const double v = renyi_total(s, q, Space::position, Mode::exact).value;
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("Shannon entropy") {
  CHECK(shannon(ground_state(2), Space::position, Mode::exact).value == doctest::Approx(1.0 + kLogPi).epsilon(1e-10));
  for (const auto& s : {single_step_state(3, 1, 1), single_step_state(6, 2, 0), single_step_state(4, 0, 3)}) {
    const double sh = shannon(s, Space::position, Mode::exact).value;
    CHECK(std::fabs(sh - renyi_total(s, 1.0 + 1e-4, Space::position, Mode::exact).value) <= 1e-3);
    CHECK(std::fabs(sh - renyi_total(s, 1.0 - 1e-4, Space::position, Mode::exact).value) <= 1e-3);
    // q within the routing width is the Shannon value itself
    CHECK(renyi_total(s, 1.0 + 1e-7, Space::position, Mode::exact).value == doctest::Approx(sh).epsilon(1e-12));
  }
  const EntropyResult c = shannon(ground_state(10, 2.0), Space::position, Mode::asymptotic);
  CHECK(c.conjecture);
  CHECK(c.value == doctest::Approx(5.0 * std::log(M_E * M_PI / 2.0)).epsilon(1e-12));
}

TEST_CASE("Shannon conjecture trend") {
  for (const auto& pair : {std::pair{1, 1}, std::pair{2, 0}}) {
    auto gap = [&](int d) {
      const HarmonicState s = single_step_state(d, pair.first, pair.second);
      return std::fabs(shannon(s, Space::position, Mode::exact).value -
                       shannon(s, Space::position, Mode::asymptotic).value) /
             d;
    };
    CHECK(gap(1000) < gap(100));
  }
}

TEST_CASE("closed total expansion differs from the sum of parts by a constant") {
  for (const auto& make : {+[](int d) { return ground_state(d); }, +[](int d) { return single_step_state(d, 1, 1); }}) {
    std::vector<double> offsets;
    for (int d : {100, 1000, 10000}) {
      const HarmonicState s = make(d);
      offsets.push_back(renyi_total(s, 2.0, Space::position, Mode::asymptotic).value -
                        renyi_total_closed_form(s, 2.0, Space::position).total_log);
    }
    CHECK(offsets[1] == doctest::Approx(offsets[0]).epsilon(1e-9));
    CHECK(offsets[2] == doctest::Approx(offsets[0]).epsilon(1e-9));
    CHECK(std::fabs(offsets[0]) == doctest::Approx(std::log(2.0) + 0.5 * kLogPi).epsilon(1e-9));
  }
}

TEST_CASE("Tsallis entropy") {
  CHECK(tsallis_from_renyi(0.0, 2.0) == 0.0);
  CHECK(tsallis_from_renyi(std::log(2.0), 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(tsallis_from_renyi(0.7, 1.0) == doctest::Approx(0.7));
}

TEST_CASE("disequilibrium") {
  CHECK(disequilibrium(ground_state(2), Space::position) == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-10));
  CHECK(disequilibrium(ground_state(2), Space::position, DisequilibriumConvention::printed) ==
        doctest::Approx(2.0 * M_PI).epsilon(1e-10));
}

TEST_CASE("conjugate exponent") {
  CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(conjugate_exponent(1.0) == doctest::Approx(1.0));
  CHECK(conjugate_exponent(0.75) == doctest::Approx(1.5));
  CHECK_THROWS_AS(conjugate_exponent(0.5), DomainError);
  CHECK_THROWS_AS(conjugate_exponent(0.2), DomainError);
}

TEST_CASE("uncertainty sums") {
  for (int d : {2, 3, 20, 300}) {
    for (double q : {0.75, 2.0, 4.0}) {
      const UncertaintyReport r = uncertainty_sum(ground_state(d, 1.7), q);
      CHECK(std::fabs(r.renyi_slack) < 1e-9);
      CHECK(std::fabs(r.shannon_slack) < 1e-8);
    }
  }
  const UncertaintyReport three = uncertainty_sum(ground_state(3, 4.2), 2.0);
  CHECK(three.shannon_sum == doctest::Approx(3.0 * (1.0 + kLogPi)).epsilon(1e-10));

  double prev = 1e300;
  for (int d : {50, 100, 200}) {
    const UncertaintyReport r = uncertainty_sum(single_step_state(d, 1, 0), 2.0);
    CHECK(r.p == doctest::Approx(2.0 / 3.0));
    CHECK(r.renyi_slack > 0.0);
    CHECK(r.renyi_slack / d < prev);
    prev = r.renyi_slack / d;
  }
}

TEST_CASE("uncertainty sums hold on random states and do not depend on lambda") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 12; ++rep) {
    const int d = 2 + static_cast<int>(rng() % 40);
    const int n = static_cast<int>(rng() % 3);
    const int l = static_cast<int>(rng() % 4);
    const double q = 0.6 + 0.4 * static_cast<double>(rng() % 8);
    const UncertaintyReport base = uncertainty_sum(single_step_state(d, n, l, 1.0), q);
    CHECK(base.renyi_slack >= -1e-9);
    CHECK(base.shannon_slack >= -1e-9);
    for (double lam : {0.5, 2.0}) {
      const UncertaintyReport r = uncertainty_sum(single_step_state(d, n, l, lam), q);
      CHECK(r.sum_exact == doctest::Approx(base.sum_exact).epsilon(1e-9).scale(1.0));
      CHECK(r.shannon_sum == doctest::Approx(base.shannon_sum).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(renyi_total(ground_state(3), 0.0, Space::position, Mode::exact), DomainError);
  CHECK_THROWS_AS(renyi_angular(ground_state(3), -1.0, Mode::exact), DomainError);
}
