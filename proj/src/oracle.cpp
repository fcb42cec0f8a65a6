#include "casimir/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "casimir/summation.hpp"

namespace casimir::oracle {

namespace {

constexpr double kRelativeTarget = 1e-17;
constexpr std::size_t kMaxTerms = 10'000'000;

// Direct sum up to N with the Euler-Maclaurin tail of sum_{n>N} n^-3.
OracleValue zeta3_series() {
  constexpr std::size_t N = 100;
  CompensatedSum s;
  for (std::size_t n = N; n >= 1; --n) {
    const double d = static_cast<double>(n);
    s.add(1.0 / (d * d * d));
  }
  const double d = static_cast<double>(N);
  const double d2 = d * d;
  s.add(1.0 / (2.0 * d2) - 1.0 / (2.0 * d2 * d) + 1.0 / (4.0 * d2 * d2) - 1.0 / (12.0 * d2 * d2 * d2));
  return {s.value(), N, 1.0 / (12.0 * d2 * d2 * d2 * d2)};
}

// Expansion about x = 1 in mu = ln x < 0:
//   Li_3(e^mu) = sum_{k != 2} zeta(3-k) mu^k / k! + (mu^2 / 2)(3/2 - ln(-mu))
OracleValue trilog_near_one(double x) {
  const double mu = std::log(x);
  const double zeta3 = zeta3_series().value;
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  // zeta(3-k) for k = 3..8: zeta(0), zeta(-1), ..., zeta(-5).
  constexpr double zneg[] = {-0.5, -1.0 / 12.0, 0.0, 1.0 / 120.0, 0.0, -1.0 / 252.0};
  double value = zeta3 + zeta2 * mu + 0.5 * mu * mu * (1.5 - std::log(-mu));
  double p = mu * mu;
  double fact = 2.0;
  for (int k = 3; k <= 8; ++k) {
    p *= mu;
    fact *= k;
    value += zneg[k - 3] * p / fact;
  }
  // Next nonzero coefficient: zeta(-7) = 1/240 at k = 10.
  const double bound = std::pow(-mu, 10) / (240.0 * 3628800.0);
  return {value, 9, bound};
}

}  // namespace

OracleValue trilog(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("trilog: argument must lie in [0, 1]");
  if (x == 0.0) return {0.0, 0, 0.0};
  if (x == 1.0) return zeta3_series();
  if (x > 0.999) return trilog_near_one(x);

  CompensatedSum s;
  double power = 1.0;
  std::size_t n = 0;
  double bound = 0.0;
  while (n < kMaxTerms) {
    ++n;
    power *= x;
    const double d = static_cast<double>(n);
    s.add(power / (d * d * d));
    // sum_{k>n} x^k / k^3 <= x^{n+1} / ((n+1)^3 (1 - x))
    const double d1 = d + 1.0;
    bound = power * x / (d1 * d1 * d1 * (1.0 - x));
    if (bound <= kRelativeTarget * s.value()) break;
  }
  return {s.value(), n, bound};
}

OracleValue apery() { return zeta3_series(); }

double classical_ideal_term(const Geometry& geom) {
  geom.validate();
  return -constants::k_B * geom.T * geom.R * apery().value / (4.0 * geom.a * geom.a);
}

double drude_minus_neglected(const Geometry& geom, double eps_0_static) {
  geom.validate();
  if (!(eps_0_static > 1.0)) throw std::invalid_argument("drude_minus_neglected: eps_0 must exceed 1");
  const double r0 = (eps_0_static - 1.0) / (eps_0_static + 1.0);
  const double pref = constants::k_B * geom.T * geom.R / (8.0 * geom.a * geom.a);
  return pref * (apery().value - trilog(r0 * r0).value);
}

}  // namespace casimir::oracle
