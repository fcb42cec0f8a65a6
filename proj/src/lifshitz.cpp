#include "casimir/lifshitz.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>

#include "casimir/errors.hpp"
#include "casimir/summation.hpp"

namespace casimir {

namespace {

// ln(1 - r^2 e^-y), written so that neither branch cancels.
double log_one_minus(double r, double y) {
  const double r2 = r * r;
  const double x = r2 * std::exp(-y);
  if (x < 0.5) return std::log1p(-x);
  const double q = (1.0 - r2) - r2 * std::expm1(-y);
  if (!(q > 0.0))
    throw std::logic_error("reflection product r^2 e^-y reached 1 at y = " + std::to_string(y));
  return std::log(q);
}

struct PolarizationLogs {
  double tm;
  double te;
};

PolarizationLogs logs_at(std::size_t l, double zeta, double y, const ReflectionSource& source) {
  const ReflectionPair r = source.at(l, zeta, y);
  return {y * log_one_minus(r.r_tm, y), y * log_one_minus(r.r_te, y)};
}

// Upper bound on both polarizations' integrals over [y_cut, inf), using r^2 <= 1.
double tail_bound(double y_cut) {
  const double decay = std::exp(-y_cut);
  return 2.0 * (y_cut + 1.0) * decay / (1.0 - decay);
}

// Ratio bound for term(L+1)/term(L); >= 1 means no usable bound yet.
double tail_ratio(std::size_t l, const Geometry& geom) {
  const double z0 = matsubara_zeta(l, geom);
  const double z1 = matsubara_zeta(l + 1, geom);
  return std::exp(-(z1 - z0)) * (z1 + 1.0) / (z0 + 1.0);
}

QuadratureOptions quadrature_options(const EngineConfig& cfg, double abs_tol) {
  return {abs_tol, cfg.rel_tol, cfg.max_intervals, cfg.quadrature_rule};
}

void require_converged(const QuadratureResult& q, std::size_t l, const char* what) {
  if (!q.converged)
    throw ConvergenceError(std::string("quadrature did not converge for ") + what + " term l=" + std::to_string(l) +
                               " (error estimate " + std::to_string(q.error) + ")",
                           q.error, l);
}

void validate_for_sum(const Geometry& geom) {
  geom.validate();
  if (!(geom.T > 0.0)) throw std::invalid_argument("Matsubara summation requires T > 0");
}

// Truncation gets 1% of the relative error budget; the rest is left to quadrature.
constexpr double kTruncationShare = 0.01;

// Stopping test shared by the force and difference sums.
struct TailCheck {
  bool stop = false;
  double bound = std::numeric_limits<double>::infinity();
};

TailCheck check_tail(std::size_t l, double weighted_term, double partial, const Geometry& geom, double rel_tol) {
  TailCheck out;
  if (l == 0) return out;
  const double q = tail_ratio(l, geom);
  if (q < 1.0) out.bound = std::abs(weighted_term) * q / (1.0 - q);
  const double target = kTruncationShare * rel_tol * std::abs(partial);
  out.stop = std::abs(weighted_term) <= target && out.bound <= target;
  return out;
}

}  // namespace

void EngineConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-4)) throw std::invalid_argument("rel_tol must lie in (0, 1e-4]");
  if (!(y_tail_cut >= 30.0)) throw std::invalid_argument("y_tail_cut must be >= 30");
  if (l_max_hard < 1) throw std::invalid_argument("l_max_hard must be >= 1");
  if (max_intervals < 1) throw std::invalid_argument("max_intervals must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

double ForceResult::rel_err_est() const {
  if (magnitude == 0.0) return 0.0;
  double quad = 0.0;
  for (const auto& t : terms) quad += t.weight * t.quadrature_error_estimate;
  return (quad + truncation_bound) / magnitude;
}

MaterialResponse::MaterialResponse(const MaterialModel& model, const Geometry& geom)
    : model_(model), geom_(geom), omega_c_(characteristic_frequency(geom)) {}

ReflectionPair MaterialResponse::at(std::size_t l, double zeta, double y) const {
  if (l == 0) return zero_frequency(y, model_, geom_);
  return fresnel(zeta, y, eps_model(l, zeta, omega_c_, model_));
}

double force_prefactor(const Geometry& geom) {
  return constants::k_B * geom.T * geom.R / (4.0 * geom.a * geom.a);
}

double integrand(std::size_t l, double zeta, double y, const ReflectionSource& source) {
  const auto logs = logs_at(l, zeta, y, source);
  return logs.tm + logs.te;
}

double integrand(std::size_t l, double zeta, double y, const MaterialModel& model, const Geometry& geom) {
  return integrand(l, zeta, y, MaterialResponse(model, geom));
}

TermBreakdown matsubara_term(std::size_t l, const ReflectionSource& source, const Geometry& geom,
                             const EngineConfig& cfg) {
  const MatsubaraPoint pt = matsubara_point(l, geom);
  const double zeta = pt.zeta;
  const double cut = cfg.y_tail_cut;

  const auto tm = integrate([&](double t) { return logs_at(l, zeta, t + zeta, source).tm; }, 0.0, cut,
                            quadrature_options(cfg, 0.0));
  require_converged(tm, l, "TM");
  const auto te = integrate([&](double t) { return logs_at(l, zeta, t + zeta, source).te; }, 0.0, cut,
                            quadrature_options(cfg, 0.01 * cfg.rel_tol * std::abs(tm.value)));
  require_converged(te, l, "TE");

  const double pref = force_prefactor(geom);
  TermBreakdown out;
  out.l = l;
  out.zeta = zeta;
  out.weight = pt.weight;
  out.tm_contribution = pref * tm.value;
  out.te_contribution = pref * te.value;
  out.quadrature_error_estimate = pref * (tm.error + te.error + tail_bound(zeta + cut));
  return out;
}

TermBreakdown matsubara_term(std::size_t l, const MaterialModel& model, const Geometry& geom,
                             const EngineConfig& cfg) {
  return matsubara_term(l, MaterialResponse(model, geom), geom, cfg);
}

ForceResult casimir_force(const ReflectionSource& source, const Geometry& geom, const EngineConfig& cfg) {
  cfg.validate();
  validate_for_sum(geom);

  ForceResult result;
  CompensatedSum sum;
  const std::size_t batch = cfg.threads;
  std::size_t next = 0;

  while (next <= cfg.l_max_hard) {
    // Terms are evaluated in batches (concurrently when threads > 1) but
    // reduced strictly in ascending l, so the result does not depend on the
    // thread count.
    std::vector<TermBreakdown> chunk;
    const std::size_t end = std::min(next + batch, cfg.l_max_hard + 1);
    if (batch == 1) {
      chunk.push_back(matsubara_term(next, source, geom, cfg));
    } else {
      std::vector<std::future<TermBreakdown>> pending;
      for (std::size_t l = next; l < end; ++l)
        pending.push_back(std::async(std::launch::async, [&, l] { return matsubara_term(l, source, geom, cfg); }));
      for (auto& f : pending) chunk.push_back(f.get());
    }

    for (auto& term : chunk) {
      sum.add(term.weighted());
      result.terms.push_back(term);
      const TailCheck tail = check_tail(term.l, term.weighted(), sum.value(), geom, cfg.rel_tol);
      if (tail.stop) {
        result.force = sum.value();
        result.magnitude = std::abs(result.force);
        result.l_used = term.l;
        result.truncation_bound = tail.bound;
        result.converged = true;
        return result;
      }
    }
    next = end;
  }

  throw ConvergenceError("Matsubara sum not converged after l_max_hard=" + std::to_string(cfg.l_max_hard) +
                             " terms (partial force " + std::to_string(sum.value()) + " N)",
                         std::abs(result.terms.back().weighted()), cfg.l_max_hard);
}

ForceResult casimir_force(const MaterialModel& model, const Geometry& geom, const EngineConfig& cfg) {
  return casimir_force(MaterialResponse(model, geom), geom, cfg);
}

double model_difference(const MaterialModel& model_a, const MaterialModel& model_b, const Geometry& geom,
                        const EngineConfig& cfg) {
  cfg.validate();
  validate_for_sum(geom);
  const auto& oa = oscillator_of(model_a);
  const auto& ob = oscillator_of(model_b);
  if (oa.eps_inf != ob.eps_inf || oa.eps_0 != ob.eps_0 || oa.omega_0 != ob.omega_0)
    throw std::invalid_argument("model_difference: models must share the oscillator core");

  const MaterialResponse ra(model_a, geom);
  const MaterialResponse rb(model_b, geom);
  CompensatedSum sum;
  for (std::size_t l = 0; l <= cfg.l_max_hard; ++l) {
    const MatsubaraPoint pt = matsubara_point(l, geom);
    const double zeta = pt.zeta;
    auto diff = [&](double t) {
      const double y = t + zeta;
      return integrand(l, zeta, y, ra) - integrand(l, zeta, y, rb);
    };
    const auto q = integrate(diff, 0.0, cfg.y_tail_cut, quadrature_options(cfg, 0.01 * cfg.rel_tol * std::abs(sum.value())));
    require_converged(q, l, "difference");
    const double weighted = pt.weight * q.value;
    sum.add(weighted);
    if (check_tail(l, weighted, sum.value(), geom, cfg.rel_tol).stop) return -force_prefactor(geom) * sum.value();
  }
  throw ConvergenceError("model difference not converged after l_max_hard=" + std::to_string(cfg.l_max_hard),
                         0.0, cfg.l_max_hard);
}

}  // namespace casimir
