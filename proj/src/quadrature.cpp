#include "casimir/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace casimir {

namespace {

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

struct Trampoline {
  const std::function<double(double)>* f;
  std::exception_ptr error;
};

double call_through(double x, void* params) {
  auto* t = static_cast<Trampoline*>(params);
  if (t->error) return 0.0;
  try {
    return (*t->f)(x);
  } catch (...) {
    t->error = std::current_exception();
    return 0.0;
  }
}

int gsl_key(QuadratureRule rule) {
  switch (rule) {
    case QuadratureRule::gk15: return GSL_INTEG_GAUSS15;
    case QuadratureRule::gk21: return GSL_INTEG_GAUSS21;
    case QuadratureRule::gk31: return GSL_INTEG_GAUSS31;
    case QuadratureRule::gk41: return GSL_INTEG_GAUSS41;
    case QuadratureRule::gk51: return GSL_INTEG_GAUSS51;
    case QuadratureRule::gk61: return GSL_INTEG_GAUSS61;
  }
  return GSL_INTEG_GAUSS21;
}

constexpr QuadratureRule kRules[] = {QuadratureRule::gk15, QuadratureRule::gk21, QuadratureRule::gk31,
                                     QuadratureRule::gk41, QuadratureRule::gk51, QuadratureRule::gk61};

}  // namespace

std::string_view rule_name(QuadratureRule rule) {
  switch (rule) {
    case QuadratureRule::gk15: return "gk15";
    case QuadratureRule::gk21: return "gk21";
    case QuadratureRule::gk31: return "gk31";
    case QuadratureRule::gk41: return "gk41";
    case QuadratureRule::gk51: return "gk51";
    case QuadratureRule::gk61: return "gk61";
  }
  return "gk21";
}

QuadratureRule parse_rule(std::string_view name) {
  for (auto r : kRules)
    if (rule_name(r) == name) return r;
  throw std::invalid_argument("unknown quadrature rule '" + std::string(name) + "'");
}

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureOptions& opts) {
  static std::once_flag handler_off;
  std::call_once(handler_off, [] { gsl_set_error_handler_off(); });

  const std::size_t limit = std::max<std::size_t>(opts.max_intervals, 1);
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(gsl_integration_workspace_alloc(limit));
  if (!ws) throw std::bad_alloc();

  Trampoline t{&f, nullptr};
  gsl_function fn{&call_through, &t};
  QuadratureResult out;
  const int status = gsl_integration_qag(&fn, lo, hi, opts.abs_tol, opts.rel_tol, limit, gsl_key(opts.rule),
                                         ws.get(), &out.value, &out.error);
  if (t.error) std::rethrow_exception(t.error);

  const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(out.value));
  out.converged = status == GSL_SUCCESS || out.error <= target;
  return out;
}

}  // namespace casimir
