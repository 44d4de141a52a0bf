#include "support/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace testsup {

namespace {

// Integrations nest (an outer integrand can itself integrate), and a GSL
// workspace must not be shared by two in-flight integrations, so each
// nesting depth gets its own workspace.
struct WorkspacePool {
  std::vector<gsl_integration_workspace*> pool;
  int depth = 0;
  WorkspacePool() { gsl_set_error_handler_off(); }
  ~WorkspacePool() {
    for (auto* ws : pool) gsl_integration_workspace_free(ws);
  }
};

thread_local WorkspacePool workspaces;

struct Lease {
  gsl_integration_workspace* ws;
  Lease() {
    if (workspaces.depth == static_cast<int>(workspaces.pool.size())) {
      workspaces.pool.push_back(gsl_integration_workspace_alloc(20000));
    }
    ws = workspaces.pool[workspaces.depth++];
  }
  ~Lease() { --workspaces.depth; }
};

double thunk(double x, void* params) {
  const auto* f = static_cast<const std::function<double(double)>*>(params);
  return (*f)(x);
}

double run(int which, const std::function<double(double)>& f, double a, double b,
           double epsabs, double epsrel) {
  Lease lease;
  gsl_function gf;
  gf.function = &thunk;
  gf.params = const_cast<void*>(static_cast<const void*>(&f));
  double result = 0.0, abserr = 0.0;
  int status = 0;
  switch (which) {
    case 0:
      status = gsl_integration_qags(&gf, a, b, epsabs, epsrel, 20000, lease.ws,
                                    &result, &abserr);
      if (status != 0) {
        // qags extrapolation misreads underflow cliffs as singularities;
        // the plain 61-point adaptive rule has no such failure mode.
        status = gsl_integration_qag(&gf, a, b, epsabs, epsrel, 20000,
                                     GSL_INTEG_GAUSS61, lease.ws, &result, &abserr);
      }
      break;
    case 1:
      status = gsl_integration_qagiu(&gf, a, epsabs, epsrel, 20000, lease.ws, &result,
                                     &abserr);
      break;
    case 2:
      status = gsl_integration_qagil(&gf, b, epsabs, epsrel, 20000, lease.ws, &result,
                                     &abserr);
      break;
    case 3:
      status =
          gsl_integration_qagi(&gf, epsabs, epsrel, 20000, lease.ws, &result, &abserr);
      break;
  }
  if (status != 0 && status != GSL_EROUND) {
    throw std::runtime_error("quadrature failed with status " + std::to_string(status));
  }
  return result;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double epsabs, double epsrel) {
  return run(0, f, a, b, epsabs, epsrel);
}

double integrate_to_inf(const std::function<double(double)>& f, double a, double epsabs,
                        double epsrel) {
  return run(1, f, a, 0.0, epsabs, epsrel);
}

double integrate_from_minus_inf(const std::function<double(double)>& f, double b,
                                double epsabs, double epsrel) {
  return run(2, f, 0.0, b, epsabs, epsrel);
}

double integrate_real_line(const std::function<double(double)>& f, double epsabs,
                           double epsrel) {
  return run(3, f, 0.0, 0.0, epsabs, epsrel);
}

}  // namespace testsup
