#pragma once

#include <functional>

namespace ofdmcr::quad {

struct Tolerance {
  double absolute = 0.0;
  double relative = 1e-10;
};

struct Result {
  double value = 0.0;
  double error = 0.0;  // Kronrod error estimate
  int evaluations = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. Endpoints are never
/// evaluated, so integrable endpoint singularities are tolerated.
Result integrate(const Integrand& f, double a, double b, Tolerance tol = {}, int max_intervals = 4000);

/// int_a^inf f(x) dx through x = a + t / (1 - t).
Result integrate_to_infinity(const Integrand& f, double a, Tolerance tol = {}, int max_intervals = 4000);

}  // namespace ofdmcr::quad
