#pragma once

#include <cstddef>
#include <vector>

namespace ofdmcr::specfun {

/// log Gamma(x) for x > 0. Reentrant (does not touch signgam).
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
/// Series for x < a + 1, continued fraction for the complement otherwise.
double regularized_gamma_p(double a, double x);

/// Q(a, x) = 1 - P(a, x), computed without cancellation in the upper tail.
double regularized_gamma_q(double a, double x);

/// Density of Gamma(a, 1) at x, i.e. d/dx P(a, x).
double gamma_density(double a, double x);

struct IncompleteGamma {
  double value = 0.0;
  bool overflow = false;  // value saturated to +inf
};

/// Upper incomplete gamma Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt, a >= 0.
/// a == 0 is the exponential integral E1(x) and requires x > 0.
IncompleteGamma upper_incomplete_gamma_checked(double a, double x);
double upper_incomplete_gamma(double a, double x);

/// E1(x) = Gamma(0, x), x > 0.
double expint_e1(double x);

/// e^x E1(x); finite for every x > 0 (tends to 1/x as x grows).
double expint_e1_scaled(double x);

/// Solves P(a, x) = q for x, 0 < q < 1. Bracket, bisect to 1e-3 relative
/// width, then safeguarded Newton to relative 1e-12 in x.
/// Throws NumericalError if the iteration cap is hit.
double inverse_regularized_gamma_p(double a, double q);

/// Small-argument approximation P(a, x) ~ x^a / (a Gamma(a)), accurate only
/// as x -> 0. Diagnostic; the exact routines above are what the library uses.
double regularized_gamma_p_small_x(double a, double x);
double inverse_regularized_gamma_p_small_x(double a, double q);

/// Quadrature rule for int_0^inf g(s) ds.
struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, positive
  std::vector<double> weights;  // positive
  int order = 0;

  template <class G>
  double apply(G&& g) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) sum += weights[j] * g(nodes[j]);
    return sum;
  }
};

/// Chebyshev rule on the half line: first-kind Chebyshev nodes t_j on (-1, 1)
/// mapped through s = tan(pi/4 (t + 1)), with Fejer weights times the Jacobian.
QuadratureRule gcq_rule(int order);

}  // namespace ofdmcr::specfun
