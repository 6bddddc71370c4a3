#include "ofdmcr/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ofdmcr/error.hpp"
#include "ofdmcr/units.hpp"

namespace ofdmcr::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 200000;

// log of x^a e^{-x} / Gamma(a), the common prefactor of both expansions.
double log_prefactor(double a, double x) { return a * std::log(x) - x - log_gamma(a); }

double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return sum * std::exp(log_prefactor(a, x));
    }
  }
  throw NumericalError("regularized_gamma_p: series did not converge for a=" +
                       std::to_string(a) + " x=" + std::to_string(x));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x), x >= a + 1.
// Returns the fraction only; Q = fraction * x^a e^{-x} / Gamma(a).
double gamma_q_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("regularized_gamma_q: continued fraction did not converge for a=" +
                       std::to_string(a) + " x=" + std::to_string(x));
}

void require_gamma_args(double a, double x, const char* who) {
  if (!(a > 0.0) || !(x >= 0.0) || std::isnan(x)) {
    throw DomainError(std::string(who) + ": requires a > 0 and x >= 0");
  }
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: requires x > 0");
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double regularized_gamma_p(double a, double x) {
  require_gamma_args(a, x, "regularized_gamma_p");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_fraction(a, x) * std::exp(log_prefactor(a, x));
}

double regularized_gamma_q(double a, double x) {
  require_gamma_args(a, x, "regularized_gamma_q");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x) * std::exp(log_prefactor(a, x));
}

double gamma_density(double a, double x) {
  require_gamma_args(a, x, "gamma_density");
  if (x == 0.0) {
    if (a < 1.0) return std::numeric_limits<double>::infinity();
    return a == 1.0 ? 1.0 : 0.0;
  }
  return std::exp((a - 1.0) * std::log(x) - x - log_gamma(a));
}

double expint_e1(double x) {
  if (!(x > 0.0)) throw DomainError("expint_e1: requires x > 0");
  if (x <= 1.0) {
    // -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    double sum = 0.0;
    double fact = 1.0;
    for (int k = 1; k < 100; ++k) {
      fact *= x / k;
      const double term = fact / k;
      sum += (k % 2 == 1) ? term : -term;
      if (term < kEps * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(x) + sum;
  }
  return expint_e1_scaled(x) * std::exp(-x);
}

double expint_e1_scaled(double x) {
  if (!(x > 0.0)) throw DomainError("expint_e1_scaled: requires x > 0");
  if (std::isinf(x)) return 0.0;
  if (x <= 1.0) return std::exp(x) * expint_e1(x);
  // Lentz on E1(x) = e^{-x} / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("expint_e1_scaled: continued fraction did not converge");
}

IncompleteGamma upper_incomplete_gamma_checked(double a, double x) {
  if (!(a >= 0.0) || std::isnan(x)) throw DomainError("upper_incomplete_gamma: requires a >= 0");
  if (a == 0.0) {
    if (!(x > 0.0)) throw DomainError("upper_incomplete_gamma: a == 0 requires x > 0");
    return {expint_e1(x), false};
  }
  if (x < 0.0) throw DomainError("upper_incomplete_gamma: requires x >= 0");
  double log_value;
  if (x >= a + 1.0) {
    log_value = std::log(gamma_q_fraction(a, x)) + a * std::log(x) - x;
  } else {
    const double q = x == 0.0 ? 1.0 : 1.0 - gamma_p_series(a, x);
    log_value = log_gamma(a) + std::log(q);
  }
  if (log_value > std::log(std::numeric_limits<double>::max())) {
    return {std::numeric_limits<double>::infinity(), true};
  }
  return {std::exp(log_value), false};
}

double upper_incomplete_gamma(double a, double x) { return upper_incomplete_gamma_checked(a, x).value; }

double inverse_regularized_gamma_p(double a, double q) {
  if (!(a > 0.0)) throw DomainError("inverse_regularized_gamma_p: requires a > 0");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("inverse_regularized_gamma_p: requires 0 < q < 1");

  double lo = 1e-12;
  double hi = a + 10.0 * std::sqrt(a) + 50.0;
  while (regularized_gamma_p(a, lo) > q) {
    lo *= 1e-6;
    if (lo < 1e-300) throw NumericalError("inverse_regularized_gamma_p: lower bracket underflow");
  }
  while (regularized_gamma_p(a, hi) < q) {
    hi *= 2.0;
    if (std::isinf(hi)) throw NumericalError("inverse_regularized_gamma_p: upper bracket overflow");
  }

  // Bisection (geometric while the bracket spans decades) to relative width 1e-3.
  for (int i = 0; i < 4000 && hi - lo > 1e-3 * hi; ++i) {
    const double mid = hi > 4.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (regularized_gamma_p(a, mid) < q) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  // Newton in log x: d/dy P(a, e^y) = x * density(x).
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 100; ++i) {
    const double residual = regularized_gamma_p(a, x) - q;
    if (residual == 0.0) return x;
    if (residual < 0.0) {
      lo = std::max(lo, x);
    } else {
      hi = std::min(hi, x);
    }
    const double slope = x * gamma_density(a, x);
    double next = slope > 0.0 ? x * std::exp(-residual / slope) : 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-12 * x) return next;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  throw NumericalError("inverse_regularized_gamma_p: Newton refinement did not converge for a=" +
                       std::to_string(a) + " q=" + std::to_string(q));
}

double regularized_gamma_p_small_x(double a, double x) {
  require_gamma_args(a, x, "regularized_gamma_p_small_x");
  return std::exp(a * std::log(x) - std::log(a) - log_gamma(a));
}

double inverse_regularized_gamma_p_small_x(double a, double q) {
  if (!(a > 0.0) || !(q > 0.0)) throw DomainError("inverse_regularized_gamma_p_small_x: bad args");
  return std::exp((std::log(q) + std::log(a) + log_gamma(a)) / a);
}

QuadratureRule gcq_rule(int order) {
  if (order < 1) throw DomainError("gcq_rule: order must be >= 1");
  const double pi = std::numbers::pi;
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  // j runs so that the mapped nodes come out increasing.
  for (int k = 0; k < order; ++k) {
    const int j = order - k;  // 1-based Chebyshev index, t decreasing in j
    const double phi = (2.0 * j - 1.0) * pi / (2.0 * order);
    double fejer = 0.0;
    for (int m = 1; m <= order / 2; ++m) {
      fejer += std::cos(2.0 * m * phi) / (4.0 * m * m - 1.0);
    }
    const double w_t = 2.0 / order * (1.0 - 2.0 * fejer);
    const double theta = pi / 4.0 * (std::cos(phi) + 1.0);
    const double sec = 1.0 / std::cos(theta);
    rule.nodes[k] = std::tan(theta);
    rule.weights[k] = w_t * (pi / 4.0) * sec * sec;
  }
  return rule;
}

}  // namespace ofdmcr::specfun
