#include "ofdmcr/fading.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ofdmcr/error.hpp"
#include "ofdmcr/quadrature.hpp"
#include "ofdmcr/specfun.hpp"

namespace ofdmcr {

void LinkParams::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string("LinkParams: ") + name + " > 0 violated");
    }
  };
  check(Pm, "Pm");
  check(Pn, "Pn");
  check(psi, "psi");
  check(eta, "eta");
}

namespace fading {
namespace {

// Past this B the two halves of the closed-form PDF cancel to ~1/B relative
// accuracy, so the density is taken from its defining integral instead.
constexpr double kPdfCrossover = 1e6;

double pdf_sinr_interference_integral(double x, const LinkParams& lp) {
  // f(x) = E[(Y + eta) f_lambda(x (Y + eta))], Y ~ Exp(mean Pn).
  auto g = [&](double y) {
    const double d = y + lp.eta;
    return d * pdf_lambda(x * d, lp) * std::exp(-y / lp.Pn) / lp.Pn;
  };
  return quad::integrate_to_infinity(g, 0.0, {0.0, 1e-10}).value;
}

}  // namespace

double adapted_power(double Pm, double psi, double h_mp) {
  if (!(h_mp > 0.0)) throw DomainError("adapted_power: h_mp > 0 violated");
  return std::min(Pm, psi / h_mp);
}

double cdf_lambda(double x, const LinkParams& lp) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return -std::expm1(-x / lp.Pm) + x / (lp.psi + x) * std::exp(-(x + lp.psi) / lp.Pm);
}

double sf_lambda(double x, const LinkParams& lp) {
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return std::exp(-x / lp.Pm) * (1.0 - x / (lp.psi + x) * std::exp(-lp.psi / lp.Pm));
}

double pdf_lambda(double x, const LinkParams& lp) {
  if (x < 0.0 || std::isinf(x)) return 0.0;
  const double s = lp.psi + x;
  return std::exp(-x / lp.Pm) / lp.Pm +
         std::exp(-s / lp.Pm) * (lp.psi / (s * s) - x / (s * lp.Pm));
}

double sf_sinr_interference(double x, const LinkParams& lp) {
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double c = -std::expm1(-lp.psi / lp.Pm);
  const double direct = c * std::exp(-x * lp.eta / lp.Pm) / (1.0 + x * lp.Pn / lp.Pm);
  // x B = (eta x + psi)(1/Pn + x/Pm)
  const double xB = (lp.eta * x + lp.psi) * (1.0 / lp.Pn + x / lp.Pm);
  const double B = xB / x;
  double scaled;  // (psi / (x Pn)) e^B E1(B)
  if (B > 1e8 || !std::isfinite(B)) {
    const double inv = 1.0 / B;
    scaled = lp.psi / (lp.Pn * xB) * (1.0 - inv + 2.0 * inv * inv);
  } else {
    scaled = lp.psi / (x * lp.Pn) * specfun::expint_e1_scaled(B);
  }
  return direct + scaled * std::exp(-(lp.psi + x * lp.eta) / lp.Pm);
}

double cdf_sinr_interference(double x, const LinkParams& lp) { return 1.0 - sf_sinr_interference(x, lp); }

double pdf_sinr_interference(double x, const LinkParams& lp) {
  if (x < 0.0) return 0.0;
  if (x == 0.0) return (lp.Pn + lp.eta) * pdf_lambda(0.0, lp);
  const double Pm = lp.Pm, Pn = lp.Pn, psi = lp.psi, eta = lp.eta;
  const double B = (eta + psi / x) * (1.0 / Pn + x / Pm);
  if (B > kPdfCrossover) return pdf_sinr_interference_integral(x, lp);

  const double c = -std::expm1(-psi / Pm);
  const double q = x * Pn + Pm;
  const double t1 = c * std::exp(-x * eta / Pm) * (x * eta * Pn + Pm * (eta + Pn)) / (q * q);

  const double dA = -psi / (x * x * Pn);
  const double dB = eta / Pm - psi / (x * x * Pn);
  const double G = specfun::expint_e1_scaled(B);
  const double t2 = (psi / Pn) * std::exp(-(psi + x * eta) / Pm) *
                    (G * (-1.0 / (x * x) + dA / x) - dB / (x * B));
  return std::max(0.0, t1 - t2);
}

double cdf_sinr_nointerference(double x, const LinkParams& lp) { return cdf_lambda(lp.eta * x, lp); }
double sf_sinr_nointerference(double x, const LinkParams& lp) { return sf_lambda(lp.eta * x, lp); }
double pdf_sinr_nointerference(double x, const LinkParams& lp) { return lp.eta * pdf_lambda(lp.eta * x, lp); }

Density capacity_pdf_transform(Density pdf_sinr) {
  return [pdf = std::move(pdf_sinr)](double u) {
    if (u < 0.0) return 0.0;
    const double s = std::expm1(u);
    if (!std::isfinite(s)) return 0.0;
    const double f = pdf(s);
    return f == 0.0 ? 0.0 : (1.0 + s) * f;
  };
}

double capacity_sf(const std::function<double(double)>& sf_sinr, double u) {
  if (u <= 0.0) return 1.0;
  const double s = std::expm1(u);
  if (!std::isfinite(s) || s > 1e300) return 0.0;
  return sf_sinr(s);
}

}  // namespace fading
}  // namespace ofdmcr
