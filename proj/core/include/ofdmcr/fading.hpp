#pragma once

#include <functional>

namespace ofdmcr {

/// Powers of one SU/PU subcarrier link, all linear watts.
struct LinkParams {
  double Pm = 1.0;   // SU peak transmit power
  double Pn = 1.0;   // PU transmit power (interference source)
  double psi = 1.0;  // interference temperature
  double eta = 1.0;  // noise variance

  /// Throws DomainError unless every field is positive and finite.
  void validate() const;
};

using Density = std::function<double(double)>;

namespace fading {

/// min{Pm, psi / h_mp}.
double adapted_power(double Pm, double psi, double h_mp);

// Received power lambda = min{Pm, psi/h_mp} h_m with unit-mean exponential gains.
double cdf_lambda(double x, const LinkParams& lp);
double sf_lambda(double x, const LinkParams& lp);
double pdf_lambda(double x, const LinkParams& lp);

// SINR on a subcarrier shared with a PU: lambda / (Pn g + eta).
double cdf_sinr_interference(double x, const LinkParams& lp);
double sf_sinr_interference(double x, const LinkParams& lp);
double pdf_sinr_interference(double x, const LinkParams& lp);

// SINR on a free subcarrier: lambda / eta. Pn is ignored.
double cdf_sinr_nointerference(double x, const LinkParams& lp);
double sf_sinr_nointerference(double x, const LinkParams& lp);
double pdf_sinr_nointerference(double x, const LinkParams& lp);

/// Density of log(1 + S) given the density of S: u -> e^u f(e^u - 1).
Density capacity_pdf_transform(Density pdf_sinr);

/// Survival of log(1 + S) from the survival of S; 0 once e^u - 1 overflows.
double capacity_sf(const std::function<double(double)>& sf_sinr, double u);

}  // namespace fading
}  // namespace ofdmcr
