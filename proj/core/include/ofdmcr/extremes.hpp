#pragma once

#include <functional>
#include <vector>

#include "ofdmcr/moschopoulos.hpp"
#include "ofdmcr/rng.hpp"

namespace ofdmcr {

/// Gumbel normalisation for the maximum of M draws.
struct GumbelParams {
  double bM = 0.0;  // position, F(bM) = 1 - 1/M
  double aM = 0.0;  // scale, 1 / (M f(bM))
  int M = 0;
};

namespace extremes {

/// A continuous law given by CDF and density. `sf` is optional; when present
/// it is used for the inversion, which keeps 1/M resolvable for large M.
struct Law {
  std::function<double(double)> cdf;
  std::function<double(double)> pdf;
  std::function<double(double)> sf;
};

/// Law view of a truncated series (its CDF, density and survival).
Law series_law(const MoschopoulosSeries& s);
Law marginal_law(const moschopoulos::MarginalCapacityLaw& m);

/// Inverts the law at 1 - 1/M (bracket, bisection, Newton) to 1e-10 in
/// probability. Throws NumericalError when no bracket can be found.
GumbelParams gumbel_params(const Law& law, int M);

/// bM + Euler gamma * aM.
double asymptotic_max_capacity(const GumbelParams& gp);

struct GrowthPoint {
  double x = 0.0;
  double g = 0.0;     // (1 - F(x)) / f(x)
  bool valid = true;  // truncation error small relative to both F-tail and f
};

/// Growth function along the grid, with a per-point flag telling whether the
/// truncated series still resolves the tail there.
std::vector<GrowthPoint> von_mises_check(const MoschopoulosSeries& s, const std::vector<double>& x_grid);

/// KS distance between (max of M draws - bM)/aM and exp(-e^{-z}), over
/// `sample_size` replications. `draw` produces one draw of the law.
double gumbel_cdf_distance(const std::function<double(Rng&)>& draw, const GumbelParams& gp, int sample_size,
                           Rng& rng);
double gumbel_cdf_distance(const MoschopoulosSeries& s, int M, int sample_size, Rng& rng);

/// Closed expression that applies the inverse gamma term by term inside the
/// series, C sum_k delta_k P^{-1}(rho + k, (1 - 1/M) / beta_min). It is not
/// F^{-1}(1 - 1/M) in general; `valid` is false when the second argument
/// leaves (0, 1), in which case `value` is NaN.
struct ClosedFormPosition {
  double value = 0.0;
  bool valid = false;
};
ClosedFormPosition theorem3_bM_formula(const MoschopoulosSeries& s, int M);

}  // namespace extremes
}  // namespace ofdmcr
