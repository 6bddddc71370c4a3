#include "ofdmcr/extremes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ofdmcr/error.hpp"
#include "ofdmcr/specfun.hpp"
#include "ofdmcr/units.hpp"

namespace ofdmcr::extremes {

Law series_law(const MoschopoulosSeries& s) {
  return {[s](double y) { return moschopoulos::series_cdf(s, y).value; },
          [s](double y) { return moschopoulos::series_pdf(s, y).value; },
          [s](double y) { return moschopoulos::series_sf(s, y).value; }};
}

Law marginal_law(const moschopoulos::MarginalCapacityLaw& m) {
  return {[m](double y) { return m.cdf(y).value; }, [m](double y) { return m.pdf(y).value; },
          [m](double y) { return m.sf(y).value; }};
}

GumbelParams gumbel_params(const Law& law, int M) {
  if (M < 2) throw DomainError("gumbel_params: M >= 2 required");
  const double target = 1.0 / M;  // survival at bM
  auto tail = [&](double x) { return law.sf ? law.sf(x) : 1.0 - law.cdf(x); };

  // Bracket: tail(lo) > target >= tail(hi).
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (tail(hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 1100) throw NumericalError("gumbel_params: no upper bracket for 1 - 1/M");
  }
  guard = 0;
  while (tail(lo) <= target) {
    const double w = hi - lo;
    hi = lo;
    lo -= 2.0 * w;
    if (++guard > 1100) throw NumericalError("gumbel_params: no lower bracket for 1 - 1/M");
  }

  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double t = tail(mid);
    if (std::abs(t - target) < 1e-12 * target || hi - lo < 1e-14 * std::max(1.0, std::abs(mid))) break;
    (t > target ? lo : hi) = mid;
    if (hi - lo < 1e-6 * std::max(1.0, std::abs(hi))) break;
  }

  // Newton on the survival: d tail / dx = -f.
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 100; ++i) {
    const double r = tail(x) - target;
    if (std::abs(r) <= 1e-10 * std::min(1.0, target * 1e3)) break;
    (r > 0.0 ? lo : hi) = x;
    const double f = law.pdf(x);
    double next = f > 0.0 ? x + r / f : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  const double f = law.pdf(x);
  if (!(f > 0.0)) throw NumericalError("gumbel_params: density vanishes at the position parameter");
  return {x, 1.0 / (M * f), M};
}

double asymptotic_max_capacity(const GumbelParams& gp) { return gp.bM + kEulerGamma * gp.aM; }

std::vector<GrowthPoint> von_mises_check(const MoschopoulosSeries& s, const std::vector<double>& x_grid) {
  std::vector<GrowthPoint> out;
  double prev = -std::numeric_limits<double>::infinity();
  for (double x : x_grid) {
    if (!(x > prev)) throw DomainError("von_mises_check: grid must be increasing");
    prev = x;
    const SeriesValue tail = moschopoulos::series_sf(s, x);
    const SeriesValue dens = moschopoulos::series_pdf(s, x);
    GrowthPoint p;
    p.x = x;
    p.g = dens.value > 0.0 ? tail.value / dens.value : std::numeric_limits<double>::infinity();
    p.valid = dens.value > 0.0 && tail.truncation_bound <= 1e-3 * tail.value &&
              dens.truncation_bound <= 1e-3 * dens.value;
    out.push_back(p);
  }
  return out;
}

double gumbel_cdf_distance(const std::function<double(Rng&)>& draw, const GumbelParams& gp, int sample_size,
                           Rng& rng) {
  if (sample_size < 2) throw DomainError("gumbel_cdf_distance: sample_size >= 2 required");
  std::vector<double> z(sample_size);
  for (auto& v : z) {
    double best = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < gp.M; ++m) best = std::max(best, draw(rng));
    v = (best - gp.bM) / gp.aM;
  }
  std::sort(z.begin(), z.end());
  double d = 0.0;
  const double n = sample_size;
  for (int i = 0; i < sample_size; ++i) {
    const double G = std::exp(-std::exp(-z[i]));
    d = std::max({d, (i + 1) / n - G, G - i / n});
  }
  return d;
}

double gumbel_cdf_distance(const MoschopoulosSeries& s, int M, int sample_size, Rng& rng) {
  const GumbelParams gp = gumbel_params(series_law(s), M);
  auto draw = [&](Rng& r) { return moschopoulos::sample_gamma_sum(s.components, r); };
  return gumbel_cdf_distance(draw, gp, sample_size, rng);
}

ClosedFormPosition theorem3_bM_formula(const MoschopoulosSeries& s, int M) {
  if (M < 2) throw DomainError("theorem3_bM_formula: M >= 2 required");
  const double q = (1.0 - 1.0 / M) / s.beta_min;
  if (!(q > 0.0 && q < 1.0)) return {std::numeric_limits<double>::quiet_NaN(), false};
  double acc = 0.0;
  for (int k = 0; k < s.h; ++k) {
    const double w = s.weight(k);  // C delta_k
    if (w == 0.0) continue;
    acc += w * specfun::inverse_regularized_gamma_p(s.rho + k, q);
  }
  return {acc, true};
}

}  // namespace ofdmcr::extremes
