#include "ofdmcr/moschopoulos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "ofdmcr/error.hpp"
#include "ofdmcr/specfun.hpp"

namespace ofdmcr {

std::vector<double> MoschopoulosSeries::deltas() const {
  std::vector<double> out;
  out.reserve(log_weights.size());
  for (double lw : log_weights) out.push_back(std::exp(lw - log_prefactor));
  return out;
}

double MoschopoulosSeries::weight(int k) const {
  if (k < 0 || k >= h) return 0.0;
  return std::exp(log_weights[k]);
}

double MoschopoulosSeries::mean() const {
  double m = 0.0;
  for (const auto& c : components) m += c.mean();
  return m;
}

double MoschopoulosSeries::variance() const {
  double v = 0.0;
  for (const auto& c : components) v += c.variance();
  return v;
}

namespace moschopoulos {
namespace {

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

std::vector<GammaParams> cleaned(const std::vector<GammaParams>& components) {
  std::vector<GammaParams> out;
  for (const auto& c : components) {
    if (!(c.beta > 0.0) || !std::isfinite(c.beta)) throw DomainError("build_series: every scale must be > 0");
    if (c.alpha < 0.0 || !std::isfinite(c.alpha)) throw DomainError("build_series: shapes must be >= 0");
    if (c.alpha > 0.0) out.push_back(c);
  }
  if (out.empty()) throw DomainError("build_series: no component with positive shape");
  return out;
}

}  // namespace

MoschopoulosSeries build_series(const std::vector<GammaParams>& components, int h) {
  if (components.empty()) throw DomainError("build_series: empty component list");
  if (h < 1) throw DomainError("build_series: h >= 1 required");
  MoschopoulosSeries s;
  s.components = cleaned(components);
  s.h = h;
  s.beta_min = std::min_element(s.components.begin(), s.components.end(), [](const auto& a, const auto& b) {
                 return a.beta < b.beta;
               })->beta;
  for (const auto& c : s.components) {
    s.rho += c.alpha;
    s.log_prefactor += c.alpha * std::log(s.beta_min / c.beta);
  }
  s.scale_prefactor = std::exp(s.log_prefactor);

  // gamma_k = sum_j alpha_j (1 - beta_min/beta_j)^k / k
  std::vector<double> g(h, 0.0);
  for (const auto& c : s.components) {
    const double r = 1.0 - s.beta_min / c.beta;
    if (r <= 0.0) continue;
    double p = 1.0;
    for (int k = 1; k < h; ++k) {
      p *= r;
      g[k] += c.alpha * p / k;
    }
  }

  // Linear recursion on scaled weights: w_k = scaled_k * exp(log_scale).
  std::vector<double> scaled(h, 0.0);
  scaled[0] = 1.0;
  double log_scale = s.log_prefactor;
  constexpr double kRescaleAt = 1e250;
  for (int k = 0; k + 1 < h; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= k + 1; ++i) acc += i * g[i] * scaled[k + 1 - i];
    scaled[k + 1] = acc / (k + 1);
    if (scaled[k + 1] > kRescaleAt) {
      for (int j = 0; j <= k + 1; ++j) scaled[j] /= kRescaleAt;
      log_scale += std::log(kRescaleAt);
    }
  }

  s.log_weights.resize(h);
  s.log_gamma_shape.resize(h);
  Kahan total;
  for (int k = 0; k < h; ++k) {
    s.log_weights[k] = scaled[k] > 0.0 ? std::log(scaled[k]) + log_scale : -std::numeric_limits<double>::infinity();
    s.log_gamma_shape[k] = specfun::log_gamma(s.rho + k);
    total.add(std::exp(s.log_weights[k]));
  }
  s.deficit = std::max(0.0, 1.0 - total.sum);
  return s;
}

MoschopoulosSeries build_series_to_tolerance(const std::vector<GammaParams>& components, int h0, double tol) {
  int h = std::max(h0, 1);
  MoschopoulosSeries s = build_series(components, h);
  while (s.deficit > tol && h < kMaxTerms) {
    h = std::min(2 * h, kMaxTerms);
    s = build_series(components, h);
  }
  return s;
}

SeriesValue series_pdf(const MoschopoulosSeries& s, double y) {
  if (y < 0.0) return {0.0, 0.0};
  // Every dropped term is a Gamma(rho + k) density with shape > 1, bounded by 1/beta_min.
  const double bound = s.deficit / s.beta_min;
  if (y == 0.0) {
    if (s.rho < 1.0) return {std::numeric_limits<double>::infinity(), bound};
    return {s.rho == 1.0 ? s.weight(0) / s.beta_min : 0.0, bound};
  }
  const double x = y / s.beta_min;
  const double lx = std::log(x);
  Kahan acc;
  for (int k = 0; k < s.h; ++k) {
    const double lw = s.log_weights[k];
    if (std::isinf(lw)) continue;
    acc.add(std::exp(lw + (s.rho + k - 1.0) * lx - x - s.log_gamma_shape[k]));
  }
  return {acc.sum / s.beta_min, bound};
}

SeriesValue series_cdf(const MoschopoulosSeries& s, double y) {
  if (y <= 0.0) return {0.0, 0.0};
  const double x = y / s.beta_min;
  const double lx = std::log(x);
  // P(a, x) = P(a + 1, x) + x^a e^-x / Gamma(a + 1), run downward from the top shape.
  const int top = s.h - 1;
  double p = specfun::regularized_gamma_p(s.rho + top, x);
  Kahan acc;
  for (int k = top; k >= 0; --k) {
    if (k < top) p += std::exp((s.rho + k) * lx - x - s.log_gamma_shape[k + 1]);
    const double lw = s.log_weights[k];
    if (!std::isinf(lw)) acc.add(std::exp(lw) * std::min(p, 1.0));
  }
  // The dropped terms weigh `deficit` in total, each with P <= P(rho + h, x).
  const double bound = s.deficit * specfun::regularized_gamma_p(s.rho + s.h, x);
  double v = acc.sum;
  if (bound <= kDefaultTolerance) v = std::clamp(v, 0.0, 1.0);
  return {v, bound};
}

SeriesValue series_sf(const MoschopoulosSeries& s, double y) {
  if (y <= 0.0) return {1.0, 0.0};
  const double x = y / s.beta_min;
  const double lx = std::log(x);
  // Q(a + 1, x) = Q(a, x) + x^a e^-x / Gamma(a + 1), run upward.
  double q = specfun::regularized_gamma_q(s.rho, x);
  Kahan acc;
  for (int k = 0; k < s.h; ++k) {
    if (k > 0) q += std::exp((s.rho + k - 1.0) * lx - x - s.log_gamma_shape[k]);
    const double lw = s.log_weights[k];
    if (!std::isinf(lw)) acc.add(std::exp(lw) * std::min(q, 1.0));
  }
  double v = acc.sum;
  if (s.deficit <= kDefaultTolerance) v = std::clamp(v, 0.0, 1.0);
  return {v, s.deficit};
}

CapacityFits fit_capacity(const SystemConfig& cfg, capmoments::MomentCache& cache, int order) {
  cfg.validate();
  CapacityFits fits;
  for (int n = 0; n < cfg.pu_count(); ++n) {
    fits.interference.push_back(capmoments::match_gamma(cache.interference(cfg.link(n), order)));
  }
  fits.nointerference = capmoments::match_gamma(cache.nointerference(cfg.free_link(), order));
  return fits;
}

std::vector<GammaParams> conditional_components(const CapacityFits& fits, const CollisionVector& kv) {
  if (kv.k.size() != fits.interference.size()) {
    throw DomainError("conditional_components: collision vector has wrong PU count");
  }
  std::vector<GammaParams> comps;
  for (std::size_t n = 0; n < kv.k.size(); ++n) {
    if (kv.k[n] < 0) throw DomainError("conditional_components: negative collision count");
    if (kv.k[n] > 0) comps.push_back({fits.interference[n].alpha * kv.k[n], fits.interference[n].beta});
  }
  if (kv.kf < 0) throw DomainError("conditional_components: negative free count");
  if (kv.kf > 0) comps.push_back({fits.nointerference.alpha * kv.kf, fits.nointerference.beta});
  return comps;
}

ConditionalLaw conditional_capacity_law(const CapacityFits& fits, const CollisionVector& kv, int h) {
  ConditionalLaw law;
  const auto comps = conditional_components(fits, kv);
  if (comps.empty()) {
    law.point_mass = true;
    return law;
  }
  law.series = build_series_to_tolerance(comps, h);
  return law;
}

SeriesValue ConditionalLaw::pdf(double y) const {
  if (point_mass) return {y == 0.0 ? std::numeric_limits<double>::infinity() : 0.0, 0.0};
  return series_pdf(series, y);
}

SeriesValue ConditionalLaw::cdf(double y) const {
  if (point_mass) return {y >= 0.0 ? 1.0 : 0.0, 0.0};
  return series_cdf(series, y);
}

SeriesValue ConditionalLaw::sf(double y) const {
  if (point_mass) return {y >= 0.0 ? 0.0 : 1.0, 0.0};
  return series_sf(series, y);
}

namespace {

template <class Eval>
SeriesValue mix(const MarginalCapacityLaw& law, Eval eval) {
  Kahan v, b;
  for (const auto& [p, cond] : law.terms) {
    const SeriesValue sv = eval(cond);
    v.add(p * sv.value);
    b.add(p * sv.truncation_bound);
  }
  return {v.sum, b.sum};
}

}  // namespace

SeriesValue MarginalCapacityLaw::pdf(double y) const {
  return mix(*this, [y](const ConditionalLaw& c) { return c.pdf(y); });
}
SeriesValue MarginalCapacityLaw::cdf(double y) const {
  return mix(*this, [y](const ConditionalLaw& c) { return c.cdf(y); });
}
SeriesValue MarginalCapacityLaw::sf(double y) const {
  return mix(*this, [y](const ConditionalLaw& c) { return c.sf(y); });
}

double MarginalCapacityLaw::mean() const {
  Kahan acc;
  for (const auto& [p, cond] : terms) acc.add(p * cond.mean());
  return acc.sum;
}

MarginalCapacityLaw marginal_capacity_law(const SystemConfig& cfg, const CapacityFits& fits, int h,
                                          std::uint64_t budget, SeedSpec fallback_seed,
                                          std::uint64_t fallback_samples) {
  cfg.validate();
  MarginalCapacityLaw law;
  if (collision::mvhypergeom_support_size(cfg.Fs, cfg.pool) <= budget) {
    for (const auto& kv : collision::mvhypergeom_support(cfg.Fs, cfg.pool)) {
      const double p = collision::mvhypergeom_pmf(cfg.Fs, cfg.pool, kv);
      if (p > 0.0) law.terms.emplace_back(p, conditional_capacity_law(fits, kv, h));
    }
    return law;
  }
  std::map<CollisionVector, std::uint64_t> counts;
  Rng rng(fallback_seed);
  for (std::uint64_t i = 0; i < fallback_samples; ++i) ++counts[collision::mvhypergeom_sample(cfg.Fs, cfg.pool, rng)];
  law.exact = false;
  law.samples = fallback_samples;
  for (const auto& [kv, c] : counts) {
    law.terms.emplace_back(static_cast<double>(c) / static_cast<double>(fallback_samples),
                           conditional_capacity_law(fits, kv, h));
  }
  return law;
}

SeriesValue outage_probability(const MarginalCapacityLaw& law, double threshold) {
  if (threshold < 0.0) throw DomainError("outage_probability: threshold >= 0 required");
  if (threshold == 0.0) {
    // Only an Fs = 0 point mass sits at zero capacity.
    double mass = 0.0;
    for (const auto& [p, c] : law.terms) mass += c.point_mass ? p : 0.0;
    return {mass, 0.0};
  }
  if (std::isinf(threshold)) return {1.0, 0.0};
  return law.cdf(threshold);
}

SeriesValue outage_probability(const SystemConfig& cfg, const CapacityFits& fits, double threshold, int h) {
  return outage_probability(marginal_capacity_law(cfg, fits, h), threshold);
}

double sample_gamma_sum(const std::vector<GammaParams>& components, Rng& rng) {
  double total = 0.0;
  for (const auto& c : components) {
    if (c.alpha <= 0.0) continue;
    std::gamma_distribution<double> dist(c.alpha, c.beta);
    total += dist(rng);
  }
  return total;
}

}  // namespace moschopoulos
}  // namespace ofdmcr
