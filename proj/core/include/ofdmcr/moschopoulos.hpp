#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ofdmcr/capmoments.hpp"
#include "ofdmcr/collision.hpp"
#include "ofdmcr/rng.hpp"
#include "ofdmcr/system.hpp"

namespace ofdmcr {

/// Law of a sum of independent Gamma(alpha_j, beta_j) as the single-Gamma
/// series sum_k w_k Gamma(rho + k, beta_min), truncated after h terms.
/// Weights w_k = C delta_k are kept in log space: delta_k alone can exceed
/// the double range once rho is large.
struct MoschopoulosSeries {
  std::vector<GammaParams> components;  // zero-shape entries already removed
  double beta_min = 0.0;
  double rho = 0.0;              // sum of shapes
  double log_prefactor = 0.0;    // log C, C = prod (beta_min / beta_j)^alpha_j
  double scale_prefactor = 0.0;  // C itself (may underflow to 0)
  int h = 0;
  std::vector<double> log_weights;  // log(C delta_k), k < h
  std::vector<double> log_gamma_shape;  // lgamma(rho + k), k < h
  double deficit = 0.0;  // 1 - sum of kept weights: the mass the truncation drops

  /// delta_k = w_k / C; may overflow to +inf for extreme parameters.
  std::vector<double> deltas() const;
  double weight(int k) const;
  /// Exact mean sum alpha_j beta_j (not the truncated one).
  double mean() const;
  double variance() const;
};

/// Value of a truncated-series evaluation with a rigorous bound on what the
/// dropped terms could contribute.
struct SeriesValue {
  double value = 0.0;
  double truncation_bound = 0.0;
};

namespace moschopoulos {

inline constexpr int kDefaultTerms = 25;
inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr int kMaxTerms = 4096;

/// Fixed truncation. Rejects an empty list and non-positive scales; zero
/// shapes are dropped.
MoschopoulosSeries build_series(const std::vector<GammaParams>& components, int h = kDefaultTerms);
/// Doubles h from h0 until the dropped mass is below tol (or kMaxTerms).
MoschopoulosSeries build_series_to_tolerance(const std::vector<GammaParams>& components, int h0 = kDefaultTerms,
                                             double tol = kDefaultTolerance);

SeriesValue series_pdf(const MoschopoulosSeries& s, double y);
SeriesValue series_cdf(const MoschopoulosSeries& s, double y);
/// 1 - CDF summed directly from upper incomplete gammas, accurate in the tail.
SeriesValue series_sf(const MoschopoulosSeries& s, double y);

/// Gamma fits of per-subcarrier capacity: one per PU, one for free subcarriers.
struct CapacityFits {
  std::vector<GammaParams> interference;
  GammaParams nointerference;
};

CapacityFits fit_capacity(const SystemConfig& cfg, capmoments::MomentCache& cache,
                          int order = capmoments::kDefaultOrder);

/// Capacity law given the collision vector; `point_mass` when Fs = 0.
struct ConditionalLaw {
  bool point_mass = false;
  MoschopoulosSeries series;

  SeriesValue pdf(double y) const;
  SeriesValue cdf(double y) const;
  SeriesValue sf(double y) const;
  double mean() const { return point_mass ? 0.0 : series.mean(); }
};

/// Components (alpha_I_n k_n, beta_I_n) per PU and (alpha_NI kf, beta_NI).
std::vector<GammaParams> conditional_components(const CapacityFits& fits, const CollisionVector& kv);
ConditionalLaw conditional_capacity_law(const CapacityFits& fits, const CollisionVector& kv,
                                        int h = kDefaultTerms);

/// Mixture of conditional laws over the collision PMF.
struct MarginalCapacityLaw {
  std::vector<std::pair<double, ConditionalLaw>> terms;  // (probability, law)
  bool exact = true;          // false: weights are sampled frequencies
  std::uint64_t samples = 0;  // number of sampled collision vectors

  SeriesValue pdf(double y) const;
  SeriesValue cdf(double y) const;
  SeriesValue sf(double y) const;
  double mean() const;
};

MarginalCapacityLaw marginal_capacity_law(const SystemConfig& cfg, const CapacityFits& fits,
                                          int h = kDefaultTerms,
                                          std::uint64_t budget = collision::kDefaultEnumerationBudget,
                                          SeedSpec fallback_seed = {0x5eed, 1},
                                          std::uint64_t fallback_samples = 100'000);

/// P(C < threshold).
SeriesValue outage_probability(const MarginalCapacityLaw& law, double threshold);
SeriesValue outage_probability(const SystemConfig& cfg, const CapacityFits& fits, double threshold,
                               int h = kDefaultTerms);

/// One exact draw of sum_j Gamma(alpha_j, beta_j).
double sample_gamma_sum(const std::vector<GammaParams>& components, Rng& rng);

}  // namespace moschopoulos
}  // namespace ofdmcr
