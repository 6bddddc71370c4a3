#pragma once

#include <map>
#include <shared_mutex>
#include <tuple>

#include "ofdmcr/fading.hpp"
#include "ofdmcr/specfun.hpp"

namespace ofdmcr {

/// Gamma(alpha, beta) with beta a scale in nats/s/Hz.
struct GammaParams {
  double alpha = 1.0;
  double beta = 1.0;

  double mean() const { return alpha * beta; }
  double variance() const { return alpha * beta * beta; }
};

/// First two moments of per-subcarrier capacity log(1 + S), nats/s/Hz.
struct CapacityMoments {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;

  static CapacityMoments from(double mean, double second_moment) {
    return {mean, second_moment, second_moment - mean * mean};
  }
};

namespace capmoments {

inline constexpr int kDefaultOrder = 50;

/// E[log(1 + S^I)]: closed form plus one residual integral (adaptive, rel 1e-7).
/// Falls back to integrating log(1 + x) f(x) when Pn is within 1e-6 of Pm.
double mean_capacity_interference(const LinkParams& lp);

/// E[log(1 + S^NI)] in closed form; analytic limit when |psi - eta| < 1e-9 eta.
double mean_capacity_nointerference(const LinkParams& lp);

/// E[C^2] = int 2u P(C > u) du by the Chebyshev rule, applied after scaling
/// u by max(E[C], 1) so the nodes cover the bulk of the capacity law.
double second_moment_interference(const LinkParams& lp, const specfun::QuadratureRule& rule);
double second_moment_nointerference(const LinkParams& lp, const specfun::QuadratureRule& rule);

/// The same second moment summed in the SINR domain,
/// sum_j w_j 2 log(1 + s_j) / (1 + s_j) P(S > s_j). Kept for comparison;
/// it loses accuracy once most of the SINR mass sits beyond the last node.
double second_moment_sinr_domain(const std::function<double(double)>& sf_sinr,
                                 const specfun::QuadratureRule& rule);

CapacityMoments moments_interference(const LinkParams& lp, const specfun::QuadratureRule& rule);
CapacityMoments moments_nointerference(const LinkParams& lp, const specfun::QuadratureRule& rule);

/// alpha = mean^2 / var, beta = var / mean. Rejects var <= 0 or mean <= 0.
GammaParams match_gamma(const CapacityMoments& m);

/// Memoizes moments per (Pm, Pn, psi, eta, order). Many concurrent readers,
/// one writer at a time.
class MomentCache {
 public:
  CapacityMoments interference(const LinkParams& lp, int order = kDefaultOrder);
  CapacityMoments nointerference(const LinkParams& lp, int order = kDefaultOrder);
  std::size_t size() const;

 private:
  using Key = std::tuple<int, double, double, double, double, int>;
  CapacityMoments lookup(const Key& key, const LinkParams& lp, int order);

  mutable std::shared_mutex mutex_;
  std::map<Key, CapacityMoments> entries_;
  std::map<int, specfun::QuadratureRule> rules_;
};

}  // namespace capmoments
}  // namespace ofdmcr
