#pragma once

#include <vector>

#include "ofdmcr/capmoments.hpp"
#include "ofdmcr/system.hpp"

namespace ofdmcr::meancap {

// Entry points taking the per-subcarrier means directly, so the combinatorics
// can be checked apart from the quadrature.

/// (Fs/F) [Fp (EI - ENI) + F ENI].
double avg_capacity_from_moments(int F, int Fs, int Fp, double EI, double ENI);
/// (Fs/F) [sum_n Fp_n EI_n + Ff ENI].
double avg_capacity_multi_from_moments(int F, int Fs, const std::vector<int>& Fp, const std::vector<double>& EI,
                                       double ENI);

struct CapacityBounds {
  double naive_lo = 0.0;
  double naive_hi = 0.0;
  double tight_lo = 0.0;
  double tight_hi = 0.0;
};

/// Naive: all collided / none collided. Tight: collisions pinned at
/// k_max = min(Fs, Fp) and k_min = (Fs + Fp - F)^+.
CapacityBounds bounds_from_moments(int F, int Fs, int Fp, double EI, double ENI);
/// Several PUs: the tight extremes fill the Fs subcarriers greedily from the
/// worst (or best) category, each category capped by its size.
CapacityBounds bounds_multi_from_moments(int F, int Fs, const std::vector<int>& Fp, const std::vector<double>& EI,
                                         double ENI);

/// Theorem-style mean with PU n alone in the pool.
double avg_capacity_single_pu(const SystemConfig& cfg, int n, capmoments::MomentCache& cache);
double avg_capacity_multi_pu(const SystemConfig& cfg, capmoments::MomentCache& cache);
CapacityBounds capacity_bounds(const SystemConfig& cfg, int n, capmoments::MomentCache& cache);
CapacityBounds capacity_bounds_multi(const SystemConfig& cfg, capmoments::MomentCache& cache);

struct ConvergencePoint {
  int F = 0;
  double avg = 0.0;
  double limit = 0.0;           // Fs E[C^NI]
  double increment_ratio = 0.0; // |A_{F+1} - A_F| / |A_F - A_{F-1}|
  double error_ratio = 0.0;     // |A_{F+1} - A| / |A_F - A|
};

/// Mean along growing F with PU n's occupancy held fixed.
std::vector<ConvergencePoint> convergence_diagnostic(const SystemConfig& cfg, int n, const std::vector<int>& F_grid,
                                                     capmoments::MomentCache& cache);

}  // namespace ofdmcr::meancap
