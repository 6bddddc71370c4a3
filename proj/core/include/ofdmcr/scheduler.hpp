#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ofdmcr/collision.hpp"
#include "ofdmcr/mcsim.hpp"
#include "ofdmcr/moschopoulos.hpp"
#include "ofdmcr/rng.hpp"
#include "ofdmcr/system.hpp"

namespace ofdmcr {

/// Subcarrier bookkeeping of one scheduling run. Subcarriers are numbered
/// 0..F-1; PU n owns a block of pool.Fp[n] of them, the rest are free.
struct AllocationState {
  std::vector<int> free_set;      // still assignable, in pool order
  std::vector<int> pu_occupancy;  // owner PU per subcarrier, -1 when free
  std::vector<std::vector<int>> assigned;  // per selected SU, in selection order
  std::vector<int> selected;

  static AllocationState initial(const SubcarrierPool& pool);
  /// Pairwise-disjoint assignments of size Fs, none still in free_set, no SU
  /// selected twice. Returns an empty string when all hold, else the violation.
  std::string check(int Fs) const;
};

struct ScheduleResult {
  std::vector<int> selected;
  std::vector<double> per_su_capacity;
  double sum_capacity = 0.0;
  std::vector<CollisionVector> collision_log;
};

namespace scheduler {

/// Random streams of one run: everything is keyed by (run, purpose, round, SU)
/// below the seed, so runs can be paired across policies and M.
struct RunStreams {
  SeedSpec seed;
  std::uint64_t run = 0;
};

/// Sequential random allocation with opportunistic selection: each round
/// samples Fs free subcarriers, every remaining SU reports its capacity on
/// them, the best one (lowest index on ties) takes them.
ScheduleResult run_opportunistic(const SystemConfig& cfg, int M, int M_hat, RunStreams streams,
                                 AllocationState* state = nullptr);
/// Same allocation, SU t served in round t regardless of capacity.
ScheduleResult run_arbitrary(const SystemConfig& cfg, int M, int M_hat, RunStreams streams,
                             AllocationState* state = nullptr);
/// SUs 0..M_hat-1 each draw Fs subcarriers from all F independently; SUs
/// sharing a subcarrier interfere with each other. `state`, when given,
/// receives the (overlapping) sets in `assigned`; check() does not apply.
ScheduleResult run_colliding_baseline(const SystemConfig& cfg, int M, int M_hat, RunStreams streams,
                                      AllocationState* state = nullptr);

struct CollisionCheck {
  mcsim::ChiSquare test;
  std::uint64_t samples = 0;
  std::uint64_t overcount_violations = 0;  // runs where collisions with PU n exceeded Fp[n]
  bool exact_reference = true;
};

/// Empirical collision vectors at step m (1-based) of the sequential
/// allocation with per-step sizes Fs_list, against the exact marginal.
CollisionCheck stepwise_collision_pmf_check(const SystemConfig& cfg, const std::vector<int>& Fs_list, int m,
                                            std::uint64_t samples, SeedSpec seed);

struct SumCapacityApproximation {
  double value = 0.0;
  bool regime_warning = false;  // M < 4 M_hat
};

/// M_hat times the expected best-of-M first-round capacity, each collision
/// vector contributing bM + gamma aM of its conditional law.
SumCapacityApproximation sum_capacity_approximation(const SystemConfig& cfg, const moschopoulos::CapacityFits& fits,
                                                    int M, int M_hat, int h = moschopoulos::kDefaultTerms);

}  // namespace scheduler
}  // namespace ofdmcr
