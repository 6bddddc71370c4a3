#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ofdmcr/rng.hpp"

namespace ofdmcr {

/// F subcarriers, of which PU n occupies Fp[n] (orthogonal sets); the rest are free.
struct SubcarrierPool {
  int F = 0;
  std::vector<int> Fp;

  int occupied() const;
  int free_count() const { return F - occupied(); }
  int pu_count() const { return static_cast<int>(Fp.size()); }
  /// Throws DomainError naming the violated invariant.
  void validate() const;
};

/// Per-PU collision counts k[n] and the collision-free count kf for one SU.
struct CollisionVector {
  std::vector<int> k;
  int kf = 0;

  int total() const;
  int collided() const { return total() - kf; }
  bool operator==(const CollisionVector&) const = default;
  auto operator<=>(const CollisionVector&) const = default;
};

namespace collision {

double log_binomial(int n, int k);

/// Support [(Fs + Fp - F)^+, min(Fs, Fp)] of HYPG(Fs, Fp, F).
std::pair<int, int> hypergeom_support(int Fs, int Fp, int F);
double hypergeom_pmf(int Fs, int Fp, int F, int k);
double hypergeom_mean(int Fs, int Fp, int F);
/// Inverse transform over the support, searched outward from the mode.
int hypergeom_sample(int Fs, int Fp, int F, Rng& rng);

/// Product-of-binomials multivariate hypergeometric PMF; 0 off support.
/// Throws DomainError if kv does not sum to Fs or has the wrong PU count.
double mvhypergeom_pmf(int Fs, const SubcarrierPool& pool, const CollisionVector& kv);
/// Sequential method: k_1 ~ HYPG(Fs, Fp_1, F), k_2 ~ HYPG(Fs - k_1, Fp_2, F - Fp_1), ...
CollisionVector mvhypergeom_sample(int Fs, const SubcarrierPool& pool, Rng& rng);
/// Every vector with positive probability, in lexicographic order.
std::vector<CollisionVector> mvhypergeom_support(int Fs, const SubcarrierPool& pool);
/// Number of support points without enumerating them.
std::uint64_t mvhypergeom_support_size(int Fs, const SubcarrierPool& pool);

/// Marginal law of the m-th (1-based) SU's collision vector when SUs draw
/// orthogonal sets one after another.
struct SequentialMarginal {
  std::map<CollisionVector, double> pmf;
  bool exact = true;
  std::uint64_t samples = 0;  // Monte Carlo fallback only
  /// Standard error of each probability in the fallback; 0 when exact.
  double standard_error(double p) const;
  double probability(const CollisionVector& kv) const;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Sums the chain-rule joint PMF over all predecessor vectors. The predecessors
/// enter only through the per-category consumption totals, so the sum runs as a
/// forward recursion over those totals. Falls back to simulating the sequential
/// draws when the term count would exceed `budget`.
SequentialMarginal sequential_marginal(int m, const std::vector<int>& Fs_list, const SubcarrierPool& pool,
                                       std::uint64_t budget = kDefaultEnumerationBudget,
                                       SeedSpec fallback_seed = {0x5eed, 0},
                                       std::uint64_t fallback_samples = 1'000'000);

double sequential_pmf(int m, const std::vector<int>& Fs_list, const SubcarrierPool& pool,
                      const CollisionVector& kv);

/// E[k_nm] for every PU by the recursion
/// E[k_nm] = Fs_m (Fp_n - sum_{j<m} E[k_nj]) / (F - sum_{j<m} Fs_j).
std::vector<double> sequential_mean(int m, const std::vector<int>& Fs_list, const SubcarrierPool& pool);

}  // namespace collision
}  // namespace ofdmcr
