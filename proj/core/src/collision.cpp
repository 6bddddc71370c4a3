#include "ofdmcr/collision.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "ofdmcr/error.hpp"
#include "ofdmcr/specfun.hpp"

namespace ofdmcr {

int SubcarrierPool::occupied() const { return std::accumulate(Fp.begin(), Fp.end(), 0); }

void SubcarrierPool::validate() const {
  if (F < 1) throw DomainError("SubcarrierPool: F >= 1 violated (F=" + std::to_string(F) + ")");
  for (int fp : Fp) {
    if (fp < 0) throw DomainError("SubcarrierPool: every Fp >= 0 violated");
  }
  if (occupied() > F) {
    throw DomainError("SubcarrierPool: sum(Fp) <= F violated (sum=" + std::to_string(occupied()) +
                      ", F=" + std::to_string(F) + ")");
  }
}

int CollisionVector::total() const { return std::accumulate(k.begin(), k.end(), kf); }

namespace collision {
namespace {

void require_hypergeom_args(int Fs, int Fp, int F) {
  if (F < 0 || Fs < 0 || Fp < 0 || Fs > F || Fp > F) {
    throw DomainError("hypergeometric: requires 0 <= Fs, Fp <= F (Fs=" + std::to_string(Fs) +
                      ", Fp=" + std::to_string(Fp) + ", F=" + std::to_string(F) + ")");
  }
}

// Capacities of the N+1 categories: each PU's set, then the free set.
std::vector<int> category_sizes(const SubcarrierPool& pool) {
  std::vector<int> sizes = pool.Fp;
  sizes.push_back(pool.free_count());
  return sizes;
}

// Visits every vector x with 0 <= x[c] <= caps[c] and sum(x) == total.
void for_each_composition(const std::vector<int>& caps, int total,
                          const std::function<void(const std::vector<int>&)>& visit) {
  const int n = static_cast<int>(caps.size());
  std::vector<int> suffix_cap(n + 1, 0);
  for (int c = n - 1; c >= 0; --c) suffix_cap[c] = suffix_cap[c + 1] + caps[c];
  if (total < 0 || total > suffix_cap[0]) return;
  std::vector<int> x(n, 0);
  std::function<void(int, int)> rec = [&](int c, int left) {
    if (c == n - 1) {
      x[c] = left;
      visit(x);
      return;
    }
    const int lo = std::max(0, left - suffix_cap[c + 1]);
    const int hi = std::min(caps[c], left);
    for (int v = lo; v <= hi; ++v) {
      x[c] = v;
      rec(c + 1, left - v);
    }
  };
  rec(0, total);
}

// C(n, k) by the multiplicative loop; a few ulps, versus ~n ulps through
// log-gamma. Overflows to inf past n ~ 1000.
double binomial(int n, int k) {
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr double kDirectLimit = 1e290;

double log_mvhypergeom(const std::vector<int>& caps, int F, int Fs, const std::vector<int>& x) {
  double lp = -log_binomial(F, Fs);
  for (std::size_t c = 0; c < caps.size(); ++c) lp += log_binomial(caps[c], x[c]);
  return lp;
}

double mv_probability(const std::vector<int>& caps, int F, int Fs, const std::vector<int>& x) {
  const double all = binomial(F, Fs);
  if (all < kDirectLimit) {
    double ways = 1.0;
    for (std::size_t c = 0; c < caps.size(); ++c) ways *= binomial(caps[c], x[c]);
    return ways / all;
  }
  return std::exp(log_mvhypergeom(caps, F, Fs, x));
}

CollisionVector to_vector(const std::vector<int>& x) {
  CollisionVector kv;
  kv.k.assign(x.begin(), x.end() - 1);
  kv.kf = x.back();
  return kv;
}

std::vector<int> to_categories(const CollisionVector& kv) {
  std::vector<int> x = kv.k;
  x.push_back(kv.kf);
  return x;
}

}  // namespace

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  if (k == 0 || k == n) return 0.0;
  return specfun::log_gamma(n + 1.0) - specfun::log_gamma(k + 1.0) - specfun::log_gamma(n - k + 1.0);
}

std::pair<int, int> hypergeom_support(int Fs, int Fp, int F) {
  require_hypergeom_args(Fs, Fp, F);
  return {std::max(0, Fs + Fp - F), std::min(Fs, Fp)};
}

double hypergeom_pmf(int Fs, int Fp, int F, int k) {
  const auto [lo, hi] = hypergeom_support(Fs, Fp, F);
  if (k < lo || k > hi) return 0.0;
  const double all = binomial(F, Fs);
  if (all < kDirectLimit) return binomial(Fp, k) * binomial(F - Fp, Fs - k) / all;
  return std::exp(log_binomial(Fp, k) + log_binomial(F - Fp, Fs - k) - log_binomial(F, Fs));
}

double hypergeom_mean(int Fs, int Fp, int F) {
  require_hypergeom_args(Fs, Fp, F);
  if (F == 0) return 0.0;
  return static_cast<double>(Fs) * Fp / F;
}

int hypergeom_sample(int Fs, int Fp, int F, Rng& rng) {
  const auto [lo, hi] = hypergeom_support(Fs, Fp, F);
  if (lo == hi) return lo;
  const int mode = std::clamp(static_cast<int>((static_cast<double>(Fs) + 1.0) * (Fp + 1.0) / (F + 2.0)), lo, hi);
  const double p_mode = hypergeom_pmf(Fs, Fp, F, mode);
  const double u = rng.uniform();
  double cum = p_mode;
  if (u < cum) return mode;
  int left = mode, right = mode;
  double p_left = p_mode, p_right = p_mode;
  const double rest = static_cast<double>(F) - Fp - Fs;
  while (left > lo || right < hi) {
    if (right < hi) {
      p_right *= (static_cast<double>(Fp) - right) * (Fs - right) / ((right + 1.0) * (rest + right + 1.0));
      ++right;
      cum += p_right;
      if (u < cum) return right;
    }
    if (left > lo) {
      p_left *= left * (rest + left) / ((Fp - left + 1.0) * (Fs - left + 1.0));
      --left;
      cum += p_left;
      if (u < cum) return left;
    }
  }
  return mode;  // u landed in the rounding slack above the accumulated mass
}

double mvhypergeom_pmf(int Fs, const SubcarrierPool& pool, const CollisionVector& kv) {
  pool.validate();
  if (Fs < 0 || Fs > pool.F) throw DomainError("mvhypergeom_pmf: requires 0 <= Fs <= F");
  if (kv.k.size() != pool.Fp.size()) throw DomainError("mvhypergeom_pmf: collision vector has wrong PU count");
  if (kv.total() != Fs) throw DomainError("mvhypergeom_pmf: sum(k) + kf must equal Fs");
  const std::vector<int> caps = category_sizes(pool);
  const std::vector<int> x = to_categories(kv);
  for (std::size_t c = 0; c < caps.size(); ++c) {
    if (x[c] < 0 || x[c] > caps[c]) return 0.0;
  }
  return mv_probability(caps, pool.F, Fs, x);
}

CollisionVector mvhypergeom_sample(int Fs, const SubcarrierPool& pool, Rng& rng) {
  if (Fs < 0 || Fs > pool.F) throw DomainError("mvhypergeom_sample: requires 0 <= Fs <= F");
  CollisionVector kv;
  kv.k.resize(pool.Fp.size());
  int left = Fs;
  int population = pool.F;
  for (std::size_t n = 0; n < pool.Fp.size(); ++n) {
    kv.k[n] = hypergeom_sample(left, pool.Fp[n], population, rng);
    left -= kv.k[n];
    population -= pool.Fp[n];
  }
  kv.kf = left;
  return kv;
}

std::vector<CollisionVector> mvhypergeom_support(int Fs, const SubcarrierPool& pool) {
  pool.validate();
  std::vector<CollisionVector> out;
  for_each_composition(category_sizes(pool), Fs, [&](const std::vector<int>& x) { out.push_back(to_vector(x)); });
  return out;
}

std::uint64_t mvhypergeom_support_size(int Fs, const SubcarrierPool& pool) {
  // Count compositions with a 1-D convolution over categories.
  std::vector<std::uint64_t> ways(Fs + 1, 0);
  ways[0] = 1;
  for (int cap : category_sizes(pool)) {
    std::vector<std::uint64_t> next(Fs + 1, 0);
    for (int s = 0; s <= Fs; ++s) {
      if (ways[s] == 0) continue;
      for (int v = 0; v <= cap && s + v <= Fs; ++v) next[s + v] += ways[s];
    }
    ways = std::move(next);
  }
  return ways[Fs];
}

double SequentialMarginal::standard_error(double p) const {
  if (exact || samples == 0) return 0.0;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

double SequentialMarginal::probability(const CollisionVector& kv) const {
  const auto it = pmf.find(kv);
  return it == pmf.end() ? 0.0 : it->second;
}

namespace {

void require_sequential_args(int m, const std::vector<int>& Fs_list, const SubcarrierPool& pool) {
  pool.validate();
  if (m < 1 || m > static_cast<int>(Fs_list.size())) {
    throw DomainError("sequential: SU index m must lie in [1, len(Fs_list)]");
  }
  int used = 0;
  for (int j = 0; j < m; ++j) {
    if (Fs_list[j] < 0) throw DomainError("sequential: negative subcarrier request");
    used += Fs_list[j];
  }
  if (used > pool.F) throw DomainError("sequential: sum_{j<=m} Fs_j <= F violated");
}

SequentialMarginal simulate_marginal(int m, const std::vector<int>& Fs_list, const SubcarrierPool& pool,
                                     SeedSpec seed, std::uint64_t samples) {
  SequentialMarginal out;
  out.exact = false;
  out.samples = samples;
  std::map<CollisionVector, std::uint64_t> counts;
  Rng rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    SubcarrierPool remaining = pool;
    CollisionVector kv;
    for (int r = 0; r < m; ++r) {
      kv = mvhypergeom_sample(Fs_list[r], remaining, rng);
      for (std::size_t n = 0; n < kv.k.size(); ++n) remaining.Fp[n] -= kv.k[n];
      remaining.F -= Fs_list[r];
    }
    ++counts[kv];
  }
  for (const auto& [kv, c] : counts) out.pmf[kv] = static_cast<double>(c) / static_cast<double>(samples);
  return out;
}

}  // namespace

SequentialMarginal sequential_marginal(int m, const std::vector<int>& Fs_list, const SubcarrierPool& pool,
                                       std::uint64_t budget, SeedSpec fallback_seed,
                                       std::uint64_t fallback_samples) {
  require_sequential_args(m, Fs_list, pool);
  const std::vector<int> caps = category_sizes(pool);
  const std::size_t ncat = caps.size();

  // Distribution of per-category consumption after the first r SUs.
  std::map<std::vector<int>, double> consumed{{std::vector<int>(ncat, 0), 1.0}};
  std::uint64_t terms = 0;
  int used = 0;
  bool over_budget = false;

  for (int r = 0; r < m - 1 && !over_budget; ++r) {
    std::map<std::vector<int>, double> next;
    for (const auto& [state, weight] : consumed) {
      std::vector<int> left(ncat);
      for (std::size_t c = 0; c < ncat; ++c) left[c] = caps[c] - state[c];
      const int population = pool.F - used;
      for_each_composition(left, Fs_list[r], [&](const std::vector<int>& x) {
        if (++terms > budget) over_budget = true;
        if (over_budget) return;
        std::vector<int> after = state;
        for (std::size_t c = 0; c < ncat; ++c) after[c] += x[c];
        next[after] += weight * mv_probability(left, population, Fs_list[r], x);
      });
      if (over_budget) break;
    }
    consumed = std::move(next);
    used += Fs_list[r];
  }

  SequentialMarginal out;
  if (!over_budget) {
    const int Fs_m = Fs_list[m - 1];
    for (const auto& [state, weight] : consumed) {
      std::vector<int> left(ncat);
      for (std::size_t c = 0; c < ncat; ++c) left[c] = caps[c] - state[c];
      const int population = pool.F - used;
      for_each_composition(left, Fs_m, [&](const std::vector<int>& x) {
        if (++terms > budget) over_budget = true;
        if (over_budget) return;
        out.pmf[to_vector(x)] += weight * mv_probability(left, population, Fs_m, x);
      });
      if (over_budget) break;
    }
  }
  if (over_budget) return simulate_marginal(m, Fs_list, pool, fallback_seed, fallback_samples);
  return out;
}

double sequential_pmf(int m, const std::vector<int>& Fs_list, const SubcarrierPool& pool,
                      const CollisionVector& kv) {
  if (m == 1) return mvhypergeom_pmf(Fs_list.at(0), pool, kv);
  return sequential_marginal(m, Fs_list, pool).probability(kv);
}

std::vector<double> sequential_mean(int m, const std::vector<int>& Fs_list, const SubcarrierPool& pool) {
  require_sequential_args(m, Fs_list, pool);
  const std::size_t npu = pool.Fp.size();
  std::vector<double> taken(npu, 0.0);  // sum_{j<r} E[k_nj]
  std::vector<double> mean(npu, 0.0);
  double used = 0.0;
  for (int r = 0; r < m; ++r) {
    const double population = pool.F - used;
    for (std::size_t n = 0; n < npu; ++n) {
      mean[n] = population > 0.0 ? Fs_list[r] * (pool.Fp[n] - taken[n]) / population : 0.0;
    }
    for (std::size_t n = 0; n < npu; ++n) taken[n] += mean[n];
    used += Fs_list[r];
  }
  return mean;
}

}  // namespace collision
}  // namespace ofdmcr
