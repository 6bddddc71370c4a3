#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "ofdmcr/collision.hpp"
#include "ofdmcr/rng.hpp"
#include "ofdmcr/system.hpp"

namespace ofdmcr {

/// Unit-mean exponential power gains per subcarrier: SU link h_m, SU-to-PU
/// link h_mp, PU-to-SU interference link g_ns.
struct ChannelDraw {
  std::vector<double> h_m;
  std::vector<double> h_mp;
  std::vector<double> g_ns;

  std::size_t size() const { return h_m.size(); }
};

namespace mcsim {

/// Draws per subcarrier in the order h_m, h_mp, g_ns.
ChannelDraw draw_channels(int count, Rng& rng);

double sinr_interference(const LinkParams& lp, double h_m, double h_mp, double g_ns);
double sinr_nointerference(const LinkParams& lp, double h_m, double h_mp);

/// Sum of log(1 + SINR) over the SU's subcarriers. The first k[0] draws sit on
/// PU 0's subcarriers, the next k[1] on PU 1's, ..., the last kf are free.
double realize_capacity(const SystemConfig& cfg, const CollisionVector& kv, const ChannelDraw& draws);

/// One full-chain sample: random collision vector, then channels, then capacity.
double sample_capacity(const SystemConfig& cfg, Rng& rng);

/// Sorted sample with ECDF, histogram and Kolmogorov-Smirnov helpers.
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<double> samples);

  std::size_t size() const { return x_.size(); }
  const std::vector<double>& sorted() const { return x_; }
  /// True when every sample is the same value.
  bool degenerate() const { return x_.front() == x_.back(); }
  double mean() const;
  double variance() const;
  /// Fraction of samples <= t.
  double ecdf(double t) const;

  struct Histogram {
    double lo = 0.0;
    double width = 0.0;
    std::vector<double> density;  // normalised so sum(density) * width = 1
  };
  /// Freedman-Diaconis bin width 2 IQR n^{-1/3}.
  Histogram histogram() const;

  /// sup |F_n - F|.
  double ks_statistic(const std::function<double(double)>& cdf) const;
  double ks_two_sample(const EmpiricalDistribution& other) const;

 private:
  std::vector<double> x_;
};

/// Half-width of the Dvoretzky-Kiefer-Wolfowitz band at confidence 1 - alpha.
double dkw_epsilon(std::size_t n, double alpha);

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Pearson test of observed counts against probabilities. Cells with expected
/// count below 5 are pooled together.
ChiSquare chi_square_gof(const std::vector<std::uint64_t>& observed, const std::vector<double>& probabilities);

/// Mergeable mean/variance accumulator (Welford, Chan merge).
struct RunningStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x);
  void merge(const RunningStats& other);
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double standard_error() const;
};

/// Worker count: OFDMCR_WORKERS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Runs fn(i) for i in [0, n) on `workers` threads and returns the results in
/// index order, so the outcome never depends on the thread count.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, int workers, Fn&& fn) {
  std::vector<T> out(n);
  workers = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
      });
    }
  }
  return out;
}

inline constexpr std::uint64_t kBlockSize = 4096;

/// Mean of `sample(rng)` over `replications` draws. Replications are cut into
/// fixed blocks, block b owns stream (seed, {b}), and block statistics merge in
/// block order.
RunningStats estimate_mean(std::uint64_t replications, SeedSpec seed, const std::function<double(Rng&)>& sample,
                           int workers = 0);

/// All draws of `sample`, in the same block layout as estimate_mean.
std::vector<double> collect_samples(std::uint64_t replications, SeedSpec seed,
                                    const std::function<double(Rng&)>& sample, int workers = 0);

}  // namespace mcsim
}  // namespace ofdmcr
