#include "ofdmcr/mcsim.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "ofdmcr/error.hpp"
#include "ofdmcr/fading.hpp"
#include "ofdmcr/specfun.hpp"

namespace ofdmcr::mcsim {

ChannelDraw draw_channels(int count, Rng& rng) {
  if (count < 1) throw DomainError("draw_channels: count >= 1 required");
  ChannelDraw d;
  d.h_m.resize(count);
  d.h_mp.resize(count);
  d.g_ns.resize(count);
  for (int i = 0; i < count; ++i) {
    d.h_m[i] = rng.exponential();
    d.h_mp[i] = rng.exponential();
    d.g_ns[i] = rng.exponential();
  }
  return d;
}

double sinr_interference(const LinkParams& lp, double h_m, double h_mp, double g_ns) {
  return fading::adapted_power(lp.Pm, lp.psi, h_mp) * h_m / (lp.Pn * g_ns + lp.eta);
}

double sinr_nointerference(const LinkParams& lp, double h_m, double h_mp) {
  return fading::adapted_power(lp.Pm, lp.psi, h_mp) * h_m / lp.eta;
}

double realize_capacity(const SystemConfig& cfg, const CollisionVector& kv, const ChannelDraw& draws) {
  if (static_cast<int>(kv.k.size()) != cfg.pu_count()) throw DomainError("realize_capacity: wrong PU count");
  if (static_cast<int>(draws.size()) < kv.total()) throw DomainError("realize_capacity: too few channel draws");
  double c = 0.0;
  std::size_t i = 0;
  for (int n = 0; n < cfg.pu_count(); ++n) {
    const LinkParams lp = cfg.link(n);
    for (int j = 0; j < kv.k[n]; ++j, ++i) c += std::log1p(sinr_interference(lp, draws.h_m[i], draws.h_mp[i], draws.g_ns[i]));
  }
  const LinkParams lp = cfg.free_link();
  for (int j = 0; j < kv.kf; ++j, ++i) c += std::log1p(sinr_nointerference(lp, draws.h_m[i], draws.h_mp[i]));
  return c;
}

double sample_capacity(const SystemConfig& cfg, Rng& rng) {
  const CollisionVector kv = collision::mvhypergeom_sample(cfg.Fs, cfg.pool, rng);
  if (cfg.Fs == 0) return 0.0;
  return realize_capacity(cfg, kv, draw_channels(cfg.Fs, rng));
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples) : x_(std::move(samples)) {
  if (x_.size() < 2) throw DomainError("EmpiricalDistribution: at least 2 samples required");
  std::sort(x_.begin(), x_.end());
}

double EmpiricalDistribution::mean() const {
  return std::accumulate(x_.begin(), x_.end(), 0.0) / static_cast<double>(x_.size());
}

double EmpiricalDistribution::variance() const {
  const double m = mean();
  double acc = 0.0;
  for (double v : x_) acc += (v - m) * (v - m);
  return acc / static_cast<double>(x_.size() - 1);
}

double EmpiricalDistribution::ecdf(double t) const {
  return static_cast<double>(std::upper_bound(x_.begin(), x_.end(), t) - x_.begin()) /
         static_cast<double>(x_.size());
}

EmpiricalDistribution::Histogram EmpiricalDistribution::histogram() const {
  const double n = static_cast<double>(x_.size());
  auto quantile = [&](double q) { return x_[static_cast<std::size_t>(q * (n - 1))]; };
  const double iqr = quantile(0.75) - quantile(0.25);
  Histogram h;
  h.lo = x_.front();
  const double span = x_.back() - x_.front();
  h.width = iqr > 0.0 ? 2.0 * iqr / std::cbrt(n) : (span > 0.0 ? span : 1.0);
  const std::size_t bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / h.width)));
  h.density.assign(bins, 0.0);
  for (double v : x_) {
    const auto b = std::min(bins - 1, static_cast<std::size_t>((v - h.lo) / h.width));
    h.density[b] += 1.0;
  }
  for (double& d : h.density) d /= n * h.width;
  return h;
}

double EmpiricalDistribution::ks_statistic(const std::function<double(double)>& cdf) const {
  const double n = static_cast<double>(x_.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    // Ties: the ECDF jumps once, at the last copy.
    if (i + 1 < x_.size() && x_[i + 1] == x_[i]) continue;
    const double F = cdf(x_[i]);
    std::size_t first = i;
    while (first > 0 && x_[first - 1] == x_[i]) --first;
    d = std::max({d, (i + 1) / n - F, F - first / n});
  }
  return d;
}

double EmpiricalDistribution::ks_two_sample(const EmpiricalDistribution& other) const {
  const auto& a = x_;
  const auto& b = other.x_;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == t) ++i;
    while (j < b.size() && b[j] == t) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double dkw_epsilon(std::size_t n, double alpha) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

ChiSquare chi_square_gof(const std::vector<std::uint64_t>& observed, const std::vector<double>& probabilities) {
  if (observed.size() != probabilities.size() || observed.empty()) {
    throw DomainError("chi_square_gof: observed and probabilities must have equal, nonzero length");
  }
  const double n = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  double stat = 0.0;
  int cells = 0;
  double pooled_obs = 0.0, pooled_exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = n * probabilities[i];
    if (e < 5.0) {
      pooled_obs += static_cast<double>(observed[i]);
      pooled_exp += e;
      continue;
    }
    const double d = static_cast<double>(observed[i]) - e;
    stat += d * d / e;
    ++cells;
  }
  if (pooled_exp > 0.0) {
    const double d = pooled_obs - pooled_exp;
    stat += d * d / pooled_exp;
    ++cells;
  } else if (pooled_obs > 0.0) {
    stat = std::numeric_limits<double>::infinity();  // mass where none is allowed
  }
  ChiSquare r;
  r.statistic = stat;
  r.dof = std::max(cells - 1, 0);
  if (std::isinf(stat)) {
    r.p_value = 0.0;
  } else if (r.dof == 0) {
    r.p_value = 1.0;
  } else {
    r.p_value = specfun::regularized_gamma_q(0.5 * r.dof, 0.5 * stat);
  }
  return r;
}

void RunningStats::add(double x) {
  ++count;
  const double d = x - mean;
  mean += d / static_cast<double>(count);
  m2 += d * (x - mean);
}

void RunningStats::merge(const RunningStats& o) {
  if (o.count == 0) return;
  if (count == 0) {
    *this = o;
    return;
  }
  const double n = static_cast<double>(count + o.count);
  const double d = o.mean - mean;
  mean += d * static_cast<double>(o.count) / n;
  m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / n;
  count += o.count;
}

double RunningStats::standard_error() const {
  return count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
}

int worker_count() {
  if (const char* env = std::getenv("OFDMCR_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 1024L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::size_t block_count(std::uint64_t replications) { return (replications + kBlockSize - 1) / kBlockSize; }

std::uint64_t block_length(std::uint64_t replications, std::size_t b) {
  return std::min<std::uint64_t>(kBlockSize, replications - b * kBlockSize);
}

}  // namespace

RunningStats estimate_mean(std::uint64_t replications, SeedSpec seed, const std::function<double(Rng&)>& sample,
                           int workers) {
  if (workers <= 0) workers = worker_count();
  const auto blocks = parallel_map<RunningStats>(block_count(replications), workers, [&](std::size_t b) {
    Rng rng(seed, {b});
    RunningStats s;
    for (std::uint64_t i = 0, n = block_length(replications, b); i < n; ++i) s.add(sample(rng));
    return s;
  });
  RunningStats total;
  for (const auto& s : blocks) total.merge(s);
  return total;
}

std::vector<double> collect_samples(std::uint64_t replications, SeedSpec seed,
                                    const std::function<double(Rng&)>& sample, int workers) {
  if (workers <= 0) workers = worker_count();
  const auto blocks = parallel_map<std::vector<double>>(block_count(replications), workers, [&](std::size_t b) {
    Rng rng(seed, {b});
    std::vector<double> v(block_length(replications, b));
    for (double& x : v) x = sample(rng);
    return v;
  });
  std::vector<double> out;
  out.reserve(replications);
  for (const auto& v : blocks) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace ofdmcr::mcsim
