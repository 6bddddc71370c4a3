#include "ofdmcr/meancap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ofdmcr/error.hpp"

namespace ofdmcr {

void SystemConfig::validate() const {
  pool.validate();
  if (Fs < 0 || Fs > pool.F) {
    throw DomainError("SystemConfig: Fs <= F violated (Fs=" + std::to_string(Fs) + ", F=" + std::to_string(pool.F) +
                      ")");
  }
  if (Pn.size() != pool.Fp.size()) throw DomainError("SystemConfig: one Pn per PU required");
  for (int n = 0; n < pu_count(); ++n) link(n).validate();
  free_link().validate();
}

namespace meancap {
namespace {

void require_counts(int F, int Fs, int Fp) {
  if (F < 1 || Fs < 0 || Fs > F || Fp < 0 || Fp > F) {
    throw DomainError("meancap: requires 0 <= Fs, Fp <= F and F >= 1");
  }
}

// Capacity when the Fs subcarriers are spread over categories in the given
// preference order, each category limited by its size.
double greedy_fill(int Fs, const std::vector<std::pair<double, int>>& categories) {
  double total = 0.0;
  int left = Fs;
  for (const auto& [value, size] : categories) {
    const int take = std::min(left, size);
    total += take * value;
    left -= take;
  }
  return total;
}

}  // namespace

double avg_capacity_from_moments(int F, int Fs, int Fp, double EI, double ENI) {
  require_counts(F, Fs, Fp);
  return static_cast<double>(Fs) / F * (Fp * (EI - ENI) + F * ENI);
}

double avg_capacity_multi_from_moments(int F, int Fs, const std::vector<int>& Fp, const std::vector<double>& EI,
                                       double ENI) {
  if (Fp.size() != EI.size()) throw DomainError("meancap: one E[C^I] per PU required");
  SubcarrierPool{F, Fp}.validate();
  if (Fs < 0 || Fs > F) throw DomainError("meancap: Fs <= F violated");
  double acc = 0.0;
  int occupied = 0;
  for (std::size_t n = 0; n < Fp.size(); ++n) {
    acc += Fp[n] * EI[n];
    occupied += Fp[n];
  }
  acc += (F - occupied) * ENI;
  return static_cast<double>(Fs) / F * acc;
}

CapacityBounds bounds_from_moments(int F, int Fs, int Fp, double EI, double ENI) {
  return bounds_multi_from_moments(F, Fs, {Fp}, {EI}, ENI);
}

CapacityBounds bounds_multi_from_moments(int F, int Fs, const std::vector<int>& Fp, const std::vector<double>& EI,
                                         double ENI) {
  if (Fp.size() != EI.size()) throw DomainError("meancap: one E[C^I] per PU required");
  const SubcarrierPool pool{F, Fp};
  pool.validate();
  if (Fs < 0 || Fs > F) throw DomainError("meancap: Fs <= F violated");

  std::vector<std::pair<double, int>> cats;
  for (std::size_t n = 0; n < Fp.size(); ++n) cats.emplace_back(EI[n], Fp[n]);
  cats.emplace_back(ENI, pool.free_count());
  std::stable_sort(cats.begin(), cats.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  CapacityBounds b;
  const double worst = cats.front().first;
  const double best = cats.back().first;
  b.naive_lo = Fs * worst;
  b.naive_hi = Fs * best;
  b.tight_lo = greedy_fill(Fs, cats);
  std::reverse(cats.begin(), cats.end());
  b.tight_hi = greedy_fill(Fs, cats);
  return b;
}

double avg_capacity_single_pu(const SystemConfig& cfg, int n, capmoments::MomentCache& cache) {
  cfg.validate();
  const double EI = cache.interference(cfg.link(n)).mean;
  const double ENI = cache.nointerference(cfg.free_link()).mean;
  return avg_capacity_from_moments(cfg.F(), cfg.Fs, cfg.pool.Fp.at(n), EI, ENI);
}

double avg_capacity_multi_pu(const SystemConfig& cfg, capmoments::MomentCache& cache) {
  cfg.validate();
  std::vector<double> EI;
  for (int n = 0; n < cfg.pu_count(); ++n) EI.push_back(cache.interference(cfg.link(n)).mean);
  const double ENI = cache.nointerference(cfg.free_link()).mean;
  return avg_capacity_multi_from_moments(cfg.F(), cfg.Fs, cfg.pool.Fp, EI, ENI);
}

CapacityBounds capacity_bounds(const SystemConfig& cfg, int n, capmoments::MomentCache& cache) {
  cfg.validate();
  const double EI = cache.interference(cfg.link(n)).mean;
  const double ENI = cache.nointerference(cfg.free_link()).mean;
  return bounds_from_moments(cfg.F(), cfg.Fs, cfg.pool.Fp.at(n), EI, ENI);
}

CapacityBounds capacity_bounds_multi(const SystemConfig& cfg, capmoments::MomentCache& cache) {
  cfg.validate();
  std::vector<double> EI;
  for (int n = 0; n < cfg.pu_count(); ++n) EI.push_back(cache.interference(cfg.link(n)).mean);
  const double ENI = cache.nointerference(cfg.free_link()).mean;
  return bounds_multi_from_moments(cfg.F(), cfg.Fs, cfg.pool.Fp, EI, ENI);
}

std::vector<ConvergencePoint> convergence_diagnostic(const SystemConfig& cfg, int n, const std::vector<int>& F_grid,
                                                     capmoments::MomentCache& cache) {
  cfg.validate();
  const int Fp = cfg.pool.Fp.at(n);
  const double EI = cache.interference(cfg.link(n)).mean;
  const double ENI = cache.nointerference(cfg.free_link()).mean;
  const double limit = cfg.Fs * ENI;
  std::vector<ConvergencePoint> out;
  int prev = 0;
  for (int F : F_grid) {
    if (F <= prev) throw DomainError("convergence_diagnostic: F_grid must be increasing");
    if (F - 1 < cfg.Fs + Fp) throw DomainError("convergence_diagnostic: every F - 1 >= Fs + Fp required");
    prev = F;
    const double a = avg_capacity_from_moments(F, cfg.Fs, Fp, EI, ENI);
    ConvergencePoint p;
    p.F = F;
    p.avg = a;
    p.limit = limit;
    // The gap is Fs Fp (EI - ENI) / F, so differences are formed from 1/F
    // terms directly rather than by subtracting nearly equal means.
    const double K = cfg.Fs * static_cast<double>(Fp) * (EI - ENI);
    const double d_next = K * (1.0 / (F + 1) - 1.0 / F);
    const double d_prev = K * (1.0 / F - 1.0 / (F - 1));
    p.increment_ratio = d_prev != 0.0 ? std::abs(d_next) / std::abs(d_prev) : 0.0;
    const double e_next = K / (F + 1), e = K / F;
    p.error_ratio = e != 0.0 ? std::abs(e_next) / std::abs(e) : 0.0;
    out.push_back(p);
  }
  return out;
}

}  // namespace meancap
}  // namespace ofdmcr
