#include "ofdmcr/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ofdmcr/error.hpp"
#include "ofdmcr/extremes.hpp"

namespace ofdmcr {

AllocationState AllocationState::initial(const SubcarrierPool& pool) {
  pool.validate();
  AllocationState s;
  s.free_set.resize(pool.F);
  std::iota(s.free_set.begin(), s.free_set.end(), 0);
  s.pu_occupancy.assign(pool.F, -1);
  int i = 0;
  for (int n = 0; n < pool.pu_count(); ++n) {
    for (int j = 0; j < pool.Fp[n]; ++j) s.pu_occupancy[i++] = n;
  }
  return s;
}

std::string AllocationState::check(int Fs) const {
  std::vector<int> seen(pu_occupancy.size(), 0);
  for (int c : free_set) seen.at(c) = 1;
  for (std::size_t a = 0; a < assigned.size(); ++a) {
    if (static_cast<int>(assigned[a].size()) != Fs) return "assigned set size differs from Fs";
    for (int c : assigned[a]) {
      if (seen.at(c) == 1) return "assigned subcarrier still in the free set";
      if (seen.at(c) == 2) return "subcarrier assigned to two SUs";
      seen[c] = 2;
    }
  }
  std::vector<int> sel = selected;
  std::sort(sel.begin(), sel.end());
  if (std::adjacent_find(sel.begin(), sel.end()) != sel.end()) return "SU selected twice";
  return {};
}

namespace scheduler {
namespace {

enum Purpose : std::uint64_t { kPool = 1, kChannels = 2, kCross = 3 };

void require_feasible(const SystemConfig& cfg, int M, int M_hat) {
  cfg.validate();
  if (M < 1 || M_hat < 1 || M_hat > M) throw DomainError("scheduler: 1 <= M_hat <= M required");
}

// Partial Fisher-Yates: the first Fs entries of `set` become a uniform sample
// without replacement; they are returned and removed.
std::vector<int> take_random(std::vector<int>& set, int Fs, Rng& rng) {
  for (int i = 0; i < Fs; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(set.size() - i));
    std::swap(set[i], set[j]);
  }
  std::vector<int> out(set.begin(), set.begin() + Fs);
  set.erase(set.begin(), set.begin() + Fs);
  return out;
}

CollisionVector collisions_of(const std::vector<int>& carriers, const AllocationState& s, int npu) {
  CollisionVector kv;
  kv.k.assign(npu, 0);
  for (int c : carriers) {
    const int owner = s.pu_occupancy[c];
    if (owner >= 0) {
      ++kv.k[owner];
    } else {
      ++kv.kf;
    }
  }
  return kv;
}

// Capacity of SU m on `carriers` with its own channel stream for this round.
double su_capacity(const SystemConfig& cfg, const std::vector<int>& carriers, const AllocationState& s,
                   Rng& rng) {
  double c = 0.0;
  for (int carrier : carriers) {
    const double h_m = rng.exponential();
    const double h_mp = rng.exponential();
    const double g_ns = rng.exponential();
    const int owner = s.pu_occupancy[carrier];
    if (owner >= 0) {
      c += std::log1p(mcsim::sinr_interference(cfg.link(owner), h_m, h_mp, g_ns));
    } else {
      c += std::log1p(mcsim::sinr_nointerference(cfg.free_link(), h_m, h_mp));
    }
  }
  return c;
}

template <class Pick>
ScheduleResult run_sequential(const SystemConfig& cfg, int M, int M_hat, RunStreams st, AllocationState* out,
                              Pick pick) {
  require_feasible(cfg, M, M_hat);
  if (static_cast<long>(M_hat) * cfg.Fs > cfg.F()) throw DomainError("scheduler: M_hat * Fs <= F violated");
  AllocationState s = AllocationState::initial(cfg.pool);
  ScheduleResult r;
  std::vector<char> taken(M, 0);
  for (int t = 0; t < M_hat; ++t) {
    Rng pool_rng(st.seed, {st.run, kPool, static_cast<std::uint64_t>(t)});
    std::vector<int> carriers = take_random(s.free_set, cfg.Fs, pool_rng);
    const auto [m, cap] = pick(t, carriers, s, taken);
    taken[m] = 1;
    s.selected.push_back(m);
    s.assigned.push_back(carriers);
    r.selected.push_back(m);
    r.per_su_capacity.push_back(cap);
    r.collision_log.push_back(collisions_of(carriers, s, cfg.pu_count()));
  }
  r.sum_capacity = std::accumulate(r.per_su_capacity.begin(), r.per_su_capacity.end(), 0.0);
  if (out) *out = std::move(s);
  return r;
}

}  // namespace

ScheduleResult run_opportunistic(const SystemConfig& cfg, int M, int M_hat, RunStreams st, AllocationState* state) {
  auto pick = [&](int t, const std::vector<int>& carriers, const AllocationState& s, const std::vector<char>& taken) {
    int best = -1;
    double best_cap = -1.0;
    for (int m = 0; m < M; ++m) {
      if (taken[m]) continue;
      Rng ch(st.seed, {st.run, kChannels, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(m)});
      const double c = su_capacity(cfg, carriers, s, ch);
      if (c > best_cap) {
        best_cap = c;
        best = m;
      }
    }
    return std::pair{best, best_cap};
  };
  return run_sequential(cfg, M, M_hat, st, state, pick);
}

ScheduleResult run_arbitrary(const SystemConfig& cfg, int M, int M_hat, RunStreams st, AllocationState* state) {
  auto pick = [&](int t, const std::vector<int>& carriers, const AllocationState& s, const std::vector<char>&) {
    Rng ch(st.seed, {st.run, kChannels, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(t)});
    return std::pair{t, su_capacity(cfg, carriers, s, ch)};
  };
  return run_sequential(cfg, M, M_hat, st, state, pick);
}

ScheduleResult run_colliding_baseline(const SystemConfig& cfg, int M, int M_hat, RunStreams st,
                                      AllocationState* state) {
  require_feasible(cfg, M, M_hat);
  const AllocationState s = AllocationState::initial(cfg.pool);
  const int F = cfg.F();

  struct Su {
    std::vector<int> carriers;
    std::vector<double> h_m, h_mp, g_ns, power;
  };
  std::vector<Su> sus(M_hat);
  std::vector<std::vector<int>> users_of(F);
  for (int m = 0; m < M_hat; ++m) {
    const auto um = static_cast<std::uint64_t>(m);
    Rng pool_rng(st.seed, {st.run, kPool, um});
    std::vector<int> all(F);
    std::iota(all.begin(), all.end(), 0);
    Su& su = sus[m];
    su.carriers = take_random(all, cfg.Fs, pool_rng);
    Rng ch(st.seed, {st.run, kChannels, um, um});
    for (int c : su.carriers) {
      su.h_m.push_back(ch.exponential());
      su.h_mp.push_back(ch.exponential());
      su.g_ns.push_back(ch.exponential());
      su.power.push_back(fading::adapted_power(cfg.Pm, cfg.psi, su.h_mp.back()));
      users_of[c].push_back(m);
    }
  }

  ScheduleResult r;
  for (int m = 0; m < M_hat; ++m) {
    const Su& su = sus[m];
    Rng cross(st.seed, {st.run, kCross, static_cast<std::uint64_t>(m)});
    double cap = 0.0;
    for (std::size_t i = 0; i < su.carriers.size(); ++i) {
      const int c = su.carriers[i];
      double interference = 0.0;
      for (int j : users_of[c]) {
        if (j == m) continue;
        const Su& other = sus[j];
        const auto pos = std::find(other.carriers.begin(), other.carriers.end(), c) - other.carriers.begin();
        interference += other.power[pos] * cross.exponential();
      }
      const int owner = s.pu_occupancy[c];
      if (owner >= 0) interference += cfg.Pn[owner] * su.g_ns[i];
      cap += std::log1p(su.power[i] * su.h_m[i] / (interference + cfg.eta));
    }
    r.selected.push_back(m);
    r.per_su_capacity.push_back(cap);
    r.collision_log.push_back(collisions_of(su.carriers, s, cfg.pu_count()));
  }
  r.sum_capacity = std::accumulate(r.per_su_capacity.begin(), r.per_su_capacity.end(), 0.0);
  if (state) {
    *state = s;
    for (const Su& su : sus) state->assigned.push_back(su.carriers);
    state->selected = r.selected;
  }
  return r;
}

CollisionCheck stepwise_collision_pmf_check(const SystemConfig& cfg, const std::vector<int>& Fs_list, int m,
                                            std::uint64_t samples, SeedSpec seed) {
  cfg.validate();
  const auto reference = collision::sequential_marginal(m, Fs_list, cfg.pool);
  std::map<CollisionVector, std::uint64_t> counts;
  CollisionCheck out;
  out.samples = samples;
  out.exact_reference = reference.exact;
  Rng rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    AllocationState s = AllocationState::initial(cfg.pool);
    std::vector<int> total(cfg.pu_count(), 0);
    CollisionVector at_m;
    for (std::size_t t = 0; t < Fs_list.size(); ++t) {
      const auto carriers = take_random(s.free_set, Fs_list[t], rng);
      const CollisionVector kv = collisions_of(carriers, s, cfg.pu_count());
      for (int n = 0; n < cfg.pu_count(); ++n) total[n] += kv.k[n];
      if (static_cast<int>(t) + 1 == m) at_m = kv;
    }
    for (int n = 0; n < cfg.pu_count(); ++n) {
      if (total[n] > cfg.pool.Fp[n]) ++out.overcount_violations;
    }
    ++counts[at_m];
  }
  // Cells: every reference support point, plus any observed vector outside it.
  std::vector<std::uint64_t> observed;
  std::vector<double> probs;
  for (const auto& [kv, p] : reference.pmf) {
    const auto it = counts.find(kv);
    observed.push_back(it == counts.end() ? 0 : it->second);
    probs.push_back(p);
  }
  for (const auto& [kv, c] : counts) {
    if (!reference.pmf.count(kv)) {
      observed.push_back(c);
      probs.push_back(0.0);
    }
  }
  out.test = mcsim::chi_square_gof(observed, probs);
  return out;
}

SumCapacityApproximation sum_capacity_approximation(const SystemConfig& cfg, const moschopoulos::CapacityFits& fits,
                                                    int M, int M_hat, int h) {
  require_feasible(cfg, M, M_hat);
  if (M < 2) throw DomainError("sum_capacity_approximation: M >= 2 required");
  SumCapacityApproximation out;
  out.regime_warning = M < 4 * M_hat;
  double acc = 0.0;
  for (const auto& kv : collision::mvhypergeom_support(cfg.Fs, cfg.pool)) {
    const double p = collision::mvhypergeom_pmf(cfg.Fs, cfg.pool, kv);
    if (p == 0.0) continue;
    const auto law = moschopoulos::conditional_capacity_law(fits, kv, h);
    if (law.point_mass) continue;
    const auto gp = extremes::gumbel_params(extremes::series_law(law.series), M);
    acc += p * extremes::asymptotic_max_capacity(gp);
  }
  out.value = M_hat * acc;
  return out;
}

}  // namespace scheduler
}  // namespace ofdmcr
