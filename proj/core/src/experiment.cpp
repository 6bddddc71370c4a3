#include "ofdmcr/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "ofdmcr/capmoments.hpp"
#include "ofdmcr/error.hpp"
#include "ofdmcr/extremes.hpp"
#include "ofdmcr/fading.hpp"
#include "ofdmcr/mcsim.hpp"
#include "ofdmcr/meancap.hpp"
#include "ofdmcr/moschopoulos.hpp"
#include "ofdmcr/scheduler.hpp"
#include "ofdmcr/specfun.hpp"
#include "ofdmcr/units.hpp"

#ifndef OFDMCR_VERSION
#define OFDMCR_VERSION "0.0.0"
#endif

namespace ofdmcr {

const char* version() { return OFDMCR_VERSION; }

namespace {

using mcsim::RunningStats;

struct Context {
  const ExperimentSpec& spec;
  int workers;
  capmoments::MomentCache cache;
  ResultTable table;

  bool simulate() const { return spec.replications > 0; }

  RunningStats mc_mean(std::uint64_t stream, const std::function<double(Rng&)>& sample) {
    return mcsim::estimate_mean(spec.replications, {spec.seed, stream}, sample, workers);
  }

  void check_mean(const std::string& label, const RunningStats& mc, double analytic) {
    const double se = mc.standard_error();
    if (se > 0.0 && std::abs(mc.mean - analytic) > kToleranceSigmas * se) {
      table.failures.push_back(label + ": Monte Carlo " + format_number(mc.mean) + " vs analytic " +
                               format_number(analytic) + " (" + format_number(std::abs(mc.mean - analytic) / se) +
                               " standard errors)");
    }
  }
};

std::vector<double> grid_or(const ExperimentSpec& s, std::vector<double> fallback) {
  return s.grid.empty() ? fallback : s.grid;
}

std::vector<double> steps(double lo, double hi, double step) {
  std::vector<double> v;
  for (int i = 0; lo + i * step <= hi + 1e-9; ++i) v.push_back(lo + i * step);
  return v;
}

// Largest and last slope of a curve sampled at increasing x.
std::string saturation_note(const std::string& label, const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 3) return label + ": too few points for a saturation check";
  double peak = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) peak = std::max(peak, (y[i] - y[i - 1]) / (x[i] - x[i - 1]));
  const std::size_t n = x.size() - 1;
  const double last = (y[n] - y[n - 1]) / (x[n] - x[n - 1]);
  return label + ": final slope / peak slope = " + format_number(peak > 0.0 ? last / peak : 0.0);
}

void add_gamma_note(ResultTable& t, const std::string& which, const CapacityMoments& m, const GammaParams& g) {
  t.notes.push_back(which + ": mean=" + format_number(m.mean) + " var=" + format_number(m.variance) +
                    " alpha=" + format_number(g.alpha) + " beta=" + format_number(g.beta));
}

// ---------------------------------------------------------------- fig2

void run_fig2(Context& ctx) {
  const ExperimentSpec& s = ctx.spec;
  const LinkParams lp = s.system().link(0);
  const auto rule = specfun::gcq_rule(s.Np);
  const CapacityMoments mI = capmoments::moments_interference(lp, rule);
  const CapacityMoments mNI = capmoments::moments_nointerference(lp, rule);
  const GammaParams gI = capmoments::match_gamma(mI);
  const GammaParams gNI = capmoments::match_gamma(mNI);
  add_gamma_note(ctx.table, "interference", mI, gI);
  add_gamma_note(ctx.table, "no interference", mNI, gNI);

  const Density pdfI = fading::capacity_pdf_transform([lp](double x) { return fading::pdf_sinr_interference(x, lp); });
  const Density pdfNI =
      fading::capacity_pdf_transform([lp](double x) { return fading::pdf_sinr_nointerference(x, lp); });
  auto gamma_pdf = [](const GammaParams& g, double x) {
    return x <= 0.0 && g.alpha < 1.0 ? 0.0 : specfun::gamma_density(g.alpha, x / g.beta) / g.beta;
  };

  const double xmax = std::max(mI.mean + 6.0 * std::sqrt(mI.variance), mNI.mean + 6.0 * std::sqrt(mNI.variance));
  const int points = 80;

  ResultTable& t = ctx.table;
  t.columns = {"x", "exact_pdf_I", "gamma_pdf_I", "exact_pdf_NI", "gamma_pdf_NI"};

  std::optional<mcsim::EmpiricalDistribution> eI, eNI;
  if (ctx.simulate()) {
    t.columns.insert(t.columns.end(), {"mc_pdf_I", "mc_pdf_NI"});
    eI.emplace(mcsim::collect_samples(s.replications, {s.seed, 1}, [lp](Rng& r) {
      const double h_m = r.exponential(), h_mp = r.exponential(), g = r.exponential();
      return std::log1p(mcsim::sinr_interference(lp, h_m, h_mp, g));
    }, ctx.workers));
    eNI.emplace(mcsim::collect_samples(s.replications, {s.seed, 2}, [lp](Rng& r) {
      const double h_m = r.exponential(), h_mp = r.exponential();
      return std::log1p(mcsim::sinr_nointerference(lp, h_m, h_mp));
    }, ctx.workers));
  }
  const auto hI = eI ? eI->histogram() : mcsim::EmpiricalDistribution::Histogram{};
  const auto hNI = eNI ? eNI->histogram() : mcsim::EmpiricalDistribution::Histogram{};
  auto hist_at = [](const mcsim::EmpiricalDistribution::Histogram& h, double x) {
    const double b = std::floor((x - h.lo) / h.width);
    if (b < 0.0 || b >= static_cast<double>(h.density.size())) return 0.0;
    return h.density[static_cast<std::size_t>(b)];
  };

  for (int i = 0; i <= points; ++i) {
    const double x = xmax * i / points;
    std::vector<double> row = {x, pdfI(x), gamma_pdf(gI, x), pdfNI(x), gamma_pdf(gNI, x)};
    if (ctx.simulate()) {
      row.push_back(hist_at(hI, x));
      row.push_back(hist_at(hNI, x));
    }
    t.rows.push_back(row);
  }

  if (ctx.simulate()) {
    auto exact_cdf_I = [lp](double u) {
      return 1.0 - fading::capacity_sf([lp](double x) { return fading::sf_sinr_interference(x, lp); }, u);
    };
    auto exact_cdf_NI = [lp](double u) {
      return 1.0 - fading::capacity_sf([lp](double x) { return fading::sf_sinr_nointerference(x, lp); }, u);
    };
    auto gamma_cdf = [](const GammaParams& g) {
      return [g](double u) { return u <= 0.0 ? 0.0 : specfun::regularized_gamma_p(g.alpha, u / g.beta); };
    };
    const double eps = mcsim::dkw_epsilon(s.replications, 1e-4);
    const double ksI = eI->ks_statistic(exact_cdf_I), ksNI = eNI->ks_statistic(exact_cdf_NI);
    t.notes.push_back("KS exact vs Monte Carlo: I=" + format_number(ksI) + " NI=" + format_number(ksNI) +
                      " (band " + format_number(eps) + ")");
    t.notes.push_back("KS fitted Gamma vs Monte Carlo: I=" + format_number(eI->ks_statistic(gamma_cdf(gI))) +
                      " NI=" + format_number(eNI->ks_statistic(gamma_cdf(gNI))));
    if (ksI > eps) t.failures.push_back("interference capacity law outside the DKW band");
    if (ksNI > eps) t.failures.push_back("no-interference capacity law outside the DKW band");
  }
}

// ---------------------------------------------------------------- fig3

void run_fig3(Context& ctx) {
  const ExperimentSpec& s = ctx.spec;
  const std::vector<GammaParams> four = {{1.5, 1.0}, {2.0, 1.2}, {1.0, 1.5}, {2.5, 1.1}};
  const std::vector<GammaParams> two = {{2.0, 1.0}, {3.0, 1.5}};
  const auto s4 = moschopoulos::build_series(four, s.h);
  const auto s2 = moschopoulos::build_series(two, s.h);
  ResultTable& t = ctx.table;
  t.notes.push_back("components S=4: alpha=1.5,2,1,2.5 beta=1,1.2,1.5,1.1; S=2: alpha=2,3 beta=1,1.5");
  t.notes.push_back("dropped mass: S=4 " + format_number(s4.deficit) + ", S=2 " + format_number(s2.deficit));
  t.columns = {"y", "pdf_S4", "cdf_S4", "bound_S4", "pdf_S2", "cdf_S2", "bound_S2"};

  std::optional<mcsim::EmpiricalDistribution> e4, e2;
  if (ctx.simulate()) {
    t.columns.insert(t.columns.end(), {"mc_cdf_S4", "mc_cdf_S2"});
    e4.emplace(mcsim::collect_samples(s.replications, {s.seed, 1},
                                      [&](Rng& r) { return moschopoulos::sample_gamma_sum(four, r); }, ctx.workers));
    e2.emplace(mcsim::collect_samples(s.replications, {s.seed, 2},
                                      [&](Rng& r) { return moschopoulos::sample_gamma_sum(two, r); }, ctx.workers));
  }
  const double ymax = std::max(s4.mean() + 6.0 * std::sqrt(s4.variance()), s2.mean() + 6.0 * std::sqrt(s2.variance()));
  const int points = 80;
  for (int i = 0; i <= points; ++i) {
    const double y = ymax * i / points;
    const auto p4 = moschopoulos::series_pdf(s4, y), c4 = moschopoulos::series_cdf(s4, y);
    const auto p2 = moschopoulos::series_pdf(s2, y), c2 = moschopoulos::series_cdf(s2, y);
    std::vector<double> row = {y, p4.value, c4.value, c4.truncation_bound, p2.value, c2.value, c2.truncation_bound};
    if (ctx.simulate()) {
      row.push_back(e4->ecdf(y));
      row.push_back(e2->ecdf(y));
    }
    t.rows.push_back(row);
  }
  if (ctx.simulate()) {
    const double eps = mcsim::dkw_epsilon(s.replications, 1e-4);
    const double ks4 = e4->ks_statistic([&](double y) { return moschopoulos::series_cdf(s4, y).value; });
    const double ks2 = e2->ks_statistic([&](double y) { return moschopoulos::series_cdf(s2, y).value; });
    t.notes.push_back("KS series vs Monte Carlo: S=4 " + format_number(ks4) + ", S=2 " + format_number(ks2) +
                      " (band " + format_number(eps) + ")");
    if (ks4 > eps + s4.deficit) t.failures.push_back("S=4 series CDF outside the DKW band");
    if (ks2 > eps + s2.deficit) t.failures.push_back("S=2 series CDF outside the DKW band");
  }
}

// ------------------------------------------------------- mean capacity sweeps

// One row of analytic mean, bounds and (optionally) full-chain Monte Carlo.
std::vector<double> mean_row(Context& ctx, const SystemConfig& cfg, std::uint64_t stream, const std::string& label,
                             bool naive = true) {
  const double analytic = meancap::avg_capacity_multi_pu(cfg, ctx.cache);
  const auto b = meancap::capacity_bounds_multi(cfg, ctx.cache);
  std::vector<double> row = {analytic, b.tight_lo, b.tight_hi};
  if (naive) {
    row.push_back(b.naive_lo);
    row.push_back(b.naive_hi);
  }
  if (ctx.simulate()) {
    const auto mc = ctx.mc_mean(stream, [cfg](Rng& r) { return mcsim::sample_capacity(cfg, r); });
    row.push_back(mc.mean);
    row.push_back(mc.standard_error());
    ctx.check_mean(label, mc, analytic);
  }
  return row;
}

void add_mc_columns(Context& ctx) {
  if (ctx.simulate()) ctx.table.columns.insert(ctx.table.columns.end(), {"mc_mean", "mc_se"});
}

void run_fig4(Context& ctx) {
  const ExperimentSpec& s = ctx.spec;
  const auto pm_grid = grid_or(s, steps(-10.0, 40.0, 5.0));
  ResultTable& t = ctx.table;
  t.columns = {"psi_dB", "Pm_dB", "analytic", "tight_lo", "tight_hi", "naive_lo", "naive_hi"};
  add_mc_columns(ctx);
  std::uint64_t stream = 0;
  for (double psi : {-5.0, 0.0, 5.0}) {
    std::vector<double> ys;
    for (double pm : pm_grid) {
      ExperimentSpec p = s;
      p.psi_dB = psi;
      p.Pm_dB = pm;
      auto row = mean_row(ctx, p.system(), stream++, "psi=" + format_number(psi) + " Pm=" + format_number(pm));
      ys.push_back(row[0]);
      row.insert(row.begin(), {psi, pm});
      t.rows.push_back(row);
    }
    t.notes.push_back(saturation_note("psi=" + format_number(psi) + " dB", pm_grid, ys));
  }
}

void run_fig5(Context& ctx) {
  const ExperimentSpec& s = ctx.spec;
  const auto psi_grid = grid_or(s, steps(-10.0, 40.0, 5.0));
  ResultTable& t = ctx.table;
  t.columns = {"Pm_dB", "psi_dB", "analytic", "tight_lo", "tight_hi", "naive_lo", "naive_hi"};
  add_mc_columns(ctx);
  std::uint64_t stream = 0;
  for (double pm : {0.0, 10.0, 20.0}) {
    std::vector<double> ys;
    for (double psi : psi_grid) {
      ExperimentSpec p = s;
      p.psi_dB = psi;
      p.Pm_dB = pm;
      auto row = mean_row(ctx, p.system(), stream++, "Pm=" + format_number(pm) + " psi=" + format_number(psi));
      ys.push_back(row[0]);
      row.insert(row.begin(), {pm, psi});
      t.rows.push_back(row);
    }
    t.notes.push_back(saturation_note("Pm=" + format_number(pm) + " dB", psi_grid, ys));
  }
}

void run_fig6(Context& ctx) {
  const ExperimentSpec& s = ctx.spec;
  const auto pm_grid = grid_or(s, steps(-10.0, 40.0, 5.0));
  ResultTable& t = ctx.table;
  t.columns = {"N", "Pm_dB", "analytic", "tight_lo", "tight_hi"};
  add_mc_columns(ctx);
  t.notes.push_back("every PU occupies Fp[0] subcarriers at power Pn_dB[0]");
  std::uint64_t stream = 0;
  for (int N : {2, 6, 12}) {
    if (N * s.Fp.at(0) > s.F) throw ConfigError("fig6: N * Fp <= F violated for N=" + std::to_string(N));
    for (double pm : pm_grid) {
      ExperimentSpec p = s;
      p.Fp.assign(N, s.Fp[0]);
      p.Pn_dB = {s.Pn_dB[0]};
      p.Pm_dB = pm;
      auto row = mean_row(ctx, p.system(), stream++, "N=" + std::to_string(N) + " Pm=" + format_number(pm), false);
      if (ctx.simulate()) {
        // Bounds must hold for the simulated mean as well.
        const double mc = row[3];
        const double se = row[4];
        if (mc < row[1] - kToleranceSigmas * se || mc > row[2] + kToleranceSigmas * se) {
          t.failures.push_back("N=" + std::to_string(N) + " Pm=" + format_number(pm) +
                               ": Monte Carlo mean outside the tight bounds");
        }
      }
      row.insert(row.begin(), {static_cast<double>(N), pm});
      t.rows.push_back(row);
    }
  }
}

void run_fig7(Context& ctx) {
  const ExperimentSpec& s = ctx.spec;
  const auto F_grid = grid_or(s, {256, 512, 1000, 2000, 5000, 10000, 20000, 50000, 100000});
  ResultTable& t = ctx.table;
  t.columns = {"F", "analytic", "limit", "gap", "increment_ratio", "error_ratio"};
  add_mc_columns(ctx);
  const SystemConfig base = s.system();
  const double EI = ctx.cache.interference(base.link(0)).mean;
  const double ENI = ctx.cache.nointerference(base.free_link()).mean;
  std::vector<int> Fs_int;
  for (double f : F_grid) Fs_int.push_back(static_cast<int>(f));
  const auto conv = meancap::convergence_diagnostic(base, 0, Fs_int, ctx.cache);
  std::uint64_t stream = 0;
  for (std::size_t i = 0; i < conv.size(); ++i) {
    const auto& c = conv[i];
    const double gap = s.Fs * static_cast<double>(s.Fp[0]) / c.F * (EI - ENI);
    std::vector<double> row = {static_cast<double>(c.F), c.avg, c.limit, gap, c.increment_ratio, c.error_ratio};
    if (ctx.simulate()) {
      SystemConfig cfg = base;
      cfg.pool.F = c.F;
      const auto mc = ctx.mc_mean(stream, [cfg](Rng& r) { return mcsim::sample_capacity(cfg, r); });
      row.push_back(mc.mean);
      row.push_back(mc.standard_error());
      ctx.check_mean("F=" + std::to_string(c.F), mc, c.avg);
    }
    ++stream;
    t.rows.push_back(row);
  }
  if (conv.size() >= 2) {
    const double g0 = std::abs(t.rows.front()[3]), g1 = std::abs(t.rows.back()[3]);
    const double slope = (std::log(g1) - std::log(g0)) / (std::log(t.rows.back()[0]) - std::log(t.rows.front()[0]));
    t.notes.push_back("log-log slope of the gap over the grid: " + format_number(slope));
  }
}

// ---------------------------------------------------------------- fig8

void run_fig8(Context& ctx) {
  const ExperimentSpec& s = ctx.spec;
  const auto pm_grid = grid_or(s, steps(0.0, 40.0, 5.0));
  const int M_low = std::min(10, s.M);
  ResultTable& t = ctx.table;
  t.notes.push_back("opportunistic at M=" + std::to_string(s.M) + " and M=" + std::to_string(M_low) +
                    "; arbitrary and colliding serve SUs in fixed index order 0..M_hat-1");
  t.notes.push_back("runs are paired: every policy reuses the same per-run random streams");
  t.columns = {"Pm_dB", "thm4_approx", "arbitrary_analytic"};
  if (ctx.simulate()) {
    t.columns.insert(t.columns.end(), {"opp_M_mean", "opp_M_se", "opp_Mlow_mean", "opp_Mlow_se", "arbitrary_mean",
                                       "arbitrary_se", "colliding_mean", "colliding_se"});
  }
  std::uint64_t stream = 0;
  for (double pm : pm_grid) {
    ExperimentSpec p = s;
    p.Pm_dB = pm;
    const SystemConfig cfg = p.system();
    const auto fits = moschopoulos::fit_capacity(cfg, ctx.cache, s.Np);
    const auto approx = scheduler::sum_capacity_approximation(cfg, fits, s.M, s.M_hat, s.h);
    const double arb = s.M_hat * meancap::avg_capacity_multi_pu(cfg, ctx.cache);
    std::vector<double> row = {pm, approx.value, arb};
    if (ctx.simulate()) {
      constexpr std::uint64_t kRunsPerBlock = 64;
      const std::uint64_t blocks = (s.replications + kRunsPerBlock - 1) / kRunsPerBlock;
      const SeedSpec seed{s.seed, stream};
      const auto stats = mcsim::parallel_map<std::array<RunningStats, 4>>(blocks, ctx.workers, [&](std::size_t b) {
        std::array<RunningStats, 4> acc;
        const std::uint64_t end = std::min<std::uint64_t>(s.replications, (b + 1) * kRunsPerBlock);
        for (std::uint64_t r = b * kRunsPerBlock; r < end; ++r) {
          const scheduler::RunStreams st{seed, r};
          acc[0].add(scheduler::run_opportunistic(cfg, s.M, s.M_hat, st).sum_capacity);
          acc[1].add(scheduler::run_opportunistic(cfg, M_low, std::min(s.M_hat, M_low), st).sum_capacity);
          acc[2].add(scheduler::run_arbitrary(cfg, s.M, s.M_hat, st).sum_capacity);
          acc[3].add(scheduler::run_colliding_baseline(cfg, s.M, s.M_hat, st).sum_capacity);
        }
        return acc;
      });
      std::array<RunningStats, 4> total;
      for (const auto& a : stats) {
        for (int k = 0; k < 4; ++k) total[k].merge(a[k]);
      }
      for (const auto& st : total) {
        row.push_back(st.mean);
        row.push_back(st.standard_error());
      }
      ctx.check_mean("Pm=" + format_number(pm) + " arbitrary", total[2], arb);
    }
    ++stream;
    t.rows.push_back(row);
  }
}

// ---------------------------------------------------------------- outage

void run_outage(Context& ctx) {
  const ExperimentSpec& s = ctx.spec;
  const SystemConfig cfg = s.system();
  const auto fits = moschopoulos::fit_capacity(cfg, ctx.cache, s.Np);
  const auto law = moschopoulos::marginal_capacity_law(cfg, fits, s.h);
  double second = 0.0;
  for (const auto& [p, c] : law.terms) second += p * (c.point_mass ? 0.0 : c.series.variance() + c.mean() * c.mean());
  const double mean = law.mean();
  const double sd = std::sqrt(std::max(0.0, second - mean * mean));
  const auto grid = grid_or(s, [&] {
    std::vector<double> g;
    for (int i = 0; i <= 40; ++i) g.push_back((mean + 4.0 * sd) * i / 40.0);
    return g;
  }());

  ResultTable& t = ctx.table;
  t.notes.push_back("analytic outage uses the fitted-Gamma mixture; mc_model samples that same model, "
                    "mc_chain samples the exact channel chain");
  t.columns = {"threshold", "outage", "bound"};
  std::optional<mcsim::EmpiricalDistribution> model, chain;
  if (ctx.simulate()) {
    t.columns.insert(t.columns.end(), {"mc_model", "mc_model_se", "mc_chain", "mc_chain_se"});
    model.emplace(mcsim::collect_samples(s.replications, {s.seed, 1}, [&](Rng& r) {
      const auto kv = collision::mvhypergeom_sample(cfg.Fs, cfg.pool, r);
      return moschopoulos::sample_gamma_sum(moschopoulos::conditional_components(fits, kv), r);
    }, ctx.workers));
    chain.emplace(mcsim::collect_samples(s.replications, {s.seed, 2},
                                         [&](Rng& r) { return mcsim::sample_capacity(cfg, r); }, ctx.workers));
  }
  const double n = static_cast<double>(s.replications);
  for (double thr : grid) {
    const auto o = moschopoulos::outage_probability(law, thr);
    std::vector<double> row = {thr, o.value, o.truncation_bound};
    if (ctx.simulate()) {
      const double pm = model->ecdf(thr), pc = chain->ecdf(thr);
      const double sem = std::sqrt(pm * (1.0 - pm) / n), sec = std::sqrt(pc * (1.0 - pc) / n);
      row.insert(row.end(), {pm, sem, pc, sec});
      const double slack = kToleranceSigmas * sem + o.truncation_bound + 1.0 / n;
      if (std::abs(pm - o.value) > slack) {
        t.failures.push_back("threshold=" + format_number(thr) + ": model Monte Carlo " + format_number(pm) +
                             " vs analytic " + format_number(o.value));
      }
    }
    t.rows.push_back(row);
  }
}

// ---------------------------------------------------------------- custom

void run_custom(Context& ctx) {
  const ExperimentSpec& s = ctx.spec;
  ResultTable& t = ctx.table;
  const std::string axis = s.sweep.empty() ? "point" : s.sweep;
  t.columns = {axis, "analytic", "tight_lo", "tight_hi", "naive_lo", "naive_hi"};
  add_mc_columns(ctx);
  const auto grid = s.grid.empty() ? std::vector<double>{0.0} : s.grid;
  std::uint64_t stream = 0;
  for (double v : grid) {
    ExperimentSpec p = s;
    if (s.sweep == "Pm_dB") p.Pm_dB = v;
    else if (s.sweep == "psi_dB") p.psi_dB = v;
    else if (s.sweep == "Pn_dB") p.Pn_dB.assign(p.Pn_dB.size(), v);
    else if (s.sweep == "eta") p.eta = v;
    else if (s.sweep == "F") p.F = static_cast<int>(v);
    else if (s.sweep == "Fs") p.Fs = static_cast<int>(v);
    else if (s.sweep == "Fp") p.Fp.assign(p.Fp.size(), static_cast<int>(v));
    SystemConfig cfg = p.system();
    try {
      cfg.validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("grid value ") + format_number(v) + ": " + e.what());
    }
    auto row = mean_row(ctx, cfg, stream++, axis + "=" + format_number(v));
    row.insert(row.begin(), v);
    t.rows.push_back(row);
  }
}

}  // namespace

ResultTable run_experiment(const ExperimentSpec& spec, int workers) {
  Context ctx{spec, workers > 0 ? workers : mcsim::worker_count(), {}, {}};
  const std::string& e = spec.experiment;
  if (e == "fig2a" || e == "fig2b") {
    run_fig2(ctx);
  } else if (e == "fig3") {
    run_fig3(ctx);
  } else if (e == "fig4") {
    run_fig4(ctx);
  } else if (e == "fig5") {
    run_fig5(ctx);
  } else if (e == "fig6") {
    run_fig6(ctx);
  } else if (e == "fig7") {
    run_fig7(ctx);
  } else if (e == "fig8") {
    run_fig8(ctx);
  } else if (e == "outage") {
    run_outage(ctx);
  } else if (e == "custom") {
    run_custom(ctx);
  } else {
    throw ConfigError("unknown experiment '" + e + "'");
  }
  if (!ctx.simulate()) ctx.table.notes.push_back("replications=0: analytic columns only");
  return std::move(ctx.table);
}

void write_csv(std::ostream& os, const ExperimentSpec& spec, const ResultTable& table) {
  os << "# ofdmcr " << version() << '\n';
  for (const auto& [k, v] : spec.resolved()) os << "# " << k << '=' << v << '\n';
  for (const auto& n : table.notes) os << "# note: " << n << '\n';
  if (table.tolerance_ok()) {
    os << "# tolerance: ok\n";
  } else {
    for (const auto& f : table.failures) os << "# tolerance failure: " << f << '\n';
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

}  // namespace ofdmcr
