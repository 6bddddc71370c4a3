// End-to-end acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ofdmcr/capmoments.hpp"
#include "ofdmcr/collision.hpp"
#include "ofdmcr/config.hpp"
#include "ofdmcr/experiment.hpp"
#include "ofdmcr/extremes.hpp"
#include "ofdmcr/fading.hpp"
#include "ofdmcr/mcsim.hpp"
#include "ofdmcr/meancap.hpp"
#include "ofdmcr/moschopoulos.hpp"
#include "ofdmcr/scheduler.hpp"
#include "ofdmcr/units.hpp"

using namespace ofdmcr;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_work;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void info(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double db(double x) { return std::pow(10.0, x / 10.0); }

// n choose k by the multiplicative loop, independent of the library's log-gamma route.
double choose(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ------------------------------------------------------------------------ 1

Outcome collision_law() {
  Outcome o;
  std::mt19937_64 gen(101);
  double worst_sum = 0.0, worst_mean = 0.0, worst_pmf = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int F = 2 + static_cast<int>(gen() % 59);
    const int npu = 1 + static_cast<int>(gen() % 3);
    std::vector<int> Fp(npu);
    int left = F;
    for (int& f : Fp) {
      f = static_cast<int>(gen() % (left + 1));
      left -= f;
    }
    const int Fs = static_cast<int>(gen() % (F + 1));
    const SubcarrierPool pool{F, Fp};

    // Univariate law for the first PU.
    const auto [lo, hi] = collision::hypergeom_support(Fs, Fp[0], F);
    double sum = 0.0, mean = 0.0;
    for (int k = 0; k <= Fs; ++k) {
      const double ref = choose(Fp[0], k) * choose(F - Fp[0], Fs - k) / choose(F, Fs);
      const double p = collision::hypergeom_pmf(Fs, Fp[0], F, k);
      worst_pmf = std::max(worst_pmf, std::abs(p - ref) / std::max(ref, 1e-300) * (ref > 0));
      if (ref > 0) o.require(k >= lo && k <= hi, "support misses k");
      sum += p;
      mean += k * p;
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    worst_mean = std::max(worst_mean, std::abs(mean - collision::hypergeom_mean(Fs, Fp[0], F)));
    worst_mean = std::max(worst_mean, std::abs(mean - static_cast<double>(Fs) * Fp[0] / F));

    // Multivariate law, enumerated over all count vectors.
    double msum = 0.0;
    std::vector<double> mmean(npu, 0.0);
    std::function<void(int, int, double, std::vector<int>&)> walk = [&](int n, int rest, double ways,
                                                                        std::vector<int>& k) {
      if (n == npu) {
        const int free = F - pool.occupied();
        const double ref = ways * choose(free, rest) / choose(F, Fs);
        const double p = collision::mvhypergeom_pmf(Fs, pool, {k, rest});
        if (ref > 0) worst_pmf = std::max(worst_pmf, std::abs(p - ref) / ref);
        msum += p;
        for (int j = 0; j < npu; ++j) mmean[j] += k[j] * p;
        return;
      }
      for (int kn = 0; kn <= std::min(rest, Fp[n]); ++kn) {
        k[n] = kn;
        walk(n + 1, rest - kn, ways * choose(Fp[n], kn), k);
      }
    };
    std::vector<int> k(npu);
    walk(0, Fs, 1.0, k);
    worst_sum = std::max(worst_sum, std::abs(msum - 1.0));
    for (int j = 0; j < npu; ++j) {
      worst_mean = std::max(worst_mean, std::abs(mmean[j] - static_cast<double>(Fs) * Fp[j] / F));
    }
  }
  o.require(worst_sum <= 1e-10, "pmf sum off by " + fmt(worst_sum));
  o.require(worst_mean <= 1e-12, "mean off by " + fmt(worst_mean));
  o.require(worst_pmf <= 1e-10, "pmf relative error " + fmt(worst_pmf));
  o.info("max |sum-1|=" + fmt(worst_sum) + " max mean err=" + fmt(worst_mean));

  // Sampler at 10^6 draws on two pools.
  for (const auto& [F, Fs, Fp] : {std::tuple{60, 12, std::vector<int>{15, 20}}, {30, 9, std::vector<int>{4, 6, 8}}}) {
    const SubcarrierPool pool{F, Fp};
    Rng rng({102, static_cast<std::uint64_t>(F)});
    std::map<CollisionVector, std::uint64_t> counts;
    for (int i = 0; i < 1'000'000; ++i) ++counts[collision::mvhypergeom_sample(Fs, pool, rng)];
    std::vector<std::uint64_t> obs;
    std::vector<double> probs;
    for (const auto& kv : collision::mvhypergeom_support(Fs, pool)) {
      obs.push_back(counts[kv]);
      probs.push_back(collision::mvhypergeom_pmf(Fs, pool, kv));
    }
    const auto chi = mcsim::chi_square_gof(obs, probs);
    o.require(chi.p_value > 0.001, "chi-square p=" + fmt(chi.p_value) + " at F=" + std::to_string(F));
    o.info("chi-square p=" + fmt(chi.p_value));
  }
  return o;
}

// ------------------------------------------------------------------------ 2

Outcome distribution_family() {
  Outcome o;
  std::mt19937_64 gen(201);
  std::uniform_real_distribution<double> u(-10.0, 30.0);
  const std::size_t n = 100000;
  const double eps = mcsim::dkw_epsilon(n, 0.01);
  double worst = 0.0;
  int outside = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const LinkParams lp{db(u(gen)), db(u(gen)), db(u(gen)), db(u(gen) / 3.0)};
    Rng rng({202, static_cast<std::uint64_t>(trial)});
    std::vector<double> lam(n), si(n), sni(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double hm = rng.exponential(), hmp = rng.exponential(), g = rng.exponential();
      lam[i] = fading::adapted_power(lp.Pm, lp.psi, hmp) * hm;
      si[i] = lam[i] / (lp.Pn * g + lp.eta);
      sni[i] = lam[i] / lp.eta;
    }
    const double d[3] = {
        mcsim::EmpiricalDistribution(lam).ks_statistic([&](double x) { return fading::cdf_lambda(x, lp); }),
        mcsim::EmpiricalDistribution(si).ks_statistic([&](double x) { return fading::cdf_sinr_interference(x, lp); }),
        mcsim::EmpiricalDistribution(sni).ks_statistic(
            [&](double x) { return fading::cdf_sinr_nointerference(x, lp); })};
    for (double v : d) {
      worst = std::max(worst, v);
      outside += v > eps;
    }
  }
  o.require(outside == 0, std::to_string(outside) + " of 60 ECDFs left the band");
  o.info("max KS=" + fmt(worst) + " band=" + fmt(eps));
  return o;
}

// ------------------------------------------------------------------------ 3

Outcome gamma_fidelity() {
  Outcome o;
  const LinkParams sets[2] = {{db(20), db(10), db(0), 1.0}, {db(40), db(0), db(20), 0.01}};
  const auto rule = specfun::gcq_rule(capmoments::kDefaultOrder);
  const std::size_t n = 100000;
  for (int s = 0; s < 2; ++s) {
    const LinkParams& lp = sets[s];
    const auto gI = capmoments::match_gamma(capmoments::moments_interference(lp, rule));
    const auto gN = capmoments::match_gamma(capmoments::moments_nointerference(lp, rule));
    Rng rng({301, static_cast<std::uint64_t>(s)});
    std::vector<double> cI(n), cN(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double hm = rng.exponential(), hmp = rng.exponential(), g = rng.exponential();
      cI[i] = std::log1p(mcsim::sinr_interference(lp, hm, hmp, g));
      cN[i] = std::log1p(mcsim::sinr_nointerference(lp, hm, hmp));
    }
    auto gamma_cdf = [](const GammaParams& g) {
      return [g](double x) { return x <= 0 ? 0.0 : specfun::regularized_gamma_p(g.alpha, x / g.beta); };
    };
    const double kI = mcsim::EmpiricalDistribution(cI).ks_statistic(gamma_cdf(gI));
    const double kN = mcsim::EmpiricalDistribution(cN).ks_statistic(gamma_cdf(gN));
    const std::string tag = s == 0 ? "(a)" : "(b)";
    o.require(kI < 0.05, tag + " interference KS=" + fmt(kI));
    o.require(kN < 0.05, tag + " no-interference KS=" + fmt(kN));
    o.info(tag + " KS I=" + fmt(kI) + " NI=" + fmt(kN));
  }
  return o;
}

// ------------------------------------------------------------------------ 4

Outcome moschopoulos_machinery() {
  Outcome o;
  const std::vector<GammaParams> s4{{1.5, 1.0}, {2.0, 1.2}, {1.0, 1.5}, {2.5, 1.1}};
  const std::vector<GammaParams> s2{{2.0, 1.0}, {3.0, 1.5}};
  const std::size_t n = 1'000'000;
  int idx = 0;
  for (const auto* comps : {&s4, &s2}) {
    const auto series = moschopoulos::build_series(*comps, 25);
    std::mt19937_64 gen(401 + idx);
    std::vector<double> draws(n);
    for (auto& d : draws) {
      d = 0.0;
      for (const auto& c : *comps) d += std::gamma_distribution<double>(c.alpha, c.beta)(gen);
    }
    const double ks = mcsim::EmpiricalDistribution(std::move(draws)).ks_statistic(
        [&](double y) { return moschopoulos::series_cdf(series, y).value; });
    const std::string tag = "S=" + std::to_string(comps->size());
    o.require(ks < 0.01, tag + " KS=" + fmt(ks));
    o.info(tag + " KS=" + fmt(ks) + " dropped mass=" + fmt(series.deficit));
    ++idx;
  }
  const auto eq = moschopoulos::build_series({{1.5, 2.0}, {2.5, 2.0}, {0.7, 2.0}}, 25);
  double worst = 0.0;
  for (double y : {0.1, 1.0, 5.0, 12.0, 30.0}) {
    worst = std::max(worst, std::abs(moschopoulos::series_cdf(eq, y).value - specfun::regularized_gamma_p(4.7, y / 2)));
  }
  o.require(worst <= 1e-12, "equal-scale collapse error " + fmt(worst));
  const auto two = moschopoulos::build_series_to_tolerance({{1.0, 1.0}, {1.0, 2.0}});
  const double err = std::abs(moschopoulos::series_pdf(two, 1.0).value - (std::exp(-0.5) - std::exp(-1.0)));
  o.require(err <= 1e-8, "two-exponential density error " + fmt(err));
  o.info("collapse err=" + fmt(worst) + " two-exp err=" + fmt(err));
  return o;
}

// ------------------------------------------------------------------------ 5

double saturation_ratio(const std::vector<double>& x, const std::vector<double>& y) {
  double peak = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) peak = std::max(peak, (y[i] - y[i - 1]) / (x[i] - x[i - 1]));
  const std::size_t n = x.size() - 1;
  return ((y[n] - y[n - 1]) / (x[n] - x[n - 1])) / peak;
}

Outcome theorem_one() {
  Outcome o;
  // Mixture mean of the series marginal against the closed form.
  capmoments::MomentCache cache;
  double worst = 0.0;
  for (double psi : {-5.0, 0.0, 5.0}) {
    ExperimentSpec s = experiment_defaults("fig4");
    s.psi_dB = psi;
    const SystemConfig cfg = s.system();
    const auto fits = moschopoulos::fit_capacity(cfg, cache);
    const auto law = moschopoulos::marginal_capacity_law(cfg, fits);
    const double closed = meancap::avg_capacity_multi_pu(cfg, cache);
    worst = std::max(worst, std::abs(law.mean() - closed));
  }
  o.require(worst <= 1e-6, "mixture mean differs by " + fmt(worst));
  o.info("mixture vs closed form " + fmt(worst));

  for (const char* name : {"fig4", "fig5"}) {
    const ExperimentSpec s = experiment_defaults(name);
    const ResultTable t = run_experiment(s);
    // columns: curve, x, analytic, bounds x4, mc_mean, mc_se
    int misses = 0;
    double worst_z = 0.0;
    std::map<double, std::pair<std::vector<double>, std::vector<double>>> curves;
    for (const auto& r : t.rows) {
      const double z = std::abs(r[7] - r[2]) / r[8];
      worst_z = std::max(worst_z, z);
      misses += z > 3.0;
      curves[r[0]].first.push_back(r[1]);
      curves[r[0]].second.push_back(r[2]);
    }
    o.require(misses == 0, std::string(name) + ": " + std::to_string(misses) + " of " +
                               std::to_string(t.rows.size()) + " points beyond 3 SE");
    double worst_sat = 0.0;
    for (const auto& [c, xy] : curves) worst_sat = std::max(worst_sat, saturation_ratio(xy.first, xy.second));
    o.require(worst_sat < 0.02, std::string(name) + ": final/peak slope " + fmt(worst_sat));
    o.info(std::string(name) + " max z=" + fmt(worst_z) + " final/peak slope<=" + fmt(worst_sat));
  }
  return o;
}

// ------------------------------------------------------------------------ 6

Outcome multi_pu() {
  Outcome o;
  const ExperimentSpec s = experiment_defaults("fig6");
  const ResultTable t = run_experiment(s);
  // columns: N, Pm, analytic, tight_lo, tight_hi, mc_mean, mc_se
  std::map<double, std::vector<std::pair<double, double>>> by_pm;
  int outside = 0;
  for (const auto& r : t.rows) {
    by_pm[r[1]].push_back({r[0], r[2]});
    const bool a_in = r[3] <= r[2] && r[2] <= r[4];
    const bool m_in = r[3] <= r[5] && r[5] <= r[4];
    outside += !a_in + !m_in;
  }
  int not_decreasing = 0;
  for (auto& [pm, v] : by_pm) {
    std::sort(v.begin(), v.end());
    for (std::size_t i = 1; i < v.size(); ++i) not_decreasing += !(v[i].second < v[i - 1].second);
  }
  o.require(not_decreasing == 0, std::to_string(not_decreasing) + " non-decreasing steps in N");
  o.require(outside == 0, std::to_string(outside) + " means outside the tight bounds");
  o.info(std::to_string(t.rows.size()) + " points, bounds hold for analytic and Monte Carlo");
  return o;
}

// ------------------------------------------------------------------------ 7

Outcome scaling() {
  Outcome o;
  const ExperimentSpec s = experiment_defaults("fig7");
  const SystemConfig cfg = s.system();
  capmoments::MomentCache cache;
  const auto pts = meancap::convergence_diagnostic(cfg, 0, {1000, 10000, 100000}, cache);
  const double slope = std::log(std::abs(pts[2].avg - pts[2].limit) / std::abs(pts[0].avg - pts[0].limit)) /
                       std::log(100.0);
  o.require(std::abs(slope + 1.0) <= 0.01, "slope " + fmt(slope));
  const auto mid = meancap::convergence_diagnostic(cfg, 0, {9999, 10000}, cache).back();
  const bool ratios = mid.increment_ratio >= 0.95 && mid.increment_ratio <= 1.0 && mid.error_ratio >= 0.95 &&
                      mid.error_ratio <= 1.0;
  o.require(ratios, "ratios " + fmt(mid.increment_ratio) + ", " + fmt(mid.error_ratio));
  SystemConfig twice = cfg;
  twice.Fs *= 2;
  const double a1 = meancap::avg_capacity_multi_pu(cfg, cache);
  const double a2 = meancap::avg_capacity_multi_pu(twice, cache);
  o.require(std::abs(a2 / a1 - 2.0) <= 1e-14, "Fs scaling " + fmt(a2 / a1));
  o.info("slope=" + fmt(slope) + " ratios=" + fmt(mid.increment_ratio) + "," + fmt(mid.error_ratio) +
         " avg(2Fs)/avg(Fs)=" + fmt(a2 / a1));
  return o;
}

// ------------------------------------------------------------------------ 8

Outcome extremes_check() {
  Outcome o;
  extremes::Law expo{[](double x) { return x <= 0 ? 0.0 : -std::expm1(-x); },
                     [](double x) { return x < 0 ? 0.0 : std::exp(-x); },
                     [](double x) { return x <= 0 ? 1.0 : std::exp(-x); }};
  double worst = 0.0;
  for (int M : {10, 200, 1000, 100000}) {
    const auto gp = extremes::gumbel_params(expo, M);
    worst = std::max({worst, std::abs(gp.bM - std::log(static_cast<double>(M))), std::abs(gp.aM - 1.0)});
  }
  o.require(worst <= 1e-10, "exponential closed forms off by " + fmt(worst));

  const ExperimentSpec s = experiment_defaults("fig8");
  const SystemConfig cfg = s.system();
  capmoments::MomentCache cache;
  const auto fits = moschopoulos::fit_capacity(cfg, cache);
  const auto law = moschopoulos::marginal_capacity_law(cfg, fits);
  const auto view = extremes::marginal_law(law);
  auto draw = [&](Rng& r) {
    const auto kv = collision::mvhypergeom_sample(cfg.Fs, cfg.pool, r);
    return moschopoulos::sample_gamma_sum(moschopoulos::conditional_components(fits, kv), r);
  };
  const auto gp = extremes::gumbel_params(view, 200);
  const double asym = extremes::asymptotic_max_capacity(gp);
  const auto mc = mcsim::estimate_mean(100000, {801, 0}, [&](Rng& r) {
    double best = -1.0;
    for (int m = 0; m < 200; ++m) best = std::max(best, draw(r));
    return best;
  });
  const double rel = std::abs(asym - mc.mean) / mc.mean;
  o.require(rel < 0.03, "E[max] asymptote off by " + fmt(100 * rel) + "%");

  std::vector<double> ks;
  for (int M : {10, 100, 1000}) {
    Rng rng({802, static_cast<std::uint64_t>(M)});
    ks.push_back(extremes::gumbel_cdf_distance(draw, extremes::gumbel_params(view, M), 20000, rng));
  }
  o.require(ks[1] < ks[0] && ks[2] < ks[1], "KS not decreasing: " + fmt(ks[0]) + ", " + fmt(ks[1]) + ", " + fmt(ks[2]));
  o.info("asymptote " + fmt(asym) + " vs " + fmt(mc.mean) + " KS " + fmt(ks[0]) + ">" + fmt(ks[1]) + ">" + fmt(ks[2]));
  return o;
}

// ------------------------------------------------------------------------ 9

Outcome scheduler_check() {
  Outcome o;
  const SystemConfig cfg = experiment_defaults("fig8").system();
  int violations = 0;
  for (std::uint64_t run = 0; run < 10000; ++run) {
    AllocationState st;
    scheduler::run_opportunistic(cfg, 40, 5, {{901, 0}, run}, &st);
    violations += !st.check(cfg.Fs).empty();
  }
  o.require(violations == 0, std::to_string(violations) + " orthogonality violations");

  SystemConfig tiny;
  tiny.pool = {6, {2}};
  tiny.Fs = 2;
  tiny.Pn = {1.0};
  const auto chk = scheduler::stepwise_collision_pmf_check(tiny, {2, 2}, 2, 1'000'000, {902, 0});
  o.require(chk.test.p_value > 0.001, "step-2 chi-square p=" + fmt(chk.test.p_value));

  mcsim::RunningStats d1, d2, d3;
  for (std::uint64_t run = 0; run < 2000; ++run) {
    const scheduler::RunStreams st{{903, 0}, run};
    const double o40 = scheduler::run_opportunistic(cfg, 40, 5, st).sum_capacity;
    const double o10 = scheduler::run_opportunistic(cfg, 10, 5, st).sum_capacity;
    const double arb = scheduler::run_arbitrary(cfg, 40, 5, st).sum_capacity;
    const double col = scheduler::run_colliding_baseline(cfg, 40, 5, st).sum_capacity;
    d1.add(o40 - o10);
    d2.add(o10 - arb);
    d3.add(arb - col);
  }
  const double z = 1.645;  // one-sided 95%
  o.require(d1.mean - z * d1.standard_error() > 0, "opp(40) > opp(10) not shown");
  o.require(d2.mean - z * d2.standard_error() > 0, "opp(10) > arbitrary not shown");
  o.require(d3.mean - z * d3.standard_error() > 0, "arbitrary > colliding not shown");

  capmoments::MomentCache cache;
  const auto fits = moschopoulos::fit_capacity(cfg, cache);
  const auto approx = scheduler::sum_capacity_approximation(cfg, fits, 200, 5);
  mcsim::RunningStats mc;
  for (std::uint64_t run = 0; run < 2000; ++run) {
    mc.add(scheduler::run_opportunistic(cfg, 200, 5, {{904, 0}, run}).sum_capacity);
  }
  const double rel = std::abs(approx.value - mc.mean) / mc.mean;
  o.require(rel < 0.10, "sum-capacity approximation off by " + fmt(100 * rel) + "%");
  o.info("p=" + fmt(chk.test.p_value) + " gaps " + fmt(d1.mean) + "/" + fmt(d2.mean) + "/" + fmt(d3.mean) +
         " approx " + fmt(approx.value) + " vs " + fmt(mc.mean));
  return o;
}

// ----------------------------------------------------------------------- 10

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  fs::create_directories(g_work);
  const fs::path cfg = g_work / "determinism.cfg";
  std::ofstream(cfg) << "experiment=custom\nsweep=psi_dB\ngrid=-5,0,5\nreplications=20000\nseed=77\n";
  // Same config, same output path: the header records the path too.
  const fs::path csv = g_work / "determinism.csv";
  std::string out[2];
  for (int i = 0; i < 2; ++i) {
    fs::remove(csv);
    const std::string cmd = "\"" + g_cli + "\" run \"" + cfg.string() + "\" --out \"" + csv.string() + "\"";
    const int rc = std::system(cmd.c_str());
    o.require(rc == 0, "run " + std::to_string(i) + " exited " + std::to_string(rc));
    out[i] = slurp(csv);
  }
  o.require(!out[0].empty() && out[0] == out[1], "outputs differ");
  o.info(std::to_string(out[0].size()) + " bytes identical");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <ofdmcr-cli> <work-dir>\n");
    return 2;
  }
  g_cli = argv[1];
  g_work = argv[2];
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"collision law exactness", collision_law},
      {"distribution family", distribution_family},
      {"gamma approximation fidelity", gamma_fidelity},
      {"sum-of-gamma series", moschopoulos_machinery},
      {"mean capacity consistency", theorem_one},
      {"multiple PUs and bounds", multi_pu},
      {"scaling and convergence", scaling},
      {"extremes", extremes_check},
      {"scheduler", scheduler_check},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
