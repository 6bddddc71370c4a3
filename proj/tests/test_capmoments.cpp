#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "doctest.h"
#include "ofdmcr/capmoments.hpp"
#include "ofdmcr/error.hpp"
#include "ofdmcr/fading.hpp"
#include "ofdmcr/mcsim.hpp"
#include "ofdmcr/rng.hpp"

using namespace ofdmcr;
using namespace ofdmcr::capmoments;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// E[C^p] = int p u^{p-1} P(S > e^u - 1) du, evaluated by tanh-sinh on the half line.
double moment_oracle(const std::function<double(double)>& sf, int p) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate([&](double u) { return p * std::pow(u, p - 1) * sf(std::expm1(u)); }, 0.0, kInf, 1e-12);
}

double mean_i_oracle(const LinkParams& lp) {
  return moment_oracle([&](double s) { return fading::sf_sinr_interference(s, lp); }, 1);
}
double mean_ni_oracle(const LinkParams& lp) {
  return moment_oracle([&](double s) { return fading::sf_sinr_nointerference(s, lp); }, 1);
}

struct McMoments {
  mcsim::RunningStats c, c2;
};

McMoments simulate(const LinkParams& lp, bool interference, int n, std::uint64_t seed) {
  Rng rng({seed, 0});
  McMoments out;
  for (int i = 0; i < n; ++i) {
    const double hm = rng.exponential(), hmp = rng.exponential(), g = rng.exponential();
    const double s = interference ? mcsim::sinr_interference(lp, hm, hmp, g) : mcsim::sinr_nointerference(lp, hm, hmp);
    const double c = std::log1p(s);
    out.c.add(c);
    out.c2.add(c * c);
  }
  return out;
}

std::vector<LinkParams> random_links(int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> db(-10.0, 25.0);
  std::vector<LinkParams> out;
  for (int i = 0; i < count; ++i) {
    out.push_back({std::pow(10.0, db(gen) / 10), std::pow(10.0, db(gen) / 10), std::pow(10.0, db(gen) / 10),
                   std::pow(10.0, db(gen) / 40)});
  }
  return out;
}

}  // namespace

TEST_CASE("interference mean against direct integration") {
  const LinkParams lp{100, 10, 1, 1};
  CHECK(mean_capacity_interference(lp) == doctest::Approx(mean_i_oracle(lp)).epsilon(1e-5));
  for (const auto& r : random_links(20, 31)) {
    CHECK(mean_capacity_interference(r) == doctest::Approx(mean_i_oracle(r)).epsilon(1e-5));
  }
  // Pn -> 0 removes the interference.
  const LinkParams weak{100, 1e-9, 1, 1};
  CHECK(mean_capacity_interference(weak) == doctest::Approx(mean_capacity_nointerference(weak)).epsilon(1e-4));
}

TEST_CASE("equal-power branch is continuous") {
  const LinkParams eq{10, 10, 2, 1};
  const LinkParams near{10, 10 * (1 + 2e-6), 2, 1};
  CHECK(mean_capacity_interference(eq) == doctest::Approx(mean_i_oracle(eq)).epsilon(1e-6));
  CHECK(mean_capacity_interference(eq) == doctest::Approx(mean_capacity_interference(near)).epsilon(1e-5));
}

TEST_CASE("no-interference mean") {
  // Psi large: the cap never binds and the mean is e^{eta/Pm} E1(eta/Pm).
  const LinkParams open{100, 1, 1e9, 1};
  const double expected = std::exp(0.01) * boost::math::expint(1, 0.01);
  CHECK(expected == doctest::Approx(4.0785).epsilon(1e-4));
  CHECK(mean_capacity_nointerference(open) == doctest::Approx(expected).epsilon(1e-6));
  // psi == eta hits the limit branch.
  const LinkParams lim{100, 1, 1, 1};
  CHECK(mean_capacity_nointerference(lim) == doctest::Approx(mean_ni_oracle(lim)).epsilon(1e-6));
  const LinkParams off{100, 1, 1 + 1e-7, 1};
  CHECK(mean_capacity_nointerference(off) == doctest::Approx(mean_capacity_nointerference(lim)).epsilon(1e-6));
  for (const auto& r : random_links(20, 32)) {
    CHECK(mean_capacity_nointerference(r) == doctest::Approx(mean_ni_oracle(r)).epsilon(1e-6));
  }
}

TEST_CASE("means and second moments against Monte Carlo") {
  const LinkParams lp{100, 10, 1, 1};
  const auto rule = specfun::gcq_rule(kDefaultOrder);
  const int n = 1'000'000;
  const auto mi = simulate(lp, true, n, 41);
  const auto mn = simulate(lp, false, n, 42);
  CHECK(std::abs(mean_capacity_interference(lp) - mi.c.mean) < 3 * mi.c.standard_error());
  CHECK(std::abs(mean_capacity_nointerference(lp) - mn.c.mean) < 3 * mn.c.standard_error());
  CHECK(std::abs(second_moment_interference(lp, rule) - mi.c2.mean) < 3 * mi.c2.standard_error());
  CHECK(std::abs(second_moment_nointerference(lp, rule) - mn.c2.mean) < 3 * mn.c2.standard_error());
}

TEST_CASE("Chebyshev second moments against adaptive quadrature") {
  const auto rule = specfun::gcq_rule(kDefaultOrder);
  auto links = random_links(20, 33);
  links.push_back({100, 10, 1, 1});
  for (const auto& lp : links) {
    const double oi = moment_oracle([&](double s) { return fading::sf_sinr_interference(s, lp); }, 2);
    const double on = moment_oracle([&](double s) { return fading::sf_sinr_nointerference(s, lp); }, 2);
    CHECK(second_moment_interference(lp, rule) == doctest::Approx(oi).epsilon(1e-4));
    CHECK(second_moment_nointerference(lp, rule) == doctest::Approx(on).epsilon(1e-4));
    const auto mi = moments_interference(lp, rule);
    const auto mn = moments_nointerference(lp, rule);
    CHECK(mi.second_moment >= mi.mean * mi.mean);
    CHECK(mn.second_moment >= mn.mean * mn.mean);
    CHECK(mi.variance == doctest::Approx(mi.second_moment - mi.mean * mi.mean));
    CHECK(mi.mean <= mn.mean);
  }
  // Sanity on a known integrand: int 2 log(1+s) e^{-s} / (1+s) ds.
  const double sinr = second_moment_sinr_domain([](double s) { return std::exp(-s); }, rule);
  boost::math::quadrature::exp_sinh<double> q;
  const double ref = q.integrate([](double s) { return 2 * std::log1p(s) * std::exp(-s) / (1 + s); }, 0.0, kInf);
  CHECK(sinr == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("gamma matching") {
  const auto g = match_gamma(CapacityMoments::from(2.0, 5.0));
  CHECK(g.alpha == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(g.beta == doctest::Approx(0.5).epsilon(1e-15));
  for (auto [a, b] : {std::pair{4.0, 0.5}, {0.3, 7.0}, {120.0, 0.01}}) {
    const GammaParams p{a, b};
    const auto back = match_gamma(CapacityMoments::from(p.mean(), p.variance() + p.mean() * p.mean()));
    CHECK(back.alpha == doctest::Approx(a).epsilon(1e-12));
    CHECK(back.beta == doctest::Approx(b).epsilon(1e-12));
  }
  CHECK_THROWS_AS(match_gamma(CapacityMoments::from(2.0, 4.0)), DomainError);
  CHECK_THROWS_AS(match_gamma(CapacityMoments::from(0.0, 1.0)), DomainError);
}

TEST_CASE("gamma fit is close to the simulated capacity law") {
  const LinkParams lp{100, 10, 1, 1};
  const auto g = match_gamma(moments_interference(lp, specfun::gcq_rule(kDefaultOrder)));
  Rng rng({43, 0});
  std::vector<double> c;
  for (int i = 0; i < 200000; ++i) {
    const double hm = rng.exponential(), hmp = rng.exponential(), gg = rng.exponential();
    c.push_back(std::log1p(mcsim::sinr_interference(lp, hm, hmp, gg)));
  }
  const double ks = mcsim::EmpiricalDistribution(c).ks_statistic(
      [&](double u) { return u <= 0 ? 0.0 : specfun::regularized_gamma_p(g.alpha, u / g.beta); });
  MESSAGE("gamma fit KS at Pm=20dB Pn=10dB psi=0dB: " << ks);
  CHECK(ks < 0.2);
}

TEST_CASE("moment cache") {
  MomentCache cache;
  const LinkParams lp{100, 10, 1, 1};
  const auto a = cache.interference(lp);
  const auto b = cache.interference(lp);
  CHECK(a.mean == b.mean);
  CHECK(cache.size() == 1);
  // Pn does not matter without interference.
  cache.nointerference(lp);
  cache.nointerference({100, 3, 1, 1});
  CHECK(cache.size() == 2);
  std::vector<std::jthread> ts;
  std::vector<double> got(8);
  for (int i = 0; i < 8; ++i) {
    ts.emplace_back([&, i] { got[i] = cache.interference({100, 1.0 + i % 2, 1, 1}).mean; });
  }
  ts.clear();
  for (int i = 0; i < 8; ++i) CHECK(got[i] == got[i % 2]);
  CHECK(cache.size() == 4);
}
