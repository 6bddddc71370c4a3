#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "doctest.h"
#include "ofdmcr/error.hpp"
#include "ofdmcr/extremes.hpp"
#include "ofdmcr/units.hpp"

using namespace ofdmcr;
using namespace ofdmcr::extremes;

namespace {

Law exponential_law() {
  return {[](double x) { return x <= 0 ? 0.0 : -std::expm1(-x); }, [](double x) { return x < 0 ? 0.0 : std::exp(-x); },
          [](double x) { return x <= 0 ? 1.0 : std::exp(-x); }};
}

}  // namespace

TEST_CASE("exponential maximum") {
  for (int M : {2, 10, 40, 1000, 1000000}) {
    const auto gp = gumbel_params(exponential_law(), M);
    CHECK(gp.bM == doctest::Approx(std::log(static_cast<double>(M))).epsilon(1e-9));
    CHECK(gp.aM == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(asymptotic_max_capacity(gp) == doctest::Approx(std::log(static_cast<double>(M)) + kEulerGamma).epsilon(1e-9));
  }
  CHECK_THROWS_AS(gumbel_params(exponential_law(), 1), DomainError);
}

TEST_CASE("position inverts the series law") {
  const auto s = moschopoulos::build_series_to_tolerance({{1.5, 1.0}, {2.0, 1.2}, {1.0, 1.5}, {2.5, 1.1}});
  const auto law = series_law(s);
  for (int M : {5, 40, 500}) {
    const auto gp = gumbel_params(law, M);
    CHECK(law.cdf(gp.bM) == doctest::Approx(1.0 - 1.0 / M).epsilon(1e-9));
    CHECK(gp.aM == doctest::Approx(1.0 / (M * law.pdf(gp.bM))).epsilon(1e-12));
  }
  // One gamma: the position is the gamma quantile.
  const auto one = moschopoulos::build_series({{3.0, 0.5}}, 5);
  const auto gp = gumbel_params(series_law(one), 40);
  CHECK(gp.bM == doctest::Approx(0.5 * boost::math::gamma_q_inv(3.0, 1.0 / 40)).epsilon(1e-9));
}

TEST_CASE("growth function flattens in the tail") {
  const auto one = moschopoulos::build_series({{3.0, 0.5}}, 5);
  const auto pts = von_mises_check(one, {5.0, 20.0, 80.0, 300.0});
  REQUIRE(pts.size() == 4);
  for (const auto& p : pts) CHECK(p.valid);
  // g(x) -> beta; the derivative goes to zero.
  CHECK(pts.back().g == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(pts[3].g - pts[2].g) < std::abs(pts[1].g - pts[0].g));
  // Far past where the truncation still resolves the tail, points are flagged.
  const auto s = moschopoulos::build_series({{1.0, 1.0}, {1.0, 3.0}}, 3);
  const auto far = von_mises_check(s, {1.0, 2000.0});
  CHECK_FALSE(far[1].valid);
}

TEST_CASE("normalised maxima approach the Gumbel law") {
  Rng rng({91, 0});
  auto draw = [](Rng& r) { return r.exponential(); };
  const double d10 = gumbel_cdf_distance(draw, gumbel_params(exponential_law(), 10), 20000, rng);
  const double d1000 = gumbel_cdf_distance(draw, gumbel_params(exponential_law(), 1000), 20000, rng);
  CHECK(d10 < 0.05);
  CHECK(d1000 < d10 + 0.01);
  const auto s = moschopoulos::build_series_to_tolerance({{2.0, 1.0}, {3.0, 1.5}});
  Rng rng2({92, 0});
  const double a = gumbel_cdf_distance(s, 4, 20000, rng2);
  const double b = gumbel_cdf_distance(s, 256, 20000, rng2);
  CHECK(b < a);
}

TEST_CASE("termwise closed expression") {
  const auto one = moschopoulos::build_series({{3.0, 0.5}}, 5);
  // With a single term the argument is (1 - 1/M)/beta and needs to be below 1.
  const auto ok = theorem3_bM_formula(one, 2);
  CHECK_FALSE(ok.valid);
  CHECK(std::isnan(ok.value));
  const auto wide = moschopoulos::build_series({{3.0, 2.0}}, 5);
  const auto v = theorem3_bM_formula(wide, 10);
  CHECK(v.valid);
  CHECK(v.value == doctest::Approx(boost::math::gamma_p_inv(3.0, 0.9 / 2.0)).epsilon(1e-9));
}
