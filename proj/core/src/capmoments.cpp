#include "ofdmcr/capmoments.hpp"

#include <cmath>
#include <mutex>

#include "ofdmcr/error.hpp"
#include "ofdmcr/quadrature.hpp"

namespace ofdmcr::capmoments {
namespace {

double G(double z) { return specfun::expint_e1_scaled(z); }

double mean_by_density(const LinkParams& lp) {
  auto g = [&](double x) { return std::log1p(x) * fading::pdf_sinr_interference(x, lp); };
  const auto r = quad::integrate_to_infinity(g, 0.0, {0.0, 1e-9});
  if (!r.converged) throw NumericalError("mean_capacity_interference: limit-branch quadrature did not converge");
  return r.value;
}

double second_moment_capacity_domain(const std::function<double(double)>& sf_sinr, double mean,
                                     const specfun::QuadratureRule& rule) {
  const double c = std::max(mean, 1.0);
  const double sum = rule.apply([&](double t) {
    const double u = c * t;
    return 2.0 * u * fading::capacity_sf(sf_sinr, u);
  });
  return c * sum;
}

}  // namespace

double mean_capacity_interference(const LinkParams& lp) {
  lp.validate();
  const double Pm = lp.Pm, Pn = lp.Pn, psi = lp.psi, eta = lp.eta;
  if (std::abs(1.0 - Pn / Pm) < 1e-6) return mean_by_density(lp);

  const double c = -std::expm1(-psi / Pm);
  const double closed = c / (1.0 - Pn / Pm) * (G(eta / Pm) - G(eta / Pn));

  auto residual = [&](double x) {
    if (x <= 0.0) return std::exp(-psi / Pm);
    const double xB = (eta * x + psi) * (1.0 / Pn + x / Pm);
    const double B = xB / x;
    const double scaled = B > 1e8 ? psi / (Pn * xB) : psi / (x * Pn) * G(B);
    return scaled * std::exp(-(psi + x * eta) / Pm) / (1.0 + x);
  };
  const auto r = quad::integrate_to_infinity(residual, 0.0, {0.0, 1e-7});
  if (!r.converged) throw NumericalError("mean_capacity_interference: residual quadrature did not converge");
  return closed + r.value;
}

double mean_capacity_nointerference(const LinkParams& lp) {
  lp.validate();
  const double Pm = lp.Pm, psi = lp.psi, eta = lp.eta;
  const double b = eta / Pm;
  if (std::abs(psi - eta) < 1e-9 * eta) {
    return G(b) + std::exp(-b) - (1.0 + b) * specfun::expint_e1(b);
  }
  const double tail = psi / Pm > 700.0 ? 0.0 : specfun::expint_e1(psi / Pm);
  return G(b) * (1.0 + std::exp(-psi / Pm) * eta / (psi - eta)) + psi / (eta - psi) * tail;
}

double second_moment_interference(const LinkParams& lp, const specfun::QuadratureRule& rule) {
  auto sf = [&](double s) { return fading::sf_sinr_interference(s, lp); };
  return second_moment_capacity_domain(sf, mean_capacity_interference(lp), rule);
}

double second_moment_nointerference(const LinkParams& lp, const specfun::QuadratureRule& rule) {
  auto sf = [&](double s) { return fading::sf_sinr_nointerference(s, lp); };
  return second_moment_capacity_domain(sf, mean_capacity_nointerference(lp), rule);
}

double second_moment_sinr_domain(const std::function<double(double)>& sf_sinr,
                                 const specfun::QuadratureRule& rule) {
  return rule.apply([&](double s) { return 2.0 * std::log1p(s) / (1.0 + s) * sf_sinr(s); });
}

CapacityMoments moments_interference(const LinkParams& lp, const specfun::QuadratureRule& rule) {
  const double mean = mean_capacity_interference(lp);
  auto sf = [&](double s) { return fading::sf_sinr_interference(s, lp); };
  return CapacityMoments::from(mean, second_moment_capacity_domain(sf, mean, rule));
}

CapacityMoments moments_nointerference(const LinkParams& lp, const specfun::QuadratureRule& rule) {
  lp.validate();
  const double mean = mean_capacity_nointerference(lp);
  auto sf = [&](double s) { return fading::sf_sinr_nointerference(s, lp); };
  return CapacityMoments::from(mean, second_moment_capacity_domain(sf, mean, rule));
}

GammaParams match_gamma(const CapacityMoments& m) {
  if (!(m.mean > 0.0)) throw DomainError("match_gamma: mean > 0 violated");
  if (!(m.variance > 0.0)) throw DomainError("match_gamma: zero variance, degenerate fit");
  return {m.mean * m.mean / m.variance, m.variance / m.mean};
}

CapacityMoments MomentCache::interference(const LinkParams& lp, int order) {
  return lookup({1, lp.Pm, lp.Pn, lp.psi, lp.eta, order}, lp, order);
}

CapacityMoments MomentCache::nointerference(const LinkParams& lp, int order) {
  // Pn plays no role without interference; keep it out of the key.
  return lookup({0, lp.Pm, 0.0, lp.psi, lp.eta, order}, lp, order);
}

std::size_t MomentCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

CapacityMoments MomentCache::lookup(const Key& key, const LinkParams& lp, int order) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  auto rule_it = rules_.find(order);
  if (rule_it == rules_.end()) rule_it = rules_.emplace(order, specfun::gcq_rule(order)).first;
  const CapacityMoments m = std::get<0>(key) == 1 ? moments_interference(lp, rule_it->second)
                                                  : moments_nointerference(lp, rule_it->second);
  entries_.emplace(key, m);
  return m;
}

}  // namespace capmoments
