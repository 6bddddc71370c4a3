#pragma once

#include <vector>

#include "ofdmcr/collision.hpp"
#include "ofdmcr/fading.hpp"

namespace ofdmcr {

/// One SU's view of the primary network. Powers are linear.
struct SystemConfig {
  SubcarrierPool pool;      // F and per-PU occupancy
  int Fs = 0;               // subcarriers requested by the SU
  double Pm = 1.0;          // SU peak power
  std::vector<double> Pn;   // per-PU transmit power, one per pool.Fp entry
  double psi = 1.0;         // interference temperature
  double eta = 1.0;         // noise variance

  int F() const { return pool.F; }
  int pu_count() const { return pool.pu_count(); }
  /// Link seen on a subcarrier shared with PU n.
  LinkParams link(int n) const { return {Pm, Pn.at(n), psi, eta}; }
  /// Link on a free subcarrier (Pn unused, set to 1 to stay valid).
  LinkParams free_link() const { return {Pm, 1.0, psi, eta}; }
  /// Throws DomainError naming the violated invariant.
  void validate() const;
};

}  // namespace ofdmcr
