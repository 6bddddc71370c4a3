#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ofdmcr/system.hpp"

namespace ofdmcr {

/// Fully resolved experiment parameters. Powers are in dB here and nowhere
/// else; system() is the single conversion point to linear units.
struct ExperimentSpec {
  std::string experiment;
  int F = 128;
  int Fs = 20;
  std::vector<int> Fp{30};
  double Pm_dB = 20.0;
  std::vector<double> Pn_dB{10.0};  // one value is shared by every PU
  double psi_dB = 0.0;
  double eta = 1.0;
  int M = 40;
  int M_hat = 5;
  std::uint64_t replications = 10000;
  std::uint64_t seed = 1;
  int h = 25;
  int Np = 50;
  std::string out;
  std::string sweep;         // custom only: which key the grid varies
  std::vector<double> grid;  // sweep values; empty means the experiment's default grid

  SystemConfig system() const;
  /// (key, value) pairs in canonical order, for the CSV header.
  std::vector<std::pair<std::string, std::string>> resolved() const;
};

struct ExperimentInfo {
  std::string name;
  std::string description;
};

const std::vector<ExperimentInfo>& experiment_catalog();

/// Defaults for a named experiment; throws ConfigError for unknown names.
ExperimentSpec experiment_defaults(const std::string& name);

/// Parses `key=value` lines ('#' starts a comment). `experiment` picks the
/// defaults, every other key overrides one field. Unknown keys, duplicates,
/// malformed values and violated invariants throw ConfigError carrying the
/// offending line number.
ExperimentSpec validate_config(std::string_view text);

/// Shortest round-trip decimal form used everywhere in the output.
std::string format_number(double v);

}  // namespace ofdmcr
