#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ofdmcr/config.hpp"

namespace ofdmcr {

/// Result of one experiment: numeric rows plus free-text notes for the header.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> notes;
  /// Monte Carlo vs analytic checks that failed, one message each.
  std::vector<std::string> failures;

  bool tolerance_ok() const { return failures.empty(); }
};

/// Monte Carlo columns must sit within this many standard errors of the
/// analytic column.
inline constexpr double kToleranceSigmas = 4.0;

/// Runs a validated spec. `workers` <= 0 picks mcsim::worker_count().
/// replications == 0 produces analytic columns only and draws no random numbers.
ResultTable run_experiment(const ExperimentSpec& spec, int workers = 0);

/// '#' comment block (code version, resolved spec, notes) then the CSV body.
void write_csv(std::ostream& os, const ExperimentSpec& spec, const ResultTable& table);

/// Library version string.
const char* version();

}  // namespace ofdmcr
