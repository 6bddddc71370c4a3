#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ofdmcr/capmoments.hpp"
#include "ofdmcr/collision.hpp"
#include "ofdmcr/config.hpp"
#include "ofdmcr/error.hpp"
#include "ofdmcr/experiment.hpp"
#include "ofdmcr/moschopoulos.hpp"
#include "ofdmcr/specfun.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kTolerance = 2, kIo = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ofdmcr::IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_run(const std::string& path, const std::string& seed, const std::string& out) {
  using namespace ofdmcr;
  const std::string text = read_file(path);
  ExperimentSpec spec = validate_config(text);
  if (!seed.empty()) {
    // Same parser as the config value, so the same errors come out.
    spec.seed = validate_config("experiment=" + spec.experiment + "\nseed=" + seed).seed;
  }
  if (!out.empty()) spec.out = out;

  const ResultTable table = run_experiment(spec);
  std::ofstream os(spec.out, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write " + spec.out);
  write_csv(os, spec, table);
  os.close();
  if (!os) throw IoError("write failed for " + spec.out);

  std::cerr << spec.experiment << ": " << table.rows.size() << " rows -> " << spec.out << '\n';
  if (!table.tolerance_ok()) {
    for (const auto& f : table.failures) std::cerr << "tolerance failure: " << f << '\n';
    return kTolerance;
  }
  return kOk;
}

int cmd_list() {
  for (const auto& e : ofdmcr::experiment_catalog()) {
    std::printf("%-8s %s\n", e.name.c_str(), e.description.c_str());
  }
  return kOk;
}

// Quick invariant sweep; the unit tests go much further.
int cmd_selftest() {
  using namespace ofdmcr;
  int failed = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    failed += !ok;
  };

  double worst = 0.0;
  for (double a : {0.5, 1.0, 3.7, 40.0}) {
    for (double x : {0.01, 1.0, 10.0, 100.0}) {
      worst = std::max(worst, std::abs(specfun::regularized_gamma_p(a, x) + specfun::regularized_gamma_q(a, x) - 1));
    }
  }
  check(worst < 1e-13, "P + Q = 1");
  check(std::abs(specfun::expint_e1_scaled(0.01) - 4.0785) < 1e-4, "e^x E1(x) at 0.01");

  const SubcarrierPool pool{40, {7, 12}};
  double total = 0.0;
  for (const auto& kv : collision::mvhypergeom_support(9, pool)) total += collision::mvhypergeom_pmf(9, pool, kv);
  check(std::abs(total - 1.0) < 1e-12, "collision pmf sums to 1");

  const auto rule = specfun::gcq_rule(capmoments::kDefaultOrder);
  bool ordered = true;
  for (double pm : {1.0, 10.0, 100.0}) {
    const LinkParams lp{pm, 10.0, 1.0, 1.0};
    const auto mi = capmoments::moments_interference(lp, rule);
    const auto mn = capmoments::moments_nointerference(lp, rule);
    ordered = ordered && mi.mean <= mn.mean && mi.variance > 0 && mn.variance > 0;
  }
  check(ordered, "interference lowers mean capacity, variances positive");

  const auto s = moschopoulos::build_series({{1.5, 2.0}, {2.5, 2.0}}, 10);
  check(std::abs(moschopoulos::series_cdf(s, 3.0).value - specfun::regularized_gamma_p(4.0, 1.5)) < 1e-12,
        "equal scales collapse to one gamma");

  ExperimentSpec spec = validate_config("experiment=custom\nreplications=4096\nsweep=psi_dB\ngrid=0\n");
  std::ostringstream a, b;
  write_csv(a, spec, run_experiment(spec, 1));
  write_csv(b, spec, run_experiment(spec, 2));
  check(a.str() == b.str(), "output independent of worker count");

  return failed ? kTolerance : kOk;
}

// Text rendering of every column against the first one.
int cmd_plot(const std::string& path, int width, int height) {
  std::istringstream in(read_file(path));
  std::vector<std::string> cols;
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    if (cols.empty()) {
      cols = cells;
      continue;
    }
    std::vector<double> r;
    for (const auto& v : cells) r.push_back(std::strtod(v.c_str(), nullptr));
    rows.push_back(r);
  }
  if (cols.size() < 2 || rows.empty()) throw ofdmcr::IoError(path + ": no data to plot");

  const double inf = std::numeric_limits<double>::infinity();
  double x0 = inf, x1 = -inf, y0 = inf, y1 = -inf;
  for (const auto& r : rows) {
    x0 = std::min(x0, r[0]), x1 = std::max(x1, r[0]);
    for (std::size_t j = 1; j < r.size(); ++j) {
      if (!std::isfinite(r[j])) continue;
      y0 = std::min(y0, r[j]), y1 = std::max(y1, r[j]);
    }
  }
  if (x1 == x0) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;

  const std::string marks = "*+ox#@%&=~";
  std::vector<std::string> grid(height, std::string(width, ' '));
  for (const auto& r : rows) {
    const int cx = static_cast<int>(std::lround((r[0] - x0) / (x1 - x0) * (width - 1)));
    for (std::size_t j = 1; j < r.size() && j < cols.size(); ++j) {
      if (!std::isfinite(r[j])) continue;
      const int cy = static_cast<int>(std::lround((r[j] - y0) / (y1 - y0) * (height - 1)));
      grid[height - 1 - cy][cx] = marks[(j - 1) % marks.size()];
    }
  }
  std::printf("%12.4g +%s\n", y1, std::string(width, '-').c_str());
  for (const auto& g : grid) std::printf("%12s |%s\n", "", g.c_str());
  std::printf("%12.4g +%s\n", y0, std::string(width, '-').c_str());
  std::printf("%13s %-12.4g%*s%.4g  (%s)\n", "", x0, width - 24, "", x1, cols[0].c_str());
  for (std::size_t j = 1; j < cols.size(); ++j) std::printf("  %c %s\n", marks[(j - 1) % marks.size()], cols[j].c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OFDM cognitive radio capacity experiments"};
  app.set_version_flag("--version", std::string(ofdmcr::version()));
  app.require_subcommand(1);

  std::string config, seed, out;
  auto* run = app.add_subcommand("run", "run an experiment config and write CSV");
  run->add_option("config", config, "key=value config file")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--out", out, "override the output path");

  auto* list = app.add_subcommand("list-experiments", "list named experiments");
  auto* selftest = app.add_subcommand("selftest", "quick invariant checks");

  std::string csv;
  int width = 72, height = 20;
  auto* plot = app.add_subcommand("plot", "text plot of a result CSV");
  plot->add_option("csv", csv, "CSV written by run")->required();
  plot->add_option("--width", width)->check(CLI::Range(24, 400));
  plot->add_option("--height", height)->check(CLI::Range(5, 200));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(config, seed, out);
    if (*list) return cmd_list();
    if (*selftest) return cmd_selftest();
    if (*plot) return cmd_plot(csv, width, height);
  } catch (const ofdmcr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ofdmcr::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const ofdmcr::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kTolerance;
  } catch (const ofdmcr::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  }
  return kOk;
}
