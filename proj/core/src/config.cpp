#include "ofdmcr/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "ofdmcr/error.hpp"
#include "ofdmcr/units.hpp"

namespace ofdmcr {

SystemConfig ExperimentSpec::system() const {
  SystemConfig cfg;
  cfg.pool = {F, Fp};
  cfg.Fs = Fs;
  cfg.Pm = db_to_linear(Pm_dB);
  cfg.psi = db_to_linear(psi_dB);
  cfg.eta = eta;
  for (std::size_t n = 0; n < Fp.size(); ++n) {
    cfg.Pn.push_back(db_to_linear(Pn_dB.size() == 1 ? Pn_dB[0] : Pn_dB.at(n)));
  }
  return cfg;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    if constexpr (std::is_floating_point_v<T>) {
      s += format_number(v[i]);
    } else {
      s += std::to_string(v[i]);
    }
  }
  return s;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> ExperimentSpec::resolved() const {
  std::vector<std::pair<std::string, std::string>> r = {
      {"experiment", experiment},
      {"F", std::to_string(F)},
      {"Fs", std::to_string(Fs)},
      {"Fp", join(Fp)},
      {"Pm_dB", format_number(Pm_dB)},
      {"Pn_dB", join(Pn_dB)},
      {"psi_dB", format_number(psi_dB)},
      {"eta", format_number(eta)},
      {"M", std::to_string(M)},
      {"M_hat", std::to_string(M_hat)},
      {"replications", std::to_string(replications)},
      {"seed", std::to_string(seed)},
      {"h", std::to_string(h)},
      {"Np", std::to_string(Np)},
      {"out", out},
  };
  if (!sweep.empty()) r.emplace_back("sweep", sweep);
  if (!grid.empty()) r.emplace_back("grid", join(grid));
  return r;
}

const std::vector<ExperimentInfo>& experiment_catalog() {
  static const std::vector<ExperimentInfo> catalog = {
      {"fig2a", "capacity PDFs, exact vs fitted Gamma (Pm=20 dB, Pn=10 dB, psi=0 dB, eta=1)"},
      {"fig2b", "capacity PDFs, exact vs fitted Gamma (Pm=40 dB, Pn=0 dB, psi=20 dB, eta=0.01)"},
      {"fig3", "sum-of-Gamma series PDF/CDF for 4 and 2 components, h=25"},
      {"fig4", "mean capacity vs Pm for psi in {-5,0,5} dB"},
      {"fig5", "mean capacity vs psi for Pm in {0,10,20} dB"},
      {"fig6", "mean capacity vs Pm for N in {2,6,12} PUs, with tight bounds"},
      {"fig7", "mean capacity vs F, convergence to Fs E[C^NI]"},
      {"fig8", "sum capacity of M_hat scheduled SUs vs Pm: opportunistic, arbitrary, colliding"},
      {"outage", "outage probability vs threshold"},
      {"custom", "mean capacity and bounds along a user-chosen sweep"},
  };
  return catalog;
}

ExperimentSpec experiment_defaults(const std::string& name) {
  ExperimentSpec s;
  s.experiment = name;
  s.out = name + ".csv";
  if (name == "fig2a") {
    s.Pm_dB = 20.0, s.Pn_dB = {10.0}, s.psi_dB = 0.0, s.eta = 1.0;
    s.replications = 100000;
  } else if (name == "fig2b") {
    s.Pm_dB = 40.0, s.Pn_dB = {0.0}, s.psi_dB = 20.0, s.eta = 0.01;
    s.replications = 100000;
  } else if (name == "fig3") {
    s.replications = 100000;
  } else if (name == "fig4") {
    s.Pn_dB = {10.0};
    s.replications = 20000;
  } else if (name == "fig5") {
    s.Pn_dB = {10.0};
    s.replications = 20000;
  } else if (name == "fig6") {
    s.Fp = {10};
    s.Pn_dB = {5.0};
    s.psi_dB = -5.0;
    s.replications = 20000;
  } else if (name == "fig7") {
    s.Pn_dB = {5.0};
    s.Pm_dB = 10.0;
    s.psi_dB = -5.0;
    s.replications = 20000;
  } else if (name == "fig8") {
    s.F = 100, s.Fs = 10, s.Fp = {40}, s.Pn_dB = {10.0}, s.psi_dB = 0.0;
    s.M = 40, s.M_hat = 5;
    s.replications = 2000;
  } else if (name == "outage") {
    s.replications = 50000;
  } else if (name == "custom") {
    s.replications = 10000;
  } else {
    throw ConfigError("unknown experiment '" + name + "' (see list-experiments)");
  }
  return s;
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {"experiment", "F", "Fs", "Fp", "Pm_dB", "Pn_dB", "psi_dB", "eta",
                                             "M", "M_hat", "replications", "seed", "h", "Np", "out", "sweep",
                                             "grid"};
  return keys;
}

double parse_double(const Entry& e, const std::string& key) {
  const std::string v = trim(e.value);
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || !std::isfinite(d)) {
    throw ConfigError(key + ": expected a finite number, got '" + v + "'", e.line);
  }
  return d;
}

long long parse_int(const Entry& e, const std::string& key, long long lo, long long hi) {
  const std::string v = trim(e.value);
  long long x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (v.empty() || ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'", e.line);
  }
  if (x < lo || x > hi) {
    throw ConfigError(key + ": " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]",
                      e.line);
  }
  return x;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

ExperimentSpec validate_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + line + "'", line_no);
    std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.size() > 2 && key.compare(key.size() - 2, 2, "[]") == 0) key.resize(key.size() - 2);
    if (!known_keys().count(key)) throw ConfigError("unknown key '" + key + "'", line_no);
    if (auto it = entries.find(key); it != entries.end()) {
      throw ConfigError("duplicate key '" + key + "' (first set on line " + std::to_string(it->second.line) + ")",
                        line_no);
    }
    entries[key] = {trim(std::string_view(line).substr(eq + 1)), line_no};
  }

  const auto exp_it = entries.find("experiment");
  if (exp_it == entries.end()) throw ConfigError("missing required key 'experiment'");
  ExperimentSpec s;
  try {
    s = experiment_defaults(exp_it->second.value);
  } catch (const ConfigError& e) {
    throw ConfigError(e.what(), exp_it->second.line);
  }

  auto line_of = [&](const std::string& key) {
    const auto it = entries.find(key);
    return it == entries.end() ? 0 : it->second.line;
  };
  auto has = [&](const std::string& key) { return entries.count(key) > 0; };
  const long long kIntMax = 1'000'000'000;

  if (has("F")) s.F = static_cast<int>(parse_int(entries["F"], "F", 1, kIntMax));
  if (has("Fs")) s.Fs = static_cast<int>(parse_int(entries["Fs"], "Fs", 0, kIntMax));
  if (has("Fp")) {
    s.Fp.clear();
    for (const auto& item : split_list(entries["Fp"].value)) {
      s.Fp.push_back(static_cast<int>(parse_int({item, line_of("Fp")}, "Fp", 0, kIntMax)));
    }
    if (s.Fp.empty()) throw ConfigError("Fp: at least one PU required", line_of("Fp"));
  }
  if (has("Pm_dB")) s.Pm_dB = parse_double(entries["Pm_dB"], "Pm_dB");
  if (has("Pn_dB")) {
    s.Pn_dB.clear();
    for (const auto& item : split_list(entries["Pn_dB"].value)) {
      s.Pn_dB.push_back(parse_double({item, line_of("Pn_dB")}, "Pn_dB"));
    }
    if (s.Pn_dB.empty()) throw ConfigError("Pn_dB: at least one value required", line_of("Pn_dB"));
  }
  if (has("psi_dB")) s.psi_dB = parse_double(entries["psi_dB"], "psi_dB");
  if (has("eta")) s.eta = parse_double(entries["eta"], "eta");
  if (has("M")) s.M = static_cast<int>(parse_int(entries["M"], "M", 1, 1'000'000));
  if (has("M_hat")) s.M_hat = static_cast<int>(parse_int(entries["M_hat"], "M_hat", 1, 1'000'000));
  if (has("replications")) {
    s.replications = static_cast<std::uint64_t>(parse_int(entries["replications"], "replications", 0, 1'000'000'000'000LL));
  }
  if (has("seed")) {
    const std::string v = entries["seed"].value;
    std::uint64_t x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (v.empty() || ec != std::errc() || p != v.data() + v.size()) {
      throw ConfigError("seed: expected an unsigned 64-bit integer, got '" + v + "'", line_of("seed"));
    }
    s.seed = x;
  }
  if (has("h")) s.h = static_cast<int>(parse_int(entries["h"], "h", 1, 4096));
  if (has("Np")) s.Np = static_cast<int>(parse_int(entries["Np"], "Np", 1, 100000));
  if (has("out")) {
    s.out = entries["out"].value;
    if (s.out.empty()) throw ConfigError("out: empty path", line_of("out"));
  }
  if (has("sweep")) {
    if (s.experiment != "custom") throw ConfigError("sweep: only the custom experiment takes a sweep key", line_of("sweep"));
    static const std::set<std::string> sweepable = {"Pm_dB", "psi_dB", "Pn_dB", "eta", "F", "Fs", "Fp"};
    s.sweep = entries["sweep"].value;
    if (!sweepable.count(s.sweep)) {
      throw ConfigError("sweep: '" + s.sweep + "' is not one of Pm_dB, psi_dB, Pn_dB, eta, F, Fs, Fp", line_of("sweep"));
    }
  }
  if (has("grid")) {
    for (const auto& item : split_list(entries["grid"].value)) s.grid.push_back(parse_double({item, line_of("grid")}, "grid"));
    if (s.grid.empty()) throw ConfigError("grid: at least one value required", line_of("grid"));
  }

  // Cross-field invariants, reported against the line that set the later field.
  auto later = [&](std::initializer_list<const char*> keys) {
    int l = 0;
    for (const char* k : keys) l = std::max(l, line_of(k));
    return l;
  };
  if (s.Fs > s.F) {
    throw ConfigError("SystemConfig invariant Fs <= F violated (Fs=" + std::to_string(s.Fs) + ", F=" +
                          std::to_string(s.F) + ")",
                      later({"Fs", "F"}));
  }
  const long long occupied = std::accumulate(s.Fp.begin(), s.Fp.end(), 0LL);
  if (occupied > s.F) {
    throw ConfigError("SubcarrierPool invariant sum(Fp) <= F violated (sum=" + std::to_string(occupied) + ", F=" +
                          std::to_string(s.F) + ")",
                      later({"Fp", "F"}));
  }
  if (s.Pn_dB.size() != 1 && s.Pn_dB.size() != s.Fp.size()) {
    throw ConfigError("Pn_dB: give one value, or one per PU (" + std::to_string(s.Fp.size()) + ")",
                      later({"Pn_dB", "Fp"}));
  }
  if (!(s.eta > 0.0)) throw ConfigError("LinkParams invariant eta > 0 violated", line_of("eta"));
  if (s.M_hat > s.M) throw ConfigError("M_hat <= M violated", later({"M", "M_hat"}));
  if (s.experiment == "fig8" && static_cast<long long>(s.M_hat) * s.Fs > s.F) {
    throw ConfigError("scheduler requires M_hat * Fs <= F", later({"M_hat", "Fs", "F"}));
  }
  if (s.experiment == "fig8" && s.Fs < 1) throw ConfigError("fig8 requires Fs >= 1", line_of("Fs"));
  if (s.experiment == "custom" && s.sweep.empty() != s.grid.empty()) {
    throw ConfigError("custom: sweep and grid must be given together", later({"sweep", "grid"}));
  }
  if (s.experiment == "fig7" || (s.experiment == "custom" && (s.sweep == "F" || s.sweep == "Fs" || s.sweep == "Fp"))) {
    for (double g : s.grid) {
      if (g != std::floor(g) || g < 0) throw ConfigError("grid: counts must be non-negative integers", line_of("grid"));
    }
  }
  if (s.experiment == "fig7") {
    for (double g : s.grid) {
      if (g - 1 < s.Fs + occupied) throw ConfigError("fig7 grid: every F must exceed Fs + sum(Fp)", line_of("grid"));
    }
  }
  try {
    s.system().validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what(), later({"F", "Fs", "Fp", "Pm_dB", "Pn_dB", "psi_dB", "eta"}));
  }
  return s;
}

}  // namespace ofdmcr
