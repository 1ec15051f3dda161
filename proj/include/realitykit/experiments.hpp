#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "realitykit/reality.hpp"

namespace realitykit {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentConfig {
  std::string experiment;  // werner-sweep, mu-sweep, updown-gap, tsallis-sweep, axiom-suite
  std::vector<double> alphas;
  std::vector<double> qs;
  std::vector<double> phis;
  std::vector<double> thetas;
  std::size_t steps = 201;  // eps or mu points on [0, 1]; interior points per axis for updown-gap
  std::uint64_t seed = 20210801;
  std::string out;
  Mode mode = Mode::Monotone;
  std::size_t batch = 500;
  std::vector<std::string> checks;  // axiom-suite id prefixes

  /// Throws ConfigError when a grid value is outside its quantifier's range for `mode`.
  void validate() const;
  /// Canonical one-line rendering; the config hash is taken over this string.
  std::string canonical() const;
  std::uint64_t hash() const;
};

/// Defaults for an experiment name; throws ConfigError for unknown names.
ExperimentConfig default_config(const std::string& experiment);

struct SweepCheck {
  std::string name;
  bool pass = false;
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SweepResult {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<SweepCheck> checks;
  std::vector<std::string> notes;

  bool passed() const;
};

SweepResult run_werner_sweep(const ExperimentConfig& config);
SweepResult run_mu_sweep(const ExperimentConfig& config);
SweepResult run_updown_gap(const ExperimentConfig& config);
SweepResult run_tsallis_sweep(const ExperimentConfig& config);
/// Dispatches on config.experiment (not axiom-suite).
SweepResult run_sweep(const ExperimentConfig& config);

/// 17 significant digits, comma separated, LF endings; '#' comment header with
/// version, seed, config hash, the canonical config, checks and notes.
std::string to_csv(const SweepResult& result, const ExperimentConfig& config);
/// gnuplot script reading `csv_path`.
std::string plot_script(const SweepResult& result, const std::string& csv_path);
/// Writes config.out and config.out + ".gp"; returns the script path.
std::string write_outputs(const SweepResult& result, const ExperimentConfig& config);

}  // namespace realitykit
