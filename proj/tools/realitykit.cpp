// realitykit <experiment> [options]
// Exit codes: 0 success, 1 assertion failure, 2 config error.

#include <fstream>
#include <iostream>
#include <algorithm>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "realitykit/errors.hpp"
#include "realitykit/experiments.hpp"
#include "realitykit/harness.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kConfig = 2;

int run_axiom_suite(const realitykit::ExperimentConfig& cfg) {
  realitykit::HarnessConfig hc;
  hc.batch = cfg.batch;
  hc.seed = cfg.seed;
  hc.filter = cfg.checks;
  const auto reports = realitykit::run_all(hc);

  std::ofstream file;
  const bool to_stdout = cfg.out == "-";
  if (!to_stdout) {
    file.open(cfg.out, std::ios::binary);
    if (!file) throw realitykit::ConfigError("cannot write '" + cfg.out + "'");
  }
  std::ostream& jsonl = to_stdout ? std::cout : file;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    jsonl << realitykit::to_json_line(r) << "\n";
    if (!r.pass) ++failed;
  }
  std::ostream& log = to_stdout ? std::cerr : std::cout;
  for (const auto& r : reports) {
    if (!r.pass) log << "FAIL " << r.id << " worst=" << r.worst_violation << " seed=" << r.worst_case_seed << "\n";
  }
  log << reports.size() << " checks, " << failed << " failed";
  if (!to_stdout) log << "; report written to " << cfg.out;
  log << "\n";
  if (reports.empty()) {
    log << "no check matched the filter\n";
    return kConfig;
  }
  return failed == 0 ? kOk : kAssertion;
}

int emit_sweep(const realitykit::ExperimentConfig& cfg) {
  const auto result = realitykit::run_sweep(cfg);
  const auto script = realitykit::write_outputs(result, cfg);
  for (const auto& c : result.checks) {
    std::cout << (c.pass ? "pass " : "FAIL ") << c.name << " worst=" << c.worst << " tol=" << c.tolerance
              << "\n";
  }
  for (const auto& n : result.notes) std::cout << "note: " << n << "\n";
  std::cout << result.rows.size() << " rows written to " << cfg.out << "; plot script " << script << "\n";
  return result.passed() ? kOk : kAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic realism quantifiers: sweeps and the axiom suite"};
  app.set_version_flag("--version", realitykit::kVersion);

  std::string experiment;
  std::vector<double> alphas, qs, phis, thetas;
  std::size_t steps = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string mode = "monotone";
  std::size_t batch = 0;
  std::vector<std::string> checks;

  app.add_option("experiment", experiment, "werner-sweep | mu-sweep | updown-gap | tsallis-sweep | axiom-suite")
      ->required()
      ->check(CLI::IsMember({"werner-sweep", "mu-sweep", "updown-gap", "tsallis-sweep", "axiom-suite"}));
  auto* alpha_opt = app.add_option("--alpha", alphas, "Renyi order(s)");
  auto* q_opt = app.add_option("--q", qs, "Tsallis index(es)");
  auto* phi_opt = app.add_option("--phi", phis, "polar angle(s) of the spin observable");
  auto* theta_opt = app.add_option("--theta", thetas, "azimuthal angle(s) of the spin observable");
  auto* steps_opt = app.add_option("--steps", steps, "grid points per axis");
  auto* seed_opt = app.add_option("--seed", seed, "master seed");
  auto* out_opt = app.add_option("--out", out, "output path ('-' for stdout with axiom-suite)");
  app.add_option("--mode", mode, "parameter range policy")->check(CLI::IsMember({"monotone", "exploratory"}));
  auto* batch_opt = app.add_option("--batch", batch, "samples per check (axiom-suite)");
  auto* check_opt = app.add_option("--check", checks, "run only checks whose id starts with this prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    auto cfg = realitykit::default_config(experiment);
    if (*alpha_opt) cfg.alphas = alphas;
    if (*q_opt) cfg.qs = qs;
    if (*phi_opt) cfg.phis = phis;
    if (*theta_opt) cfg.thetas = thetas;
    if (*steps_opt) cfg.steps = steps;
    if (*seed_opt) cfg.seed = seed;
    if (*out_opt) cfg.out = out;
    if (*batch_opt) cfg.batch = batch;
    if (*check_opt) cfg.checks = checks;
    cfg.mode = mode == "monotone" ? realitykit::Mode::Monotone : realitykit::Mode::Exploratory;
    cfg.validate();
    return experiment == "axiom-suite" ? run_axiom_suite(cfg) : emit_sweep(cfg);
  } catch (const realitykit::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  } catch (const realitykit::AlphaOutOfRange& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  } catch (const realitykit::QOutOfRange& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAssertion;
  }
}
