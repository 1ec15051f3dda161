#include "realitykit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "realitykit/channels.hpp"
#include "realitykit/divergences.hpp"
#include "realitykit/harness.hpp"
#include "realitykit/werner.hpp"

namespace realitykit {

namespace {

constexpr double kClosedForm = 1e-10;
constexpr double kOrdering = 1e-9;

std::string format17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format17(v[i]);
  return s;
}

std::vector<double> unit_grid(std::size_t steps) {
  std::vector<double> g(steps);
  for (std::size_t i = 0; i < steps; ++i) g[i] = static_cast<double>(i) / static_cast<double>(steps - 1);
  return g;
}

/// Tracks the worst value of a check across a sweep.
struct Tracker {
  std::string name;
  double tolerance;
  std::string detail;
  double worst = -std::numeric_limits<double>::infinity();

  void see(double v) { worst = std::max(worst, std::isnan(v) ? kInfinity : v); }
  SweepCheck done() const {
    const double w = std::isinf(worst) && worst < 0 ? 0.0 : worst;
    return SweepCheck{name, w <= tolerance, w, tolerance, detail};
  }
};

bool in_open_unit(double a) { return a > 0.0 && a < 1.0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

ProjectiveObservable observable_from(const ExperimentConfig& c) {
  const double theta = c.thetas.empty() ? 0.0 : c.thetas.front();
  const double phi = c.phis.empty() ? 0.0 : c.phis.front();
  return spin_observable(0, theta, phi);
}

}  // namespace

// ---------------------------------------------------------------------------
// configuration

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  const double pi = std::numbers::pi;
  if (experiment == "werner-sweep") {
    c.alphas = {0.125, 0.25, 0.5, 1.0 - 1e-6};
    c.steps = 201;
  } else if (experiment == "mu-sweep") {
    c.alphas = {0.125, 0.25, 0.5, 1.0};
    c.phis = {0.0, pi / 4.0, pi / 2.0};
    c.thetas = {0.0, pi / 3.0, 2.0 * pi / 3.0, pi, 4.0 * pi / 3.0, 5.0 * pi / 3.0};
    c.steps = 201;
  } else if (experiment == "updown-gap") {
    c.steps = 99;
  } else if (experiment == "tsallis-sweep") {
    c.qs = {0.5, 1.0 - 1e-6, 1.5, 2.0};
    c.steps = 201;
  } else if (experiment == "axiom-suite") {
    c.batch = 500;
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  c.out = experiment + (experiment == "axiom-suite" ? ".jsonl" : ".csv");
  return c;
}

void ExperimentConfig::validate() const {
  const bool monotone = mode == Mode::Monotone;
  if (experiment == "werner-sweep" || experiment == "mu-sweep") {
    require(steps >= 2, "steps must be at least 2");
    require(!alphas.empty(), "at least one alpha is required");
    for (double a : alphas) {
      require(std::isfinite(a) && a > 0.0, "alpha must be positive and finite");
      const bool vn = experiment == "mu-sweep" && a == 1.0;
      if (monotone && !vn) {
        require(in_open_unit(a) || std::abs(a - 1.0) < kLimitRouting,
                "alpha " + format17(a) + " is outside (0, 1); use --mode exploratory");
      }
    }
  } else if (experiment == "updown-gap") {
    require(steps >= 1, "steps must be at least 1");
  } else if (experiment == "tsallis-sweep") {
    require(steps >= 2, "steps must be at least 2");
    require(!qs.empty(), "at least one q is required");
    for (double q : qs) {
      require(std::isfinite(q) && q > 0.0, "q must be positive and finite");
      if (monotone) require(q <= 2.0, "q " + format17(q) + " is outside (0, 2]; use --mode exploratory");
    }
  } else if (experiment == "axiom-suite") {
    require(batch >= 1, "batch must be at least 1");
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  if (experiment == "mu-sweep") require(!phis.empty() && !thetas.empty(), "phi and theta grids are required");
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << "experiment=" << experiment << " alphas=" << join(alphas) << " qs=" << join(qs)
     << " phis=" << join(phis) << " thetas=" << join(thetas) << " steps=" << steps
     << " seed=" << seed << " mode=" << (mode == Mode::Monotone ? "monotone" : "exploratory")
     << " batch=" << batch;
  return os.str();
}

std::uint64_t ExperimentConfig::hash() const { return seed_from_tag(0, canonical()); }

bool SweepResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SweepCheck& c) { return c.pass; });
}

// ---------------------------------------------------------------------------
// Werner sweep

SweepResult run_werner_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult out;
  out.experiment = "werner-sweep";
  out.columns = {"eps", "alpha", "R_numeric", "R_closed_form", "abs_diff", "monotone"};
  const auto a = observable_from(config);
  const double ln2 = std::log(2.0);

  Tracker closed{"closed_form", kClosedForm, "|numeric - printed closed form| over alpha in (0,1)"};
  Tracker endpoints{"endpoints", kClosedForm, "R(eps=0) = ln 2 and R(eps=1) = 0"};
  Tracker concave{"concavity_bound", kOrdering, "R >= (1 - eps) ln 2"};
  Tracker ordering{"alpha_ordering", kOrdering, "R nonincreasing in alpha"};
  Tracker limit0{"alpha0_limit", kClosedForm, "minRel quantifier vs alpha -> 0 closed form"};
  Tracker limit_inf{"alpha_inf_limit", kClosedForm, "maxRel quantifier vs alpha -> infinity closed form"};
  Tracker petz{"sandwiched_equals_petz", kClosedForm, "commuting pair: sandwiched = Petz"};
  Tracker near_one{"closed_form_near_alpha1", 1e-8, "alpha within 1e-3 of 1: both routes divide by alpha - 1"};
  Tracker exploratory{"exploratory_closed_form", kClosedForm, "alpha outside (0,1), exploratory mode"};

  std::vector<double> alphas = config.alphas;
  std::sort(alphas.begin(), alphas.end());
  for (double eps : unit_grid(config.steps)) {
    const auto rho = werner_state(eps);
    double prev = kInfinity;
    for (double alpha : alphas) {
      const auto value = reality_renyi_down(rho, a, alpha, config.mode);
      const double cf = werner::renyi_down(eps, alpha);
      const double diff = std::abs(value.value - cf);
      out.rows.push_back({eps, alpha, value.value, cf, diff, value.guaranteed ? 1.0 : 0.0});
      if (in_open_unit(alpha) && std::abs(alpha - 1.0) < 1e-3) {
        near_one.see(diff);
        if (eps == 0.0) near_one.see(std::abs(value.value - ln2));
        if (eps == 1.0) near_one.see(std::abs(value.value));
      } else if (in_open_unit(alpha)) {
        closed.see(diff);
        concave.see((1.0 - eps) * ln2 - value.value);
        if (eps == 0.0) endpoints.see(std::abs(value.value - ln2));
        if (eps == 1.0) endpoints.see(std::abs(value.value));
        if (alpha >= 0.5) {  // sandwiched is a monotone only from 1/2
          const double sw = reality_special(rho, a, RealityQuantifierSpec::sandwiched(alpha)).value;
          petz.see(std::abs(sw - value.value));
        }
      } else {
        exploratory.see(diff);
      }
      ordering.see(value.value - prev);
      prev = value.value;
    }
    // Non-monotone limits, flagged with monotone = 0.
    const double r0 = reality_special(rho, a, RealityQuantifierSpec::min_rel(), Mode::Exploratory).value;
    const double c0 = werner::renyi_down_alpha0(eps);
    out.rows.push_back({eps, 0.0, r0, c0, std::abs(r0 - c0), 0.0});
    limit0.see(std::abs(r0 - c0));
    const double ri = reality_special(rho, a, RealityQuantifierSpec::max_rel(), Mode::Exploratory).value;
    const double ci = werner::renyi_down_alpha_inf(eps);
    out.rows.push_back({eps, kInfinity, ri, ci, std::abs(ri - ci), 0.0});
    limit_inf.see(std::abs(ri - ci));
  }
  for (const auto* t : {&closed, &endpoints, &concave, &ordering, &limit0, &limit_inf, &petz}) {
    out.checks.push_back(t->done());
  }
  if (!std::isinf(near_one.worst)) out.checks.push_back(near_one.done());
  if (!std::isinf(exploratory.worst)) out.checks.push_back(exploratory.done());
  out.notes.push_back("rows with alpha = 0 and alpha = inf are the minRel and maxRel limits; they are not monotones");
  return out;
}

// ---------------------------------------------------------------------------
// mu sweep

SweepResult run_mu_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult out;
  out.experiment = "mu-sweep";
  out.columns = {"mu", "phi", "alpha", "R", "theta_spread"};
  Tracker theta{"theta_independence", kOrdering, "spread of R over the theta grid"};
  Tracker ordering{"alpha_ordering", kOrdering, "R nonincreasing in alpha at every (mu, phi)"};
  Tracker bell{"mu1_vn", kClosedForm, "mu = 1, phi = 0: Renyi values vs direct vN evaluation (both 0)"};

  std::vector<double> alphas = config.alphas;
  std::sort(alphas.begin(), alphas.end());
  for (double mu : unit_grid(config.steps)) {
    const auto rho = mu_state(mu);
    for (double phi : config.phis) {
      double prev = kInfinity;
      for (double alpha : alphas) {
        double lo = kInfinity;
        double hi = -kInfinity;
        double first = 0.0;
        for (std::size_t t = 0; t < config.thetas.size(); ++t) {
          const auto a = spin_observable(0, config.thetas[t], phi);
          const double r = alpha == 1.0 ? reality_vn(rho, a).value
                                        : reality_renyi_down(rho, a, alpha, config.mode).value;
          if (t == 0) first = r;
          lo = std::min(lo, r);
          hi = std::max(hi, r);
        }
        out.rows.push_back({mu, phi, alpha, first, hi - lo});
        theta.see(hi - lo);
        ordering.see(first - prev);
        prev = first;
        if (mu == 1.0 && phi == 0.0) {
          bell.see(std::abs(first - reality_vn(rho, spin_observable(0, 0.0, 0.0)).value));
        }
      }
    }
  }
  out.checks = {theta.done(), ordering.done(), bell.done()};
  out.notes.push_back("spin direction (cos t sin p, sin t sin p, cos p); p is the polar angle");
  return out;
}

// ---------------------------------------------------------------------------
// up/down gap

SweepResult run_updown_gap(const ExperimentConfig& config) {
  config.validate();
  SweepResult out;
  out.experiment = "updown-gap";
  out.columns = {"alpha", "eps", "R_up_derived", "R_up_paper_chi", "R_down", "gap_derived",
                 "gap_paper", "R_up_numeric", "R_down_numeric"};
  const auto a = observable_from(config);
  Tracker nonneg{"gap_nonnegative", kOrdering, "gap_derived >= 0"};
  Tracker derived_match{"up_matches_derived_chi", kClosedForm, "|R_up numeric - derived chi closed form|"};
  Tracker down_match{"down_matches_closed_form", kClosedForm, "|R_down numeric - closed form|"};
  double printed_dev = 0.0;
  double best = -kInfinity, best_a = 0.0, best_e = 0.0;
  double best_p = -kInfinity, best_pa = 0.0, best_pe = 0.0;
  double min_p = kInfinity;

  const std::size_t n = config.steps;
  for (std::size_t i = 1; i <= n; ++i) {
    const double alpha = static_cast<double>(i) / static_cast<double>(n + 1);
    for (std::size_t j = 1; j <= n; ++j) {
      const double eps = static_cast<double>(j) / static_cast<double>(n + 1);
      const auto rho = werner_state(eps);
      const double up_d = werner::renyi_up_derived(eps, alpha);
      const double up_p = werner::renyi_up_printed(eps, alpha);
      const double down = werner::renyi_down(eps, alpha);
      const double up_n = reality_renyi_up(rho, a, alpha).value;
      const double down_n = reality_renyi_down(rho, a, alpha).value;
      const double gap_d = up_d - down;
      const double gap_p = up_p - down;
      out.rows.push_back({alpha, eps, up_d, up_p, down, gap_d, gap_p, up_n, down_n});
      nonneg.see(-gap_d);
      derived_match.see(std::abs(up_n - up_d));
      down_match.see(std::abs(down_n - down));
      printed_dev = std::max(printed_dev, std::abs(up_n - up_p));
      if (gap_d > best) best = gap_d, best_a = alpha, best_e = eps;
      if (gap_p > best_p) best_p = gap_p, best_pa = alpha, best_pe = eps;
      min_p = std::min(min_p, gap_p);
    }
  }
  out.checks = {nonneg.done(), derived_match.done(), down_match.done()};
  std::ostringstream table;
  table << std::setprecision(6);
  table << "comparison | reference: max ~0.0044 at (alpha, eps) ~ (0.24, 0.89)";
  out.notes.push_back(table.str());
  table.str("");
  table << "comparison | derived chi ((1-eps)^alpha): max " << best << " at (" << best_a << ", " << best_e << ")";
  out.notes.push_back(table.str());
  table.str("");
  table << "comparison | printed chi ((1+eps)^alpha): max " << best_p << " at (" << best_pa << ", "
        << best_pe << "), min " << min_p;
  out.notes.push_back(table.str());
  table.str("");
  table << "printed chi deviates from the matrix pipeline by up to " << printed_dev
        << "; derived chi matches it (see up_matches_derived_chi)";
  out.notes.push_back(table.str());
  return out;
}

// ---------------------------------------------------------------------------
// Tsallis sweep

SweepResult run_tsallis_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult out;
  out.experiment = "tsallis-sweep";
  out.columns = {"eps", "q", "R_numeric", "R_closed_form", "abs_diff", "dR_dq"};
  const auto a = observable_from(config);
  Tracker closed{"closed_form", kClosedForm, "|numeric - printed closed form|, q away from 1"};
  Tracker near_one{"closed_form_near_q1", 1e-8, "q within 1e-3 of 1: both routes divide by q - 1"};
  Tracker endpoints{"endpoints", kClosedForm, "R(eps=0) = ln_q 2; R(eps=1) = 0"};
  Tracker slope{"q_monotone", kOrdering, "grid difference dR/dq <= 0 between neighbouring q"};
  Tracker ordering{"q_ordering", kOrdering, "R^q >= R^p for q <= p"};

  std::vector<double> qs = config.qs;
  std::sort(qs.begin(), qs.end());
  for (double eps : unit_grid(config.steps)) {
    const auto rho = werner_state(eps);
    std::vector<double> r(qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i) r[i] = reality_tsallis(rho, a, qs[i], config.mode).value;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const double q = qs[i];
      const double c = werner::tsallis(eps, q);
      const double diff = std::abs(r[i] - c);
      // Forward difference; the last q reuses the backward one.
      double dr = std::numeric_limits<double>::quiet_NaN();
      if (qs.size() > 1) {
        const std::size_t j = i + 1 < qs.size() ? i : i - 1;
        dr = (r[j + 1] - r[j]) / (qs[j + 1] - qs[j]);
        slope.see(dr);
      }
      out.rows.push_back({eps, q, r[i], c, diff, dr});
      const bool near = std::abs(q - 1.0) < 1e-3;
      (near ? near_one : closed).see(diff);
      if (eps == 0.0) (near ? near_one : endpoints).see(std::abs(r[i] - werner::ln_q(2.0, q)));
      if (eps == 1.0) (near ? near_one : endpoints).see(std::abs(r[i]));
      if (i > 0) ordering.see(r[i] - r[i - 1]);
    }
  }
  out.checks = {closed.done(), endpoints.done(), slope.done(), ordering.done()};
  if (!std::isinf(near_one.worst)) out.checks.push_back(near_one.done());
  return out;
}

SweepResult run_sweep(const ExperimentConfig& config) {
  if (config.experiment == "werner-sweep") return run_werner_sweep(config);
  if (config.experiment == "mu-sweep") return run_mu_sweep(config);
  if (config.experiment == "updown-gap") return run_updown_gap(config);
  if (config.experiment == "tsallis-sweep") return run_tsallis_sweep(config);
  throw ConfigError("'" + config.experiment + "' is not a sweep");
}

// ---------------------------------------------------------------------------
// output

std::string to_csv(const SweepResult& result, const ExperimentConfig& config) {
  std::ostringstream os;
  os << "# realitykit " << kVersion << " seed=" << config.seed << " config_hash=" << std::hex
     << config.hash() << std::dec << "\n";
  os << "# config: " << config.canonical() << "\n";
  for (const auto& c : result.checks) {
    os << "# check " << c.name << ": " << (c.pass ? "pass" : "FAIL") << " worst=" << format17(c.worst)
       << " tol=" << format17(c.tolerance) << " (" << c.detail << ")\n";
  }
  for (const auto& n : result.notes) os << "# note: " << n << "\n";
  for (std::size_t i = 0; i < result.columns.size(); ++i) os << (i ? "," : "") << result.columns[i];
  os << "\n";
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format17(row[i]);
    os << "\n";
  }
  return os.str();
}

std::string plot_script(const SweepResult& result, const std::string& csv_path) {
  std::ostringstream os;
  os << "# gnuplot script for " << result.experiment << "\n";
  os << "set datafile separator ','\nset datafile commentschars '#'\nset key autotitle columnhead\n";
  os << "set terminal pngcairo size 900,600\nset output '" << csv_path << ".png'\n";
  auto series = [&](int group_col, const std::vector<double>& values, int x_col, int y_col,
                    const std::string& label) {
    os << "plot ";
    for (std::size_t i = 0; i < values.size(); ++i) {
      os << (i ? ", \\\n     " : "") << "'" << csv_path << "' using " << x_col << ":(abs($"
         << group_col << "-" << format17(values[i]) << ")<1e-12 ? $" << y_col << " : 1/0) with lines title '"
         << label << "=" << values[i] << "'";
    }
    os << "\n";
  };
  auto distinct = [&](std::size_t col) {
    std::vector<double> v;
    for (const auto& r : result.rows) {
      if (std::isfinite(r[col]) && std::find(v.begin(), v.end(), r[col]) == v.end()) v.push_back(r[col]);
    }
    return v;
  };
  if (result.experiment == "werner-sweep") {
    os << "set xlabel 'eps'\nset ylabel 'R (nats)'\n";
    series(2, distinct(1), 1, 3, "alpha");
  } else if (result.experiment == "tsallis-sweep") {
    os << "set xlabel 'eps'\nset ylabel 'R^q'\n";
    series(2, distinct(1), 1, 3, "q");
  } else if (result.experiment == "mu-sweep") {
    os << "set xlabel 'mu'\nset ylabel 'R (nats)'\nset multiplot layout 1,3\n";
    for (double phi : distinct(1)) {
      os << "set title 'phi=" << phi << "'\nplot ";
      const auto alphas = distinct(2);
      for (std::size_t i = 0; i < alphas.size(); ++i) {
        os << (i ? ", \\\n     " : "") << "'" << csv_path << "' using 1:((abs($2-" << format17(phi)
           << ")<1e-12 && abs($3-" << format17(alphas[i]) << ")<1e-12) ? $4 : 1/0) with lines title 'alpha="
           << alphas[i] << "'";
      }
      os << "\n";
    }
    os << "unset multiplot\n";
  } else if (result.experiment == "updown-gap") {
    os << "set xlabel 'eps'\nset ylabel 'alpha'\nset view map\nset dgrid3d 99,99\n";
    os << "splot '" << csv_path << "' using 2:1:6 with pm3d title 'R_up - R_down (derived chi)'\n";
  }
  return os.str();
}

std::string write_outputs(const SweepResult& result, const ExperimentConfig& config) {
  {
    std::ofstream csv(config.out, std::ios::binary);
    if (!csv) throw ConfigError("cannot write '" + config.out + "'");
    csv << to_csv(result, config);
  }
  const std::string script = config.out + ".gp";
  std::ofstream gp(script, std::ios::binary);
  if (!gp) throw ConfigError("cannot write '" + script + "'");
  gp << plot_script(result, config.out);
  return script;
}

}  // namespace realitykit
