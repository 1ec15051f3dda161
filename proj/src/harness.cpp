#include "realitykit/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "realitykit/channels.hpp"
#include "realitykit/divergences.hpp"

namespace realitykit {

namespace {

using Json = nlohmann::json;

Json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Expectation from_cell(CellStatus status) {
  switch (status) {
    case CellStatus::Holds: return Expectation::Holds;
    case CellStatus::Fails: return Expectation::Violated;
    case CellStatus::OutOfRange:
    case CellStatus::Open: return Expectation::Probe;
  }
  return Expectation::Probe;
}

bool is_bar(const RealityQuantifierSpec& spec) { return spec.kind == QuantifierKind::RenyiBar; }

Mode mode_for(const RealityQuantifierSpec& spec) {
  return spec.is_monotone() ? Mode::Monotone : Mode::Exploratory;
}

/// Quantifier value; optimizer-backed values fall back to the best point found.
double quantify(const DensityOperator& rho, const ProjectiveObservable& a,
                const RealityQuantifierSpec& spec, Rng& rng) {
  RealityOptions options;
  options.seed = rng.engine()();
  try {
    return reality(rho, a, spec, mode_for(spec), options).value;
  } catch (const OptimizerNonConvergence& e) {
    return e.best_value();
  }
}

double max_for(const RealityQuantifierSpec& spec, const ProjectiveObservable& a) {
  return max_reality(spec, a.dim());
}

DivergenceSpec divergence_for(const RealityQuantifierSpec& spec) {
  switch (spec.kind) {
    case QuantifierKind::VonNeumann: return DivergenceSpec::von_neumann();
    case QuantifierKind::RenyiDown:
    case QuantifierKind::RenyiUp:
    case QuantifierKind::RenyiBar: return DivergenceSpec::renyi(spec.parameter);
    case QuantifierKind::Tsallis: return DivergenceSpec::tsallis(spec.parameter);
    case QuantifierKind::MinRel: return DivergenceSpec::min_rel();
    case QuantifierKind::MaxRel: return DivergenceSpec::max_rel();
    case QuantifierKind::Sandwiched: return DivergenceSpec::sandwiched(spec.parameter);
  }
  return DivergenceSpec::von_neumann();
}

DensityOperator environment_ground(std::size_t d) {
  ComplexVector e0 = ComplexVector::Zero(static_cast<Eigen::Index>(d));
  e0[0] = 1.0;
  return DensityOperator::from_pure(e0, SubsystemLayout{d});
}

std::vector<double> random_weights(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = 0.05 + rng.uniform();
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

ProjectiveObservable sigma_z_on(std::size_t slot) { return ProjectiveObservable::computational(slot, 2); }

ProjectiveObservable sigma_x_on(std::size_t slot) {
  ComplexMatrix h(2, 2);
  const double s = 1.0 / std::numbers::sqrt2;
  h << s, s, s, -s;
  return ProjectiveObservable::from_basis(slot, h);
}

/// Random two-outcome channel: Tr_E[V (rho ⊗ |0><0|) V†] with V Haar on d·2.
ComplexMatrix random_channel_apply(const ComplexMatrix& rho, const ComplexMatrix& v) {
  const auto d = static_cast<std::size_t>(rho.rows());
  ComplexMatrix e0 = ComplexMatrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  const ComplexMatrix joint = v * kron(rho, e0) * v.adjoint();
  const std::size_t keep[] = {0};
  return partial_trace(joint, SubsystemLayout{d, 2}, keep);
}

SampleOutcome outcome(double violation, std::string description, double lhs, double rhs,
                      const std::optional<ComplexMatrix>& state = std::nullopt) {
  return SampleOutcome{violation, Witness{std::move(description), lhs, rhs, state}};
}

struct Runner {
  const HarnessConfig& config;
  std::vector<PropertyReport> reports;

  void add(const std::string& id, Expectation expectation, double tolerance, std::size_t batch,
           const Sampler& sampler, const std::string& note = {}) {
    if (!config.selected(id)) return;
    auto report = run_check(id, expectation, tolerance, batch, config.seed, sampler);
    if (!note.empty()) report.note = report.note.empty() ? note : note + "; " + report.note;
    reports.push_back(std::move(report));
  }
};

}  // namespace

std::string expectation_name(Expectation e) {
  switch (e) {
    case Expectation::Holds: return "holds";
    case Expectation::Violated: return "violated";
    case Expectation::Probe: return "probe";
  }
  return "unknown";
}

std::string to_json_line(const PropertyReport& r) {
  Json j;
  j["id"] = r.id;
  j["pass"] = r.pass;
  j["worst_violation"] = number(r.worst_violation);
  j["worst_case_seed"] = r.worst_case_seed;
  j["samples"] = r.samples;
  j["elapsed_ms"] = r.elapsed_ms;
  j["expectation"] = expectation_name(r.expectation);
  j["tolerance"] = r.tolerance;
  if (r.witness) {
    Json w;
    w["description"] = r.witness->description;
    w["lhs"] = number(r.witness->lhs);
    w["rhs"] = number(r.witness->rhs);
    if (r.witness->state) w["state"] = matrix_json(*r.witness->state);
    j["witness"] = std::move(w);
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j.dump();
}

bool HarnessConfig::selected(const std::string& id) const {
  if (filter.empty()) return true;
  return std::any_of(filter.begin(), filter.end(),
                     [&](const std::string& f) { return id.rfind(f, 0) == 0; });
}

PropertyReport run_check(const std::string& id, Expectation expectation, double tolerance,
                         std::size_t batch, std::uint64_t seed, const Sampler& sampler) {
  const auto start = std::chrono::steady_clock::now();
  PropertyReport report;
  report.id = id;
  report.expectation = expectation;
  report.tolerance = tolerance;
  report.worst_violation = -kInfinity;
  const std::uint64_t check_seed = seed_from_tag(seed, id);
  for (std::size_t k = 0; k < batch; ++k) {
    const std::uint64_t sample_seed = mix_seed(check_seed, k);
    Rng rng(sample_seed);
    SampleOutcome out;
    try {
      out = sampler(rng, k);
    } catch (const Error& e) {
      out.violation = kInfinity;
      out.witness = Witness{std::string("exception: ") + e.what(), 0.0, 0.0, std::nullopt};
    }
    if (std::isnan(out.violation)) out.violation = kInfinity;
    if (k == 0 || out.violation > report.worst_violation) {
      report.worst_violation = out.violation;
      report.worst_case_seed = sample_seed;
      report.witness = std::move(out.witness);
    }
  }
  report.samples = batch;
  switch (expectation) {
    case Expectation::Holds: report.pass = report.worst_violation <= tolerance; break;
    case Expectation::Violated: report.pass = report.worst_violation > tolerance; break;
    case Expectation::Probe: report.pass = true; break;
  }
  if (expectation == Expectation::Holds && report.pass) report.witness.reset();
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool all_passed(const std::vector<PropertyReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const PropertyReport& r) { return r.pass; });
}

// ---------------------------------------------------------------------------
// generators and fixed states

SubsystemLayout default_layout(std::size_t k) { return SubsystemLayout{2, k % 2 == 0 ? 2u : 3u}; }

DensityOperator sample_state(const SubsystemLayout& layout, Rng& rng, std::size_t k) {
  const std::size_t d = layout.total();
  std::size_t rank = 0;
  switch (k % 4) {
    case 0: rank = 1; break;
    case 1: rank = d; break;
    default: rank = 1 + rng.index(d); break;
  }
  return random_density(layout, rank, rng);
}

DoubledState doubled(const DensityOperator& rho, const DensityOperator& other,
                     const ProjectiveObservable& a) {
  if (a.subsystem() != 0) throw LayoutMismatch("doubled: observable must act on slot 0");
  const auto joint = kron(rho, other);
  const std::size_t n = rho.layout().size();
  const std::size_t m = other.layout().size();
  std::vector<std::size_t> order{0, n};
  for (std::size_t s = 1; s < n; ++s) order.push_back(s);
  for (std::size_t s = 1; s < m; ++s) order.push_back(n + s);
  const ComplexMatrix moved = permute_subsystems(joint.matrix(), joint.layout(), order);
  std::vector<std::size_t> dims{rho.layout().dim(0) * other.layout().dim(0)};
  for (std::size_t s = 1; s < n; ++s) dims.push_back(rho.layout().dim(s));
  for (std::size_t s = 1; s < m; ++s) dims.push_back(other.layout().dim(s));
  return DoubledState{DensityOperator::trusted(moved, SubsystemLayout(dims)),
                      ProjectiveObservable::from_basis(0, kron(a.basis(), a.basis()))};
}

DensityOperator singlet() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi[1] = 1.0 / std::numbers::sqrt2;
  psi[2] = -1.0 / std::numbers::sqrt2;
  return DensityOperator::from_pure(psi, SubsystemLayout{2, 2});
}

DensityOperator werner_state(double eps) {
  if (eps < 0.0 || eps > 1.0) throw ParameterOutOfRange("werner_state: eps must lie in [0, 1]");
  const ComplexMatrix m = (1.0 - eps) * identity(4) / 4.0 + eps * singlet().matrix();
  return DensityOperator::from_matrix(m, SubsystemLayout{2, 2});
}

DensityOperator mu_state(double mu) {
  if (mu < 0.0 || mu > 1.0) throw ParameterOutOfRange("mu_state: mu must lie in [0, 1]");
  const ComplexMatrix m = identity(4) / 4.0 +
                          (mu / 4.0) * (kron(pauli_x(), pauli_x()) - kron(pauli_y(), pauli_y())) +
                          ((2.0 * mu - 1.0) / 4.0) * kron(pauli_z(), pauli_z());
  return DensityOperator::from_matrix(m, SubsystemLayout{2, 2});
}

std::vector<RealityQuantifierSpec> default_specs() {
  using S = RealityQuantifierSpec;
  return {S::von_neumann(),   S::renyi_down(0.5), S::renyi_up(0.5), S::renyi_bar(0.5),
          S::sandwiched(0.5), S::sandwiched(0.75), S::min_rel(),    S::max_rel(),
          S::tsallis(0.5),    S::tsallis(1.5),    S::tsallis(2.0)};
}

std::vector<RealityQuantifierSpec> extended_specs() {
  using S = RealityQuantifierSpec;
  return {S::renyi_down(1.5), S::renyi_down(2.0), S::renyi_down(3.0),
          S::sandwiched(0.3), S::sandwiched(1.5), S::sandwiched(3.0)};
}

// ---------------------------------------------------------------------------
// Axiom 1

namespace {

SampleOutcome axiom1_sample(const RealityQuantifierSpec& spec, Rng& rng, std::size_t k,
                            std::size_t d_b) {
  const SubsystemLayout layout = d_b == 0 ? default_layout(k) : SubsystemLayout{2, d_b};
  const auto rho = sample_state(layout, rng, k);
  const auto a = random_observable(0, 2, rng);
  const auto phi = phi_A(rho, a);
  const auto u = stinespring_unitary(a, layout);
  const auto ups_t = dilate(rho, u);
  const auto ups_0 = kron(rho, environment_ground(u.env_dim));
  const std::size_t env = layout.size();
  const double d_a = static_cast<double>(a.dim());

  switch (spec.kind) {
    case QuantifierKind::RenyiUp: {
      const double alpha = spec.parameter;
      const double delta_i =
          sibson_closed_form(ups_t, env, alpha) - sibson_closed_form(ups_0, env, alpha);
      const double delta_r = quantify(phi, a, spec, rng) - quantify(rho, a, spec, rng);
      return outcome(std::abs(delta_i - delta_r), "Delta I (Sibson on the dilation) vs Delta R",
                     delta_i, delta_r, rho.matrix());
    }
    case QuantifierKind::RenyiBar: {
      // The restricted conditional information reduces to ln d_E + D(rho || phi(sigma))
      // for every sigma, so the infima coincide; checked pointwise at random sigma.
      const DivergenceSpec div = DivergenceSpec::renyi(spec.parameter);
      const auto sigma = random_density(layout, layout.total(), rng);
      const auto phi_sigma = phi_A(sigma, a);
      const auto target = kron(phi_sigma, DensityOperator::maximally_mixed(SubsystemLayout{u.env_dim}));
      const double lhs_t = divergence(ups_t, target, div);
      const double rhs_t = std::log(d_a) + divergence(rho, phi_sigma, div);
      const auto target0 = kron(rho, DensityOperator::maximally_mixed(SubsystemLayout{u.env_dim}));
      const double lhs_0 = divergence(ups_0, target0, div);
      const double top = quantify(phi, a, spec, rng);
      const double v = std::max({std::abs(lhs_t - rhs_t), std::abs(lhs_0 - std::log(d_a)),
                                 std::abs(top - std::log(d_a))});
      return outcome(v, "I(v_t) at sigma vs ln d_E + D(rho||phi(sigma)); I(v_0) vs ln d_E; R(phi rho) vs max",
                     lhs_t, rhs_t, rho.matrix());
    }
    default: break;
  }

  const DivergenceSpec div = divergence_for(spec);
  const double delta_i =
      conditional_information(ups_t, env, div) - conditional_information(ups_0, env, div);
  const double delta_r = quantify(phi, a, spec, rng) - quantify(rho, a, spec, rng);
  if (spec.kind == QuantifierKind::Tsallis) {
    // The stated flow is Delta I = D_q(rho || phi(rho)); the quantifier moves by
    // d_A^{1-q} times that, so the identity is asserted with the scale restored.
    const double q = spec.parameter;
    const double dq = divergence(rho, phi, DivergenceSpec::tsallis(q));
    const double scale = std::abs(q - 1.0) < kLimitRouting ? 1.0 : std::pow(d_a, 1.0 - q);
    const double v = std::max(std::abs(delta_i - dq), std::abs(scale * delta_i - delta_r));
    return outcome(v, "Delta I vs D_q(rho||phi rho); d_A^{1-q} Delta I vs Delta R", scale * delta_i,
                   delta_r, rho.matrix());
  }
  return outcome(std::abs(delta_i - delta_r), "Delta I along the dilation vs Delta R", delta_i,
                 delta_r, rho.matrix());
}

}  // namespace

PropertyReport check_axiom1_flow(const RealityQuantifierSpec& spec, std::size_t batch,
                                 std::uint64_t seed, std::size_t d_b) {
  const double tolerance = is_bar(spec) ? tol::kOptimizer : tol::kInequality;
  return run_check("axiom1." + spec.name(), from_cell(table_two(Axiom::A1, spec)), tolerance, batch,
                   seed, [&](Rng& rng, std::size_t k) { return axiom1_sample(spec, rng, k, d_b); });
}

// ---------------------------------------------------------------------------
// Axioms 2-7

namespace {

const std::vector<Axiom> kAllAxioms{Axiom::A1, Axiom::A2, Axiom::A3a, Axiom::A3b,
                                    Axiom::A4, Axiom::A5, Axiom::A6, Axiom::A7};

void add_axiom_checks(Runner& run, const RealityQuantifierSpec& spec, const std::vector<Axiom>& axioms) {
  auto want = [&](Axiom ax) { return std::find(axioms.begin(), axioms.end(), ax) != axioms.end(); };
  const bool bar = is_bar(spec);
  const std::size_t batch = run.config.batch;
  const double ineq = bar ? tol::kOptimizer : tol::kInequality;
  const double ident = bar ? tol::kOptimizer : tol::kIdentity;
  const std::string suffix = "." + spec.name();
  auto expect = [&](Axiom ax) { return from_cell(table_two(ax, spec)); };

  if (want(Axiom::A1) && run.config.selected("axiom1" + suffix)) {
    auto report = check_axiom1_flow(spec, batch, run.config.seed);
    if (spec.kind == QuantifierKind::Tsallis) {
      report.note = "asserted as d_A^{1-q} Delta I = Delta R with Delta I = D_q(rho||phi rho)";
    }
    run.reports.push_back(std::move(report));
    if (spec.kind == QuantifierKind::Tsallis) {
      run.add("axiom1" + suffix + ".unscaled", Expectation::Probe, tol::kInequality, batch,
              [spec](Rng& rng, std::size_t k) {
                const auto rho = sample_state(default_layout(k), rng, k);
                const auto a = random_observable(0, 2, rng);
                const auto phi = phi_A(rho, a);
                const double dq = divergence(rho, phi, DivergenceSpec::tsallis(spec.parameter));
                const double dr = quantify(phi, a, spec, rng) - quantify(rho, a, spec, rng);
                return outcome(std::abs(dq - dr), "|Delta I - Delta R| without the d_A^{1-q} factor",
                               dq, dr);
              });
    }
  }

  if (want(Axiom::A2)) {
    run.add("axiom2" + suffix, expect(Axiom::A2), ineq, batch, [spec, ineq](Rng& rng, std::size_t k) {
      DensityOperator rho = sample_state(default_layout(k), rng, k);
      ProjectiveObservable a = random_observable(0, 2, rng);
      if (k == 0) {
        rho = werner_state(0.5);
        a = sigma_z_on(0);
      }
      const double eps = rng.uniform();
      const double mx = max_for(spec, a);
      const double r = quantify(rho, a, spec, rng);
      const double rm = quantify(monitoring(rho, a, eps), a, spec, rng);
      const double rp = quantify(phi_A(rho, a), a, spec, rng);
      double v = std::max({-r, r - rm, rm - rp, std::abs(rp - mx), r - mx});
      std::string what = "0 <= R(rho) <= R(M rho) <= R(phi rho) = max";
      const bool real = max_abs_diff(rho.matrix(), phi_A(rho, a).matrix()) < 1e-6;
      if (!real && r > mx - ineq) {
        v = std::max(v, 1.0);
        what = "state that is not A-real attains the maximum";
      }
      return outcome(v, what, r, mx, rho.matrix());
    });
  }

  // Axiom 3a on A ⊗ B ⊗ C, discarding C.
  if (want(Axiom::A3a)) run.add("axiom3a" + suffix, expect(Axiom::A3a), ineq, batch, [spec, bar](Rng& rng, std::size_t k) {
    const SubsystemLayout layout{2, bar ? 2u : (k % 2 == 0 ? 2u : 3u), 2};
    const auto rho = sample_state(layout, rng, k);
    const auto a = random_observable(0, 2, rng);
    const std::size_t keep[] = {0, 1};
    const auto reduced = partial_trace(rho, keep);
    const double r = quantify(rho, a, spec, rng);
    const double rr = quantify(reduced, a, spec, rng);
    const auto omega = random_density(SubsystemLayout{2}, 2, rng);
    const auto product = kron(reduced, omega);
    const double rprod = quantify(product, a, spec, rng);
    const double v = std::max(r - rr, std::abs(rprod - rr));
    return outcome(v, "R(Tr_C rho) >= R(rho); equality for uncorrelated C", rr, r, rho.matrix());
  });
  if (want(Axiom::A3b)) run.add("axiom3b" + suffix, expect(Axiom::A3b), ident, batch, [spec](Rng& rng, std::size_t k) {
    const auto rho = sample_state(default_layout(k), rng, k);
    const auto a = random_observable(0, 2, rng);
    const auto omega = sample_state(SubsystemLayout{2}, rng, k + 1);
    const double r = quantify(rho, a, spec, rng);
    const double r2 = quantify(kron(rho, omega), a, spec, rng);
    return outcome(std::abs(r2 - r), "R(rho ⊗ Omega) = R(rho)", r2, r, rho.matrix());
  });

  if (want(Axiom::A4)) run.add("axiom4" + suffix, expect(Axiom::A4), ineq, batch, [spec, ineq](Rng& rng, std::size_t k) {
    DensityOperator rho = sample_state(default_layout(k), rng, k);
    ProjectiveObservable x = random_observable(0, 2, rng);
    ProjectiveObservable y = random_observable(0, 2, rng);
    if (k == 0) {
      rho = werner_state(0.5);
      x = sigma_z_on(0);
      y = sigma_x_on(0);
    }
    const double mx = max_for(spec, x);
    const double lhs = quantify(rho, x, spec, rng) + quantify(rho, y, spec, rng);
    double v = lhs - 2.0 * mx;
    std::string what = "R_X + R_Y <= 2 max";
    // Saturation away from classical-like preparations: random states and
    // random noncommuting X, Y are almost surely neither X- nor Y-real.
    const bool x_real = max_abs_diff(rho.matrix(), phi_A(rho, x).matrix()) < 1e-6;
    const bool y_real = max_abs_diff(rho.matrix(), phi_A(rho, y).matrix()) < 1e-6;
    if (!(x_real && y_real) && lhs > 2.0 * mx - ineq) {
      v = std::max(v, 1.0);
      what = "saturation for a state that is neither X- nor Y-real";
    }
    // Saturation at (1/d) ⊗ rho_B.
    const std::size_t keep[] = {1};
    const auto classical = kron(DensityOperator::maximally_mixed(SubsystemLayout{2}),
                                partial_trace(rho, keep));
    const double lhs_c = quantify(classical, x, spec, rng) + quantify(classical, y, spec, rng);
    v = std::max(v, std::abs(lhs_c - 2.0 * mx));
    return outcome(v, what, lhs, 2.0 * mx, rho.matrix());
  });

  if (want(Axiom::A5)) run.add("axiom5" + suffix, expect(Axiom::A5), ineq, batch, [spec](Rng& rng, std::size_t k) {
    const SubsystemLayout layout = default_layout(k);
    std::vector<DensityOperator> states;
    std::vector<double> weights;
    auto a = random_observable(0, 2, rng);
    if (k == 0) {
      states = {DensityOperator::maximally_mixed(SubsystemLayout{2, 2}), singlet()};
      weights = {0.5, 0.5};
      a = sigma_z_on(0);
    } else {
      const std::size_t n = 2 + k % 2;
      for (std::size_t i = 0; i < n; ++i) states.push_back(sample_state(layout, rng, k + i));
      weights = random_weights(n, rng);
    }
    const Ensemble ens(weights, states);
    double mean = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) mean += weights[i] * quantify(states[i], a, spec, rng);
    const auto mix = ens.average();
    const double r = quantify(mix, a, spec, rng);
    return outcome(mean - r, "R(sum p_i rho_i) >= sum p_i R(rho_i)", r, mean, mix.matrix());
  });

  if (want(Axiom::A6)) run.add("axiom6" + suffix, expect(Axiom::A6), ident, batch, [spec, bar](Rng& rng, std::size_t k) {
    DensityOperator rho = sample_state(bar ? SubsystemLayout{2} : default_layout(k), rng, k);
    DensityOperator other = sample_state(bar ? SubsystemLayout{2, 2} : default_layout(k + 1), rng, k + 1);
    auto a = random_observable(0, 2, rng);
    if (k == 0) {
      rho = DensityOperator::maximally_mixed(SubsystemLayout{2, 2});
      other = rho;
      a = sigma_z_on(0);
    }
    const auto d = doubled(rho, other, a);
    const double joint = quantify(d.state, d.observable, spec, rng);
    const double sum = quantify(rho, a, spec, rng) + quantify(other, a, spec, rng);
    return outcome(std::abs(joint - sum), "R(rho ⊗ rho') = R(rho) + R(rho'), A on each copy", joint,
                   sum, rho.matrix());
  });

  if (want(Axiom::A7)) run.add("axiom7" + suffix, expect(Axiom::A7), ident, batch, [spec, bar](Rng& rng, std::size_t k) {
    const SubsystemLayout layout = bar ? SubsystemLayout{2, 2} : default_layout(k);
    std::vector<DensityOperator> states;
    std::vector<double> weights;
    auto a = random_observable(0, 2, rng);
    if (k == 0) {
      states = {singlet(), DensityOperator::maximally_mixed(SubsystemLayout{2, 2})};
      weights = {0.5, 0.5};
      a = sigma_z_on(0);
    } else {
      for (std::size_t i = 0; i < 2; ++i) states.push_back(sample_state(layout, rng, k + i));
      weights = random_weights(2, rng);
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) mean += weights[i] * quantify(states[i], a, spec, rng);
    const auto flagged = flag(Ensemble(weights, states));
    const double r = quantify(flagged, a, spec, rng);
    return outcome(std::abs(r - mean), "R(sum p_i rho_i ⊗ |i><i|) = sum p_i R(rho_i)", r, mean,
                   flagged.matrix());
  });
}

}  // namespace

std::vector<PropertyReport> check_axiom_suite(const std::vector<RealityQuantifierSpec>& specs,
                                              const HarnessConfig& config) {
  Runner run{config, {}};
  for (const auto& spec : specs) add_axiom_checks(run, spec, kAllAxioms);
  // Wider parameters: Axiom 3a per its own ranges, mixing probed outside the monotone range.
  for (const auto& spec : extended_specs()) add_axiom_checks(run, spec, {Axiom::A3a, Axiom::A5});
  return std::move(run.reports);
}

// ---------------------------------------------------------------------------
// dilation fixed point, trace and entropy lemmas, monitoring

std::vector<PropertyReport> check_lemmas_and_theorem(const HarnessConfig& config) {
  Runner run{config, {}};
  const std::size_t batch = config.batch;

  for (std::size_t d_a : {2u, 3u}) {
    run.add("theorem1.dA" + std::to_string(d_a), Expectation::Holds, tol::kIdentity, batch,
            [d_a](Rng& rng, std::size_t k) {
              const std::size_t d_b = 1 + k % 3;
              const SubsystemLayout layout = d_b == 1 ? SubsystemLayout{d_a} : SubsystemLayout{d_a, d_b};
              const auto rho = sample_state(layout, rng, k);
              const auto a = random_observable(0, d_a, rng);
              const auto u = stinespring_unitary(a, layout);
              const auto phi = phi_A(rho, a);
              const ComplexMatrix fixed = kron(phi.matrix(), identity(u.env_dim) / static_cast<double>(u.env_dim));
              const double commute = max_abs_diff(u.matrix * fixed * u.matrix.adjoint(), fixed);
              const auto ups = dilate(rho, u);
              std::vector<std::size_t> keep(layout.size());
              for (std::size_t s = 0; s < keep.size(); ++s) keep[s] = s;
              const double reduced = max_abs_diff(partial_trace(ups, keep).matrix(), phi.matrix());
              return outcome(std::max(commute, reduced), "U (phi ⊗ 1/d) U† = phi ⊗ 1/d; Tr_E v = phi",
                             commute, reduced, rho.matrix());
            });
  }

  const std::vector<std::pair<std::string, std::function<double(double)>>> functions = {
      {"square", [](double x) { return x * x; }},
      {"log1p", [](double x) { return std::log1p(x); }},
      {"power0.3", [](double x) { return std::pow(x, 0.3); }},
  };
  for (const auto& [name, f] : functions) {
    run.add("lemma1." + name, Expectation::Holds, tol::kIdentity, batch, [f](Rng& rng, std::size_t k) {
      const auto rho = sample_state(default_layout(k), rng, k);
      const auto a = random_observable(0, 2, rng);
      const auto phi = phi_A(rho, a);
      const ComplexMatrix fphi = matrix_function(phi.matrix(), f);
      const double lhs = (rho.matrix() * fphi).trace().real();
      const double rhs = (phi.matrix() * fphi).trace().real();
      return outcome(std::abs(lhs - rhs), "Tr[rho f(phi)] = Tr[phi f(phi)]", lhs, rhs, rho.matrix());
    });
  }

  run.add("lemma2.bound", Expectation::Holds, tol::kInequality, batch, [](Rng& rng, std::size_t k) {
    const auto rho = sample_state(default_layout(k), rng, k);
    const auto a = random_observable(0, 2, rng);
    const double d = divergence(rho, phi_A(rho, a), DivergenceSpec::von_neumann());
    const auto rho_a = partial_trace(rho, {0});
    const double s = entropy(phi_A(rho_a, a));
    const double v = std::max(d - s, s - std::log(2.0));
    return outcome(v, "D(rho||phi rho) <= S(phi(rho_A)) <= ln d_A", d, s, rho.matrix());
  });
  run.add("lemma2.equality", Expectation::Holds, tol::kIdentity, batch, [](Rng& rng, std::size_t k) {
    const auto psi = haar_pure(default_layout(k), rng);
    const auto a = random_observable(0, 2, rng);
    const double d = divergence(psi, phi_A(psi, a), DivergenceSpec::von_neumann());
    const double s = entropy(phi_A(partial_trace(psi, {0}), a));
    return outcome(std::abs(d - s), "pure states saturate: D(psi||phi psi) = H(p)", d, s, psi.matrix());
  });

  const auto vn = RealityQuantifierSpec::von_neumann();
  run.add("lemma3.equality", Expectation::Holds, tol::kIdentity, batch, [vn](Rng& rng, std::size_t k) {
    const auto x = random_observable(0, 2, rng);
    ComplexMatrix swapped(2, 2);
    swapped.col(0) = x.basis().col(1);
    swapped.col(1) = x.basis().col(0);
    const auto y = ProjectiveObservable::from_basis(0, swapped);
    const auto rho = phi_A(sample_state(default_layout(k), rng, k), x);
    const double lhs = reality_vn(rho, x).value + reality_vn(rho, y).value;
    return outcome(std::abs(lhs - 2.0 * std::log(2.0)), "[X,Y] = 0 and rho = phi_X(rho): saturation",
                   lhs, 2.0 * std::log(2.0), rho.matrix());
  });
  run.add("lemma3.strict", Expectation::Holds, tol::kInequality, batch, [](Rng& rng, std::size_t k) {
    const auto rho = sample_state(default_layout(k), rng, k);
    const auto x = random_observable(0, 2, rng);
    const auto y = random_observable(0, 2, rng);
    const double lhs = reality_vn(rho, x).value + reality_vn(rho, y).value;
    const double bound = 2.0 * std::log(2.0);
    double v = lhs - bound;
    if (lhs > bound - tol::kInequality) v = 1.0;
    return outcome(v, "R_X + R_Y < 2 ln d_A unless rho = phi_X(rho) = phi_Y(rho)", lhs, bound,
                   rho.matrix());
  });

  run.add("lemma4.mub", Expectation::Holds, tol::kInequality, batch, [](Rng& rng, std::size_t k) {
    const auto rho = sample_state(default_layout(k), rng, k);
    const double eps = rng.uniform();
    const bool swap = k % 2 == 1;
    const auto x = swap ? sigma_x_on(0) : sigma_z_on(0);
    const auto y = swap ? sigma_z_on(0) : sigma_x_on(0);
    const double before = reality_vn(rho, x).value;
    const double after = reality_vn(monitoring(rho, y, eps), x).value;
    return outcome(before - after, "R_X(M_Y^eps rho) >= R_X(rho) for MUB X, Y", after, before,
                   rho.matrix());
  });
  run.add("lemma4.nonmub", Expectation::Probe, tol::kInequality, batch, [](Rng& rng, std::size_t k) {
    const auto rho = sample_state(default_layout(k), rng, k);
    const double eps = rng.uniform();
    const auto x = random_observable(0, 2, rng);
    const auto y = random_observable(0, 2, rng);
    const double before = reality_vn(rho, x).value;
    const double after = reality_vn(monitoring(rho, y, eps), x).value;
    return outcome(before - after, "cross-monitoring outside the MUB hypothesis", after, before,
                   rho.matrix());
  }, "hypothesis unmet; decreases are permitted");

  run.add("monitoring.gain", Expectation::Holds, tol::kInequality, batch, [](Rng& rng, std::size_t k) {
    const auto rho = sample_state(default_layout(k), rng, k);
    const auto a = random_observable(0, 2, rng);
    const double eps = rng.uniform();
    const double gain = reality_vn(monitoring(rho, a, eps), a).value - reality_vn(rho, a).value;
    const double floor = eps * irreality(rho, a);
    return outcome(floor - gain, "R(M^eps rho) - R(rho) >= eps I(rho)", gain, floor, rho.matrix());
  });
  run.add("monitoring.composition", Expectation::Holds, tol::kIdentity, batch, [](Rng& rng, std::size_t k) {
    const auto rho = sample_state(default_layout(k), rng, k);
    const auto a = random_observable(0, 2, rng);
    const double e1 = rng.uniform();
    const double e2 = rng.uniform();
    const auto twice = monitoring(monitoring(rho, a, e1), a, e2);
    const auto once = monitoring(rho, a, e1 + e2 - e1 * e2);
    const double v = max_abs_diff(twice.matrix(), once.matrix());
    return outcome(v, "M^b M^a = M^{a+b-ab}", v, 0.0);
  });
  run.add("shift.composition", Expectation::Holds, tol::kIdentity, batch, [](Rng& rng, std::size_t) {
    const std::size_t d = 2 + rng.index(4);
    const std::size_t j = rng.index(2 * d);
    const std::size_t l = rng.index(2 * d);
    const double v = std::max(
        max_abs_diff(shift_operator(d, j) * shift_operator(d, l), shift_operator(d, (j + l) % d)),
        max_abs_diff(shift_operator(d, d), identity(d)));
    return outcome(v, "T^j T^l = T^{(j+l) mod d}, T^d = 1", v, 0.0);
  });
  return std::move(run.reports);
}

// ---------------------------------------------------------------------------
// Sibson identity

PropertyReport check_sibson_identity(std::size_t batch, std::uint64_t seed,
                                     const std::vector<double>& alphas) {
  auto report = run_check("sibson.identity", Expectation::Holds, tol::kOptimizer, batch, seed,
                          [&alphas](Rng& rng, std::size_t k) {
                            const auto rho = sample_state(default_layout(k), rng, k);
                            double worst = 0.0;
                            double closed_at = 0.0;
                            double numeric_at = 0.0;
                            for (double alpha : alphas) {
                              const double closed = sibson_closed_form(rho, 0, alpha);
                              const double numeric = sibson_numeric(rho, 0, alpha, rng.engine()()).value;
                              // The closed form is the infimum, so the optimizer may only sit above it.
                              const double v = std::max(std::abs(numeric - closed), closed - numeric);
                              if (v >= worst) {
                                worst = v;
                                closed_at = closed;
                                numeric_at = numeric;
                              }
                            }
                            return outcome(worst, "Sibson closed form vs direct minimization",
                                           closed_at, numeric_at, rho.matrix());
                          });
  return report;
}

// ---------------------------------------------------------------------------
// identities among the quantifiers

std::vector<PropertyReport> check_reality_identities(const HarnessConfig& config) {
  Runner run{config, {}};
  const std::size_t batch = config.batch;

  run.add("complementarity", Expectation::Holds, tol::kComplementarity, batch, [](Rng& rng, std::size_t k) {
    const auto rho = sample_state(default_layout(k), rng, k);
    const auto a = random_observable(0, 2, rng);
    const double r = reality_vn(rho, a).value;
    const double i = irreality(rho, a);
    return outcome(std::abs(r + i - std::log(2.0)), "R + I = ln d_A", r + i, std::log(2.0), rho.matrix());
  });
  run.add("decomposition", Expectation::Holds, tol::kIdentity, batch, [](Rng& rng, std::size_t k) {
    const auto rho = sample_state(default_layout(k), rng, k);
    const auto a = random_observable(0, 2, rng);
    const double total = irreality(rho, a);
    const double local = irreality(partial_trace(rho, {0}), a);
    const double disc = discord_A(rho, a);
    return outcome(std::abs(total - local - disc), "I(rho) = I(rho_A) + D_A(rho)", total, local + disc,
                   rho.matrix());
  });
  run.add("renyiUp.dilation", Expectation::Holds, tol::kIdentity, batch, [](Rng& rng, std::size_t k) {
    const auto rho = sample_state(default_layout(k), rng, k);
    const auto a = random_observable(0, 2, rng);
    const double alpha = 0.05 + 0.9 * rng.uniform();
    const double direct = reality_renyi_up(rho, a, alpha).value;
    const double dilated = reality_renyi_up_dilated(rho, a, alpha).value;
    return outcome(std::abs(direct - dilated), "phi_A(rho^alpha) path vs dilate-then-trace path",
                   direct, dilated, rho.matrix());
  });
  run.add("renyi.ordering", Expectation::Holds, tol::kOptimizer, config.batch,
          [](Rng& rng, std::size_t k) {
            const auto rho = sample_state(default_layout(k), rng, k);
            const auto a = random_observable(0, 2, rng);
            const double alpha = 0.1 + 0.8 * rng.uniform();
            const double down = reality_renyi_down(rho, a, alpha).value;
            const double up = reality_renyi_up(rho, a, alpha).value;
            const double bar = quantify(rho, a, RealityQuantifierSpec::renyi_bar(alpha), rng);
            const double v = std::max(down - bar, bar - up);
            return outcome(v, "R_down <= R_bar <= R_up", bar, up, rho.matrix());
          });
  run.add("renyiBar.up_gap", Expectation::Probe, tol::kOptimizer, config.batch,
          [](Rng& rng, std::size_t k) {
            const auto rho = sample_state(default_layout(k), rng, k);
            const auto a = random_observable(0, 2, rng);
            const double alpha = 0.1 + 0.8 * rng.uniform();
            const double up = reality_renyi_up(rho, a, alpha).value;
            const double bar = quantify(rho, a, RealityQuantifierSpec::renyi_bar(alpha), rng);
            return outcome(std::abs(up - bar), "|R_up - R_bar|", up, bar, rho.matrix());
          }, "expected to vanish up to optimizer tolerance for alpha in (0,1)");
  run.add("renyiBar.down_gap", Expectation::Probe, tol::kOptimizer, config.batch,
          [](Rng& rng, std::size_t k) {
            const auto rho = sample_state(default_layout(k), rng, k);
            const auto a = random_observable(0, 2, rng);
            const double alpha = 0.1 + 0.8 * rng.uniform();
            const double down = reality_renyi_down(rho, a, alpha).value;
            const double bar = quantify(rho, a, RealityQuantifierSpec::renyi_bar(alpha), rng);
            return outcome(bar - down, "R_bar - R_down", bar, down, rho.matrix());
          }, "largest gap between the restricted and unoptimized Renyi quantifiers");

  run.add("zero.cq_maximal", Expectation::Holds, tol::kIdentity, batch, [](Rng& rng, std::size_t k) {
    const SubsystemLayout layout = default_layout(k);
    const auto a = random_observable(0, 2, rng);
    const std::size_t d_b = layout.dim(1);
    const auto w = random_weights(2, rng);
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(layout.total()),
                                          static_cast<Eigen::Index>(layout.total()));
    for (std::size_t i = 0; i < 2; ++i) {
      const auto cond = sample_state(SubsystemLayout{d_b}, rng, k + i);
      m += w[i] * kron(a.projectors()[i], cond.matrix());
    }
    const auto rho = DensityOperator::from_matrix(m, layout);
    const double alpha = 0.05 + 0.9 * rng.uniform();
    const double v = std::max(std::abs(reality_renyi_down(rho, a, alpha).value - std::log(2.0)),
                              std::abs(reality_vn(rho, a).value - std::log(2.0)));
    return outcome(v, "sum_i p_i A_i ⊗ rho_i attains ln d_A", v, 0.0, rho.matrix());
  });
  run.add("zero.noncq_strict", Expectation::Holds, tol::kInequality, batch, [](Rng& rng, std::size_t k) {
    const auto rho = sample_state(default_layout(k), rng, k);
    const auto a = random_observable(0, 2, rng);
    const double alpha = 0.05 + 0.9 * rng.uniform();
    const double r = reality_renyi_down(rho, a, alpha).value;
    const double v = r > std::log(2.0) - tol::kInequality ? 1.0 : r - std::log(2.0);
    return outcome(v, "states that are not classical-quantum stay below ln d_A", r, std::log(2.0),
                   rho.matrix());
  });
  run.add("zero.literal", Expectation::Probe, tol::kIdentity, batch, [](Rng& rng, std::size_t k) {
    const SubsystemLayout layout = default_layout(k);
    const auto a = random_observable(0, 2, rng);
    const auto rho = phi_A(sample_state(layout, rng, k), a);
    const double r = reality_renyi_down(rho, a, 0.5).value;
    return outcome(r, "R_down on a classical-quantum state, read as a zero claim", r, 0.0);
  }, "the vanishing reading contradicts Axiom 2; the maximal reading is asserted instead");

  run.add("limit.renyiDown", Expectation::Holds, tol::kLimit, batch, [](Rng& rng, std::size_t k) {
    const auto rho = sample_state(default_layout(k), rng, k);
    const auto a = random_observable(0, 2, rng);
    const double r = reality_vn(rho, a).value;
    const double lo = reality_renyi_down(rho, a, 1.0 - 1e-5, Mode::Exploratory).value;
    const double hi = reality_renyi_down(rho, a, 1.0 + 1e-5, Mode::Exploratory).value;
    return outcome(std::max(std::abs(lo - r), std::abs(hi - r)), "alpha = 1 -+ 1e-5 vs vN", lo, r);
  });
  run.add("limit.tsallis", Expectation::Holds, tol::kLimit, batch, [](Rng& rng, std::size_t k) {
    const auto rho = sample_state(default_layout(k), rng, k);
    const auto a = random_observable(0, 2, rng);
    const double r = reality_vn(rho, a).value;
    const double lo = reality_tsallis(rho, a, 1.0 - 1e-5).value;
    const double hi = reality_tsallis(rho, a, 1.0 + 1e-5).value;
    return outcome(std::max(std::abs(lo - r), std::abs(hi - r)), "q = 1 -+ 1e-5 vs vN", lo, r);
  });
  run.add("limit.renyiBar", Expectation::Holds, tol::kLimit, config.batch,
          [](Rng& rng, std::size_t k) {
            const auto rho = sample_state(default_layout(k), rng, k);
            const auto a = random_observable(0, 2, rng);
            const double down = reality_renyi_down(rho, a, 1.0 - 1e-5).value;
            const double bar = quantify(rho, a, RealityQuantifierSpec::renyi_bar(1.0 - 1e-5), rng);
            return outcome(std::abs(bar - down), "R_bar vs R_down at alpha = 1 - 1e-5", bar, down);
          });
  run.add("alpha_monotone.renyiDown", Expectation::Holds, tol::kInequality, batch,
          [](Rng& rng, std::size_t k) {
            const auto rho = sample_state(default_layout(k), rng, k);
            const auto a = random_observable(0, 2, rng);
            double prev = reality_renyi_down(rho, a, 0.125).value;
            double v = -kInfinity;
            for (double alpha : {0.25, 0.5, 0.75, 0.999, 1.5, 2.0}) {
              const double cur = reality_renyi_down(rho, a, alpha, Mode::Exploratory).value;
              v = std::max(v, cur - prev);
              prev = cur;
            }
            return outcome(v, "R_down nonincreasing in alpha", v, 0.0, rho.matrix());
          });
  run.add("uncertainty.discord", Expectation::Holds, tol::kInequality, config.batch,
          [](Rng& rng, std::size_t k) {
            const auto rho = sample_state(default_layout(k), rng, k);
            const auto x = random_observable(0, 2, rng);
            const auto y = random_observable(0, 2, rng);
            const auto b = uncertainty_bound(rho, x, y);
            const double v = std::max(b.lhs - b.bound, b.lhs - b.discord_bound);
            return outcome(v, "R_X + R_Y <= 2 (ln d_A - one-sided discord)", b.lhs, b.discord_bound,
                           rho.matrix());
          });
  return std::move(run.reports);
}

// ---------------------------------------------------------------------------
// divergence property table

namespace {

struct FamilyCase {
  DivergenceSpec spec;
  Family table_family;
};

std::vector<FamilyCase> table_one_cases() {
  std::vector<FamilyCase> out{{DivergenceSpec::von_neumann(), Family::VonNeumann}};
  for (double a : {0.5, 1.5, 2.0, 3.0}) out.push_back({DivergenceSpec::renyi(a), Family::Renyi});
  for (double a : {0.3, 0.5, 0.75, 1.5, 3.0}) out.push_back({DivergenceSpec::sandwiched(a), Family::Sandwiched});
  out.push_back({DivergenceSpec::collision(), Family::Sandwiched});
  out.push_back({DivergenceSpec::min_rel(), Family::MinRel});
  out.push_back({DivergenceSpec::max_rel(), Family::MaxRel});
  for (double q : {0.5, 1.5, 2.0, 3.0}) out.push_back({DivergenceSpec::tsallis(q), Family::Tsallis});
  return out;
}

Expectation table_expectation(Property p, const FamilyCase& c) {
  const auto& cell = table_one(p, c.table_family);
  if (!cell.holds) return Expectation::Violated;
  return cell.valid_at(c.spec.parameter) ? Expectation::Holds : Expectation::Probe;
}

std::size_t table_dim(std::size_t k) { return 2 + k % 3; }

/// Pair (rho, sigma) with lambda_min(sigma) >= 0.1 / d, so every family is
/// finite and sigma^{1 - alpha} stays well conditioned for alpha > 1.
std::pair<ComplexMatrix, ComplexMatrix> random_pair(Rng& rng, std::size_t k, std::size_t d) {
  const auto rho = sample_state(SubsystemLayout{d}, rng, k);
  const auto sigma = random_density(SubsystemLayout{d}, d, rng);
  const ComplexMatrix mixed = 0.9 * sigma.matrix() + 0.1 * identity(d) / static_cast<double>(d);
  return {rho.matrix(), mixed};
}

/// Identity residual relative to max(1, |a|, |b|); values reach 1e3 and beyond for q > 1.
double rel_gap(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

std::vector<PropertyReport> check_table_one(const HarnessConfig& config) {
  Runner run{config, {}};
  const std::size_t batch = config.batch;

  for (const auto& c : table_one_cases()) {
    const std::string fam = c.spec.name();
    const DivergenceSpec spec = c.spec;

    run.add("table1.unitary_invariance." + fam, table_expectation(Property::UnitaryInvariance, c),
            tol::kIdentity, batch, [spec](Rng& rng, std::size_t k) {
              const std::size_t d = table_dim(k);
              const auto [rho, sigma] = random_pair(rng, k, d);
              const ComplexMatrix u = haar_unitary(d, rng);
              const double before = divergence(rho, sigma, spec);
              const double after = divergence(u * rho * u.adjoint(), u * sigma * u.adjoint(), spec);
              return outcome(rel_gap(after, before), "D(U rho U†||U sigma U†) = D(rho||sigma)", after,
                             before, rho);
            });

    if (c.table_family == Family::Tsallis) {
      run.add("table1.pseudo_additivity." + fam, Expectation::Holds, tol::kIdentity, batch,
              [spec](Rng& rng, std::size_t k) {
                const auto [r1, s1] = random_pair(rng, k, 2);
                const auto [r2, s2] = random_pair(rng, k + 1, 3);
                const double d1 = divergence(r1, s1, spec);
                const double d2 = divergence(r2, s2, spec);
                const double joint = divergence(kron(r1, r2), kron(s1, s2), spec);
                const double rhs = d1 + d2 + (spec.parameter - 1.0) * d1 * d2;
                return outcome(rel_gap(joint, rhs), "D_q(⊗) = D + D' + (q-1) D D'", joint, rhs);
              });
    }
    run.add("table1.additivity." + fam, table_expectation(Property::Additivity, c), tol::kIdentity,
            batch, [spec](Rng& rng, std::size_t k) {
              const auto [r1, s1] = random_pair(rng, k + 1, 2);
              const auto [r2, s2] = random_pair(rng, k + 2, 3);
              const double joint = divergence(kron(r1, r2), kron(s1, s2), spec);
              const double sum = divergence(r1, s1, spec) + divergence(r2, s2, spec);
              return outcome(rel_gap(joint, sum), "D(rho ⊗ rho'||sigma ⊗ sigma') = D + D'", joint, sum,
                             kron(r1, r2));
            });

    run.add("table1.joint_convexity." + fam, table_expectation(Property::JointConvexity, c),
            tol::kInequality, batch, [spec](Rng& rng, std::size_t k) {
              ComplexMatrix r1, s1, r2, s2;
              double p = rng.uniform();
              if (k == 0) {
                // Classical pair on which the max-relative entropy is not convex.
                r1 = ComplexMatrix::Zero(2, 2);
                r1(0, 0) = 1.0;
                s1 = r1;
                r2 = ComplexMatrix::Zero(2, 2);
                r2(1, 1) = 1.0;
                s2 = identity(2) / 2.0;
                p = 0.5;
              } else {
                const std::size_t d = table_dim(k);
                std::tie(r1, s1) = random_pair(rng, k, d);
                std::tie(r2, s2) = random_pair(rng, k + 1, d);
              }
              const double lhs = divergence(p * r1 + (1 - p) * r2, p * s1 + (1 - p) * s2, spec);
              const double rhs = p * divergence(r1, s1, spec) + (1 - p) * divergence(r2, s2, spec);
              return outcome(lhs - rhs, "D(mixture||mixture) <= mixture of D", lhs, rhs,
                             p * r1 + (1 - p) * r2);
            });

    run.add("table1.dpi." + fam, table_expectation(Property::DataProcessing, c), tol::kInequality,
            batch, [spec](Rng& rng, std::size_t k) {
              const std::size_t d = table_dim(k);
              const auto [rho, sigma] = random_pair(rng, k, d);
              const ComplexMatrix v = haar_unitary(2 * d, rng);
              const double before = divergence(rho, sigma, spec);
              const double after =
                  divergence(random_channel_apply(rho, v), random_channel_apply(sigma, v), spec);
              return outcome(after - before, "D(N rho||N sigma) <= D(rho||sigma)", after, before, rho);
            });

    run.add("table1.positive_definiteness." + fam, table_expectation(Property::PositiveDefiniteness, c),
            tol::kInequality, batch, [spec](Rng& rng, std::size_t k) {
              const std::size_t d = table_dim(k);
              auto [rho, sigma] = random_pair(rng, k, d);
              if (k == 0) rho = random_density(SubsystemLayout{d}, d, rng).matrix();
              const double dv = divergence(rho, sigma, spec);
              const double self = divergence(sigma, sigma, spec);
              double v = std::max(-dv, std::abs(self));
              std::string what = "D >= 0 with D(sigma||sigma) = 0";
              if (max_abs_diff(rho, sigma) > 1e-6 && dv < tol::kInequality) {
                v = 1.0;
                what = "D(rho||sigma) = 0 for rho != sigma";
              }
              return outcome(v, what, dv, self, rho);
            });

    // Jump of D(. || sigma) between a pure rho and rho mixed by 1e-9.
    const auto continuity_expect = table_expectation(Property::Continuity, c);
    run.add("table1.continuity." + fam,
            c.table_family == Family::MinRel ? continuity_expect : Expectation::Probe, 1e-3, batch,
            [spec](Rng& rng, std::size_t k) {
              const std::size_t d = table_dim(k);
              const auto psi = haar_pure(SubsystemLayout{d}, rng).matrix();
              const auto sigma = random_density(SubsystemLayout{d}, d, rng).matrix();
              const double delta = 1e-9;
              const ComplexMatrix near = (1 - delta) * psi + delta * identity(d) / static_cast<double>(d);
              const double jump = std::abs(divergence(near, sigma, spec) - divergence(psi, sigma, spec));
              return outcome(jump, "|D(rho_delta||sigma) - D(psi||sigma)| at delta = 1e-9", jump, 0.0, psi);
            },
            c.table_family == Family::MaxRel ? "cross in the table; no discontinuity of this kind is expected"
                                             : "");
  }

  // alpha-ordering and the Petz/sandwiched comparison.
  run.add("table1.alpha_monotone.renyi", Expectation::Holds, tol::kInequality, batch,
          [](Rng& rng, std::size_t k) {
            const auto [rho, sigma] = random_pair(rng, k, table_dim(k));
            double prev = divergence(rho, sigma, DivergenceSpec::min_rel());
            double v = -kInfinity;
            for (double a : {0.1, 0.3, 0.5, 0.9, 1.0, 1.2, 2.0, 3.0}) {
              const double cur = divergence(rho, sigma, DivergenceSpec::renyi(a));
              v = std::max(v, prev - cur);
              prev = cur;
            }
            return outcome(v, "D_min <= D_alpha nondecreasing in alpha", v, 0.0, rho);
          });
  run.add("table1.alpha_monotone.sandwiched", Expectation::Holds, tol::kInequality, batch,
          [](Rng& rng, std::size_t k) {
            const auto [rho, sigma] = random_pair(rng, k, table_dim(k));
            double prev = divergence(rho, sigma, DivergenceSpec::sandwiched(0.5));
            double v = -kInfinity;
            for (double a : {0.75, 1.0, 1.5, 2.0, 3.0}) {
              const double cur = divergence(rho, sigma, DivergenceSpec::sandwiched(a));
              v = std::max(v, prev - cur);
              prev = cur;
            }
            v = std::max(v, prev - divergence(rho, sigma, DivergenceSpec::max_rel()) - 0.0);
            return outcome(v, "sandwiched nondecreasing in alpha, bounded by D_max", v, 0.0, rho);
          });
  run.add("table1.sandwiched_le_petz", Expectation::Holds, tol::kInequality, batch,
          [](Rng& rng, std::size_t k) {
            const auto [rho, sigma] = random_pair(rng, k, table_dim(k));
            double v = -kInfinity;
            for (double a : {0.3, 0.5, 0.8, 1.5, 2.0}) {
              v = std::max(v, divergence(rho, sigma, DivergenceSpec::sandwiched(a)) -
                                  divergence(rho, sigma, DivergenceSpec::renyi(a)));
            }
            return outcome(v, "sandwiched <= Petz Renyi", v, 0.0, rho);
          });
  run.add("table1.limits", Expectation::Holds, tol::kLimit, batch, [](Rng& rng, std::size_t k) {
    const auto [rho, sigma] = random_pair(rng, k, table_dim(k));
    const double d = divergence(rho, sigma, DivergenceSpec::von_neumann());
    double v = 0.0;
    for (double p : {1.0 - 1e-5, 1.0 + 1e-5}) {
      v = std::max({v, std::abs(divergence(rho, sigma, DivergenceSpec::renyi(p)) - d),
                    std::abs(divergence(rho, sigma, DivergenceSpec::sandwiched(p)) - d),
                    std::abs(divergence(rho, sigma, DivergenceSpec::tsallis(p)) - d)});
    }
    return outcome(v, "parameter -> 1 recovers the von Neumann divergence", v, 0.0, rho);
  });
  return std::move(run.reports);
}

// ---------------------------------------------------------------------------

std::vector<PropertyReport> run_all(const HarnessConfig& config) {
  std::vector<PropertyReport> out;
  auto append = [&out](std::vector<PropertyReport> more) {
    for (auto& r : more) out.push_back(std::move(r));
  };
  append(check_axiom_suite(default_specs(), config));
  append(check_lemmas_and_theorem(config));
  if (config.selected("sibson.identity")) {
    out.push_back(check_sibson_identity(std::min<std::size_t>(config.batch, 50), config.seed));
  }
  append(check_reality_identities(config));
  append(check_table_one(config));
  return out;
}

}  // namespace realitykit
