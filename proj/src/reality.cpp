#include "realitykit/reality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "realitykit/optimize.hpp"

namespace realitykit {

namespace {

bool near_one(double p) { return std::abs(p - 1.0) < kLimitRouting; }

std::string format_parameter(double p) {
  std::ostringstream os;
  os.precision(6);
  os << p;
  return os.str();
}

void require_observable(const DensityOperator& rho, const ProjectiveObservable& a) {
  if (a.subsystem() >= rho.layout().size() || rho.layout().dim(a.subsystem()) != a.dim()) {
    throw LayoutMismatch("observable does not fit the state's layout");
  }
}

void validate(const RealityQuantifierSpec& spec, Mode mode) {
  const double p = spec.parameter;
  const bool is_q = spec.kind == QuantifierKind::Tsallis;
  auto fail = [&](const std::string& why) {
    const std::string msg = spec.name() + ": " + why;
    if (is_q) throw QOutOfRange(msg);
    throw AlphaOutOfRange(msg);
  };
  if (!spec.has_parameter()) return;
  if (!(std::isfinite(p) && p > 0.0)) fail("parameter must be positive and finite");
  const bool optimized =
      spec.kind == QuantifierKind::RenyiUp || spec.kind == QuantifierKind::RenyiBar;
  if (optimized && !(p < 1.0 || near_one(p))) fail("defined for alpha in (0, 1) only");
  if (mode == Mode::Monotone && !spec.is_monotone()) fail("outside the monotone range");
}

RealityValue make_value(double value, const RealityQuantifierSpec& spec, std::size_t d_a) {
  return RealityValue{value, max_reality(spec, d_a), spec, spec.is_monotone()};
}

double log_dim(const ProjectiveObservable& a) { return std::log(static_cast<double>(a.dim())); }

/// rho with the observable's slot moved first and rotated into its eigenbasis,
/// so A_i becomes the i-th diagonal block of size d_rest.
ComplexMatrix observable_frame(const DensityOperator& rho, const ProjectiveObservable& a,
                               std::size_t& d_rest) {
  const auto& layout = rho.layout();
  std::vector<std::size_t> order{a.subsystem()};
  for (std::size_t s = 0; s < layout.size(); ++s) {
    if (s != a.subsystem()) order.push_back(s);
  }
  const ComplexMatrix moved = permute_subsystems(rho.matrix(), layout, order);
  d_rest = layout.total() / a.dim();
  const ComplexMatrix w = kron(a.basis(), identity(d_rest));
  return w.adjoint() * moved * w;
}

double sibson_value(const ComplexMatrix& reduced, double alpha) {
  const Spectrum s = eig_hermitian(reduced);
  const double cutoff = support_threshold(s.values);
  double t = 0.0;
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    if (s.values[i] > cutoff) t += std::pow(s.values[i], 1.0 / alpha);
  }
  return alpha / (alpha - 1.0) * std::log(t);
}

}  // namespace

// ---------------------------------------------------------------------------
// RealityQuantifierSpec

bool RealityQuantifierSpec::has_parameter() const noexcept {
  return kind != QuantifierKind::VonNeumann && kind != QuantifierKind::MinRel &&
         kind != QuantifierKind::MaxRel;
}

bool RealityQuantifierSpec::is_monotone() const noexcept {
  const double p = parameter;
  switch (kind) {
    case QuantifierKind::VonNeumann: return true;
    case QuantifierKind::RenyiDown:
    case QuantifierKind::RenyiUp:
    case QuantifierKind::RenyiBar: return (p > 0.0 && p < 1.0) || near_one(p);
    case QuantifierKind::Sandwiched: return (p >= 0.5 && p < 1.0) || near_one(p);
    case QuantifierKind::Tsallis: return p > 0.0 && p <= 2.0;
    case QuantifierKind::MinRel:
    case QuantifierKind::MaxRel: return false;
  }
  return false;
}

std::string RealityQuantifierSpec::name() const {
  switch (kind) {
    case QuantifierKind::VonNeumann: return "vN";
    case QuantifierKind::RenyiDown: return "renyiDown(" + format_parameter(parameter) + ")";
    case QuantifierKind::RenyiUp: return "renyiUp(" + format_parameter(parameter) + ")";
    case QuantifierKind::RenyiBar: return "renyiBar(" + format_parameter(parameter) + ")";
    case QuantifierKind::Tsallis: return "tsallis(" + format_parameter(parameter) + ")";
    case QuantifierKind::MinRel: return "minRel";
    case QuantifierKind::MaxRel: return "maxRel";
    case QuantifierKind::Sandwiched: return "sandwiched(" + format_parameter(parameter) + ")";
  }
  return "unknown";
}

double max_reality(const RealityQuantifierSpec& spec, std::size_t d_a) {
  const double d = static_cast<double>(d_a);
  if (spec.kind == QuantifierKind::Tsallis) return ln_q(d, spec.parameter);
  return std::log(d);
}

// ---------------------------------------------------------------------------
// quantifiers

RealityValue reality(const DensityOperator& rho, const ProjectiveObservable& a,
                     const RealityQuantifierSpec& spec, Mode mode, const RealityOptions& options) {
  switch (spec.kind) {
    case QuantifierKind::VonNeumann: return reality_vn(rho, a);
    case QuantifierKind::RenyiDown: return reality_renyi_down(rho, a, spec.parameter, mode);
    case QuantifierKind::RenyiUp: return reality_renyi_up(rho, a, spec.parameter, mode);
    case QuantifierKind::RenyiBar: return reality_renyi_bar(rho, a, spec.parameter, mode, options);
    case QuantifierKind::Tsallis: return reality_tsallis(rho, a, spec.parameter, mode);
    case QuantifierKind::MinRel:
    case QuantifierKind::MaxRel:
    case QuantifierKind::Sandwiched: return reality_special(rho, a, spec, mode);
  }
  throw DomainError("unhandled quantifier");
}

RealityValue reality_vn(const DensityOperator& rho, const ProjectiveObservable& a) {
  require_observable(rho, a);
  const double d = divergence(rho, phi_A(rho, a), DivergenceSpec::von_neumann());
  return make_value(log_dim(a) - d, RealityQuantifierSpec::von_neumann(), a.dim());
}

double irreality(const DensityOperator& rho, const ProjectiveObservable& a) {
  require_observable(rho, a);
  return entropy(phi_A(rho, a)) - entropy(rho);
}

RealityValue reality_renyi_down(const DensityOperator& rho, const ProjectiveObservable& a,
                                double alpha, Mode mode) {
  const auto spec = RealityQuantifierSpec::renyi_down(alpha);
  validate(spec, mode);
  require_observable(rho, a);
  const double d = divergence(rho, phi_A(rho, a), DivergenceSpec::renyi(alpha));
  return make_value(log_dim(a) - d, spec, a.dim());
}

RealityValue reality_renyi_up(const DensityOperator& rho, const ProjectiveObservable& a,
                              double alpha, Mode mode) {
  const auto spec = RealityQuantifierSpec::renyi_up(alpha);
  validate(spec, mode);
  require_observable(rho, a);
  if (near_one(alpha)) {
    const auto vn = reality_vn(rho, a);
    return make_value(vn.value, spec, a.dim());
  }
  const ComplexMatrix x = phi_matrix(spectral_power(rho.matrix(), alpha), rho.layout(), a);
  return make_value(log_dim(a) - sibson_value(x, alpha), spec, a.dim());
}

RealityValue reality_renyi_up_dilated(const DensityOperator& rho, const ProjectiveObservable& a,
                                      double alpha) {
  const auto spec = RealityQuantifierSpec::renyi_up(alpha);
  validate(spec, Mode::Monotone);
  require_observable(rho, a);
  const DensityOperator upsilon = dilate(rho, stinespring_unitary(a, rho.layout()));
  std::vector<std::size_t> system(rho.layout().size());
  for (std::size_t s = 0; s < system.size(); ++s) system[s] = s;
  const ComplexMatrix reduced =
      partial_trace(spectral_power(upsilon.matrix(), alpha), upsilon.layout(), system);
  return make_value(log_dim(a) - sibson_value(reduced, alpha), spec, a.dim());
}

namespace {

/// Packs n×n complex factors as [Re L (column-major), Im L] per block.
ComplexMatrix unpack_factor(const RealVector& params, Eigen::Index offset, Eigen::Index n) {
  ComplexMatrix l(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      l(r, c) = Complex(params[offset + c * n + r], params[offset + n * n + c * n + r]);
    }
  }
  return l;
}

void pack_factor(const ComplexMatrix& l, RealVector& out, Eigen::Index offset) {
  const auto n = l.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      out[offset + c * n + r] = l(r, c).real();
      out[offset + n * n + c * n + r] = l(r, c).imag();
    }
  }
}

struct BarSolution {
  double divergence = 0.0;
  std::vector<ComplexMatrix> omega;  // unnormalized blocks at the incumbent
  bool converged = false;
};

/// min D_alpha(rho || sigma) over A-real sigma = sum_i A_i ⊗ omega_i, alpha in (0, 1).
/// With omega_i = L_i L_i† the objective
///   F = ln sum_i Tr(X_i omega_i^{beta}) - beta ln sum_i Tr omega_i,  beta = 1 - alpha,
/// is scale invariant, and D = max F / (alpha - 1). The derivative of
/// Tr(X f(omega)) is U (Gamma ∘ U† X U) U† with Gamma the divided differences of f.
BarSolution bar_divergence_quasi_newton(const std::vector<ComplexMatrix>& x_blocks,
                                        const std::vector<ComplexMatrix>& start, double alpha) {
  const auto n = x_blocks.front().rows();
  const auto per_block = 2 * n * n;
  const auto blocks = static_cast<Eigen::Index>(x_blocks.size());
  const double beta = 1.0 - alpha;

  const SmoothObjective objective = [&](const RealVector& params, RealVector& grad) {
    std::vector<ComplexMatrix> factors, gradients;
    double q = 0.0;
    double t = 0.0;
    for (Eigen::Index b = 0; b < blocks; ++b) {
      const ComplexMatrix l = unpack_factor(params, b * per_block, n);
      const ComplexMatrix omega = l * l.adjoint();
      const Spectrum s = eig_hermitian(0.5 * (omega + omega.adjoint()));
      const RealVector lam = s.values.cwiseMax(0.0);
      RealVector f(n);
      for (Eigen::Index j = 0; j < n; ++j) f[j] = lam[j] > 0.0 ? std::pow(lam[j], beta) : 0.0;
      const ComplexMatrix y = s.vectors.adjoint() * x_blocks[static_cast<std::size_t>(b)] * s.vectors;
      ComplexMatrix gamma_y(n, n);
      const double scale = std::max(lam.maxCoeff(), 1e-300);
      for (Eigen::Index j = 0; j < n; ++j) {
        q += f[j] * y(j, j).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          double g;
          if (std::abs(lam[j] - lam[k]) > 1e-12 * scale) {
            g = (f[j] - f[k]) / (lam[j] - lam[k]);
          } else {
            const double m = std::max(0.5 * (lam[j] + lam[k]), 1e-300);
            g = beta * std::pow(m, -alpha);
          }
          gamma_y(j, k) = g * y(j, k);
        }
      }
      t += lam.sum();
      factors.push_back(l);
      gradients.push_back(s.vectors * gamma_y * s.vectors.adjoint());
    }
    if (!(q > 0.0) || !(t > 0.0)) return kInfinity;
    // Minimize -F; d(-F)/dL = -2 M L with M = G / Q - (beta / T) 1.
    for (Eigen::Index b = 0; b < blocks; ++b) {
      const auto i = static_cast<std::size_t>(b);
      const ComplexMatrix m = gradients[i] / q - (beta / t) * identity(static_cast<std::size_t>(n));
      pack_factor(-2.0 * m * factors[i], grad, b * per_block);
    }
    return -(std::log(q) - beta * std::log(t));
  };

  auto factors_from = [&](const std::vector<ComplexMatrix>& omegas) {
    RealVector x(blocks * per_block);
    for (Eigen::Index b = 0; b < blocks; ++b) {
      pack_factor(spectral_power(omegas[static_cast<std::size_t>(b)], 0.5), x, b * per_block);
    }
    return x;
  };
  auto omegas_from = [&](const RealVector& x) {
    std::vector<ComplexMatrix> out;
    for (Eigen::Index b = 0; b < blocks; ++b) {
      const ComplexMatrix l = unpack_factor(x, b * per_block, n);
      out.push_back(l * l.adjoint());
    }
    return out;
  };

  // Near a vanishing eigenvalue of omega the objective behaves like |s| in the
  // factor's singular value s, and the line search can stall there. A stall
  // re-inflates omega by a small multiple of the identity and restarts.
  constexpr double kStallGradient = 1e-6;
  constexpr double kInflate = 1e-6;
  BfgsOptions bo;
  bo.max_iterations = 1000;
  RealVector x = factors_from(start);
  MinimizeResult best;
  best.value = kInfinity;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const MinimizeResult r = bfgs(objective, x, bo);
    if (r.value < best.value) best = r;
    RealVector g(x.size());
    objective(best.x, g);
    if (r.converged || g.norm() < kStallGradient) {
      return {-best.value / (alpha - 1.0), omegas_from(best.x), true};
    }
    auto omegas = omegas_from(best.x);
    double total = 0.0;
    for (const auto& w : omegas) total += w.trace().real();
    for (auto& w : omegas) w += kInflate * total / static_cast<double>(n) * identity(static_cast<std::size_t>(n));
    x = factors_from(omegas);
  }
  return {-best.value / (alpha - 1.0), omegas_from(best.x), false};
}

}  // namespace

RealityValue reality_renyi_bar(const DensityOperator& rho, const ProjectiveObservable& a,
                               double alpha, Mode mode, const RealityOptions& options) {
  const auto spec = RealityQuantifierSpec::renyi_bar(alpha);
  validate(spec, mode);
  require_observable(rho, a);
  if (near_one(alpha)) {
    const auto vn = reality_vn(rho, a);
    return make_value(vn.value, spec, a.dim());
  }
  std::size_t d_rest = 0;
  const ComplexMatrix framed = observable_frame(rho, a, d_rest);
  const auto da = static_cast<Eigen::Index>(a.dim());
  const auto dr = static_cast<Eigen::Index>(d_rest);
  const ComplexMatrix x = spectral_power(framed, alpha);
  std::vector<ComplexMatrix> x_blocks;
  for (Eigen::Index i = 0; i < da; ++i) x_blocks.push_back(x.block(i * dr, i * dr, dr, dr));

  // sigma = sum_i p_i A_i ⊗ sigma_i; D_alpha(rho||sigma) only sees the
  // diagonal blocks of rho^alpha in A's eigenbasis.
  std::optional<BarSolution> incumbent;
  if (options.bar_solver == BarSolver::QuasiNewton) {
    std::vector<ComplexMatrix> start;
    for (Eigen::Index i = 0; i < da; ++i) {
      // Warm start at the blocks of phi_A(rho), nudged to full rank.
      const ComplexMatrix block = framed.block(i * dr, i * dr, dr, dr);
      start.push_back(block + 1e-3 * identity(d_rest) / static_cast<double>(d_rest));
    }
    incumbent = bar_divergence_quasi_newton(x_blocks, start, alpha);
    if (incumbent->converged) return make_value(log_dim(a) - incumbent->divergence, spec, a.dim());
    // Otherwise the simplex below starts from the quasi-Newton incumbent.
  }

  const std::size_t per_block = d_rest > 1 ? cholesky_parameter_count(d_rest) : 0;
  const Objective objective = [&](const RealVector& params) {
    const RealVector p = softmax(params.head(da));
    double q = 0.0;
    for (Eigen::Index i = 0; i < da; ++i) {
      if (p[i] <= 0.0) continue;
      double block = 0.0;
      if (per_block == 0) {
        block = x_blocks[static_cast<std::size_t>(i)](0, 0).real();
      } else {
        const RealVector seg = params.segment(da + i * static_cast<Eigen::Index>(per_block),
                                              static_cast<Eigen::Index>(per_block));
        const ComplexMatrix sigma_i = density_from_cholesky(seg, d_rest);
        block = (x_blocks[static_cast<std::size_t>(i)].transpose().cwiseProduct(
                     spectral_power(sigma_i, 1.0 - alpha)))
                    .sum()
                    .real();
      }
      q += std::pow(p[i], 1.0 - alpha) * block;
    }
    if (!(q > 0.0)) return kInfinity;
    return std::log(q) / (alpha - 1.0);
  };

  RealVector x0(da + da * static_cast<Eigen::Index>(per_block));
  RealVector weights(da);
  for (Eigen::Index i = 0; i < da; ++i) {
    const ComplexMatrix block = incumbent ? incumbent->omega[static_cast<std::size_t>(i)]
                                          : ComplexMatrix(framed.block(i * dr, i * dr, dr, dr));
    const double w = block.trace().real();
    weights[i] = w;
    if (per_block > 0) {
      const ComplexMatrix cond = w > 1e-14 ? ComplexMatrix(block / w)
                                           : ComplexMatrix(identity(d_rest) / static_cast<double>(d_rest));
      x0.segment(da + i * static_cast<Eigen::Index>(per_block), static_cast<Eigen::Index>(per_block)) =
          cholesky_from_density(cond, 1e-12);
    }
  }
  x0.head(da) = softmax_inverse(weights / weights.sum(), 1e-300);

  Rng rng(options.seed);
  RestartOptions ro;
  ro.max_restarts = options.max_restarts;
  ro.improvement_tol = 1e-9;
  ro.simplex.ftol = 1e-12;
  ro.simplex.xtol = 1e-8;
  try {
    const MinimizeResult best = minimize_with_restarts(objective, x0, rng, ro);
    const double d = incumbent ? std::min(best.value, incumbent->divergence) : best.value;
    return make_value(log_dim(a) - d, spec, a.dim());
  } catch (const OptimizerNonConvergence& e) {
    std::string what = e.what();
    const std::string prefix = "OptimizerNonConvergence: ";
    if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
    throw OptimizerNonConvergence(spec.name() + ": " + what, log_dim(a) - e.best_value());
  }
}

RealityValue reality_tsallis(const DensityOperator& rho, const ProjectiveObservable& a, double q,
                             Mode mode) {
  const auto spec = RealityQuantifierSpec::tsallis(q);
  validate(spec, mode);
  require_observable(rho, a);
  const double d = divergence(rho, phi_A(rho, a), DivergenceSpec::tsallis(q));
  const double scale = near_one(q) ? 1.0 : std::pow(static_cast<double>(a.dim()), 1.0 - q);
  return make_value(ln_q(static_cast<double>(a.dim()), q) - scale * d, spec, a.dim());
}

RealityValue reality_special(const DensityOperator& rho, const ProjectiveObservable& a,
                             const RealityQuantifierSpec& spec, Mode mode) {
  DivergenceSpec div;
  switch (spec.kind) {
    case QuantifierKind::MinRel: div = DivergenceSpec::min_rel(); break;
    case QuantifierKind::MaxRel: div = DivergenceSpec::max_rel(); break;
    case QuantifierKind::Sandwiched: div = DivergenceSpec::sandwiched(spec.parameter); break;
    default: throw DomainError("reality_special takes minRel, maxRel or sandwiched");
  }
  validate(spec, mode);
  require_observable(rho, a);
  const double d = divergence(rho, phi_A(rho, a), div);
  return make_value(log_dim(a) - d, spec, a.dim());
}

// ---------------------------------------------------------------------------
// discord and uncertainty

OneSidedDiscord one_sided_discord(const DensityOperator& rho) {
  if (rho.layout().size() < 2 || rho.layout().dim(0) != 2) {
    throw DomainError("one-sided discord is implemented for a qubit on slot 0");
  }
  const double total = mutual_information(rho);
  auto discord_at = [&](double theta, double phi) {
    return total - mutual_information(phi_A(rho, spin_observable(0, theta, phi)));
  };
  constexpr int kGrid = 64;
  constexpr double pi = std::numbers::pi;
  OneSidedDiscord best{kInfinity, 0.0, 0.0};
  for (int i = 0; i < kGrid; ++i) {
    const double theta = 2.0 * pi * i / kGrid;
    for (int j = 0; j < kGrid; ++j) {
      const double phi = pi * j / (kGrid - 1);
      const double v = discord_at(theta, phi);
      if (v < best.value) best = {v, theta, phi};
    }
  }
  NelderMeadOptions opt;
  opt.initial_step = pi / kGrid;
  opt.ftol = 1e-13;
  opt.xtol = 1e-9;
  opt.max_evaluations = 2000;
  RealVector start(2);
  start << best.theta, best.phi;
  const MinimizeResult polished =
      nelder_mead([&](const RealVector& x) { return discord_at(x[0], x[1]); }, start, opt);
  if (polished.value < best.value) best = {polished.value, polished.x[0], polished.x[1]};
  return best;
}

UncertaintyBound uncertainty_bound(const DensityOperator& rho, const ProjectiveObservable& x,
                                   const ProjectiveObservable& y) {
  if (x.subsystem() != y.subsystem() || x.dim() != y.dim()) {
    throw LayoutMismatch("uncertainty_bound: X and Y must act on the same subsystem");
  }
  UncertaintyBound out;
  out.lhs = reality_vn(rho, x).value + reality_vn(rho, y).value;
  out.bound = 2.0 * std::log(static_cast<double>(x.dim()));
  out.discord_bound = 2.0 * (std::log(static_cast<double>(x.dim())) - one_sided_discord(rho).value);
  return out;
}

// ---------------------------------------------------------------------------
// axiom table

CellStatus table_two(Axiom axiom, const RealityQuantifierSpec& spec) {
  using K = QuantifierKind;
  const double p = spec.parameter;
  const bool renyi_like = spec.kind == K::RenyiDown || spec.kind == K::RenyiUp || spec.kind == K::RenyiBar;
  auto ranged = [](bool inside) { return inside ? CellStatus::Holds : CellStatus::OutOfRange; };
  const bool open01 = p > 0.0 && p < 1.0;
  const bool tsallis_range = open01 || (p > 1.0 && p <= 2.0);

  switch (axiom) {
    case Axiom::A1:
    case Axiom::A3b: return CellStatus::Holds;
    case Axiom::A2:
    case Axiom::A4: return spec.kind == K::MinRel ? CellStatus::Fails : CellStatus::Holds;
    case Axiom::A3a:
      if (renyi_like) return ranged(open01 || (p > 1.0 && p <= 2.0));
      if (spec.kind == K::Sandwiched) return ranged((p >= 0.5 && p < 1.0) || p > 1.0);
      if (spec.kind == K::Tsallis) return ranged(tsallis_range);
      return CellStatus::Holds;
    case Axiom::A5:
      if (renyi_like) return ranged(open01);
      if (spec.kind == K::Sandwiched) return ranged(p >= 0.5 && p < 1.0);
      if (spec.kind == K::Tsallis) return ranged(tsallis_range);
      if (spec.kind == K::MaxRel) return CellStatus::Fails;
      return CellStatus::Holds;
    case Axiom::A6: return spec.kind == K::Tsallis ? CellStatus::Fails : CellStatus::Holds;
    case Axiom::A7:
      if (spec.kind == K::VonNeumann) return CellStatus::Holds;
      if (spec.kind == K::MaxRel) return CellStatus::Fails;
      return CellStatus::Open;
  }
  return CellStatus::Open;
}

std::string axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::A1: return "axiom1";
    case Axiom::A2: return "axiom2";
    case Axiom::A3a: return "axiom3a";
    case Axiom::A3b: return "axiom3b";
    case Axiom::A4: return "axiom4";
    case Axiom::A5: return "axiom5";
    case Axiom::A6: return "axiom6";
    case Axiom::A7: return "axiom7";
  }
  return "axiom?";
}

std::string cell_status_name(CellStatus status) {
  switch (status) {
    case CellStatus::Holds: return "holds";
    case CellStatus::OutOfRange: return "out-of-range";
    case CellStatus::Fails: return "fails";
    case CellStatus::Open: return "open";
  }
  return "unknown";
}

}  // namespace realitykit
