#include "realitykit/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "realitykit/channels.hpp"
#include "realitykit/optimize.hpp"

namespace realitykit {

namespace {

double normalized_trace(const ComplexMatrix& rho) {
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw DomainError("divergence: first argument has nonpositive trace");
  return tr;
}

/// Sum of f over the support eigenvalues of a PSD spectrum.
template <class F>
double spectral_sum(const Spectrum& s, F f) {
  const double cutoff = support_threshold(s.values);
  double total = 0.0;
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    if (s.values[i] > cutoff) total += f(s.values[i]);
  }
  return total;
}

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  // Tr(AB) without forming the product.
  return (a.transpose().cwiseProduct(b)).sum().real();
}

double kernel_weight(const ComplexMatrix& rho, const Spectrum& sigma) {
  const ComplexMatrix outside = identity(static_cast<std::size_t>(rho.rows())) - support_projector(sigma);
  return trace_product(rho, outside) / rho.trace().real();
}

double infinite_or_throw(KernelPolicy policy, const std::string& what) {
  if (policy == KernelPolicy::Extended) return kInfinity;
  throw KernelViolation(what);
}

double check_kernel(const ComplexMatrix& rho, const Spectrum& sigma, KernelPolicy policy,
                    const DivergenceSpec& spec, bool& violated) {
  const double w = kernel_weight(rho, sigma);
  violated = w > kKernelTolerance;
  if (violated) {
    return infinite_or_throw(policy, spec.name() + ": weight " + std::to_string(w) +
                                         " of rho outside supp(sigma)");
  }
  return 0.0;
}

void require_square_pair(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != rho.cols() || sigma.rows() != sigma.cols() || rho.rows() != sigma.rows()) {
    throw LayoutMismatch("divergence: operands differ in shape");
  }
}

std::string format_parameter(double p) {
  std::ostringstream os;
  os.precision(6);
  os << p;
  return os.str();
}

std::vector<std::size_t> all_but(std::size_t n, std::size_t slot) {
  std::vector<std::size_t> keep;
  for (std::size_t s = 0; s < n; ++s) {
    if (s != slot) keep.push_back(s);
  }
  return keep;
}

/// Places `x_op` on `slot` and `rest_op` on the remaining slots, in layout order.
ComplexMatrix place_on_slot(const ComplexMatrix& x_op, const ComplexMatrix& rest_op,
                            const SubsystemLayout& layout, std::size_t slot) {
  const auto rest = all_but(layout.size(), slot);
  std::vector<std::size_t> staged_dims{layout.dim(slot)};
  for (auto s : rest) staged_dims.push_back(layout.dim(s));
  const SubsystemLayout staged(staged_dims);
  std::vector<std::size_t> order(layout.size());
  for (std::size_t j = 0; j < layout.size(); ++j) {
    order[j] = j == slot ? 0 : 1 + (j < slot ? j : j - 1);
  }
  return permute_subsystems(kron(x_op, rest_op), staged, order);
}

void require_conditioning(const DensityOperator& rho, std::size_t slot) {
  if (rho.layout().size() < 2) throw LayoutMismatch("conditional quantity needs a composite layout");
  rho.layout().dim(slot);
}

}  // namespace

// ---------------------------------------------------------------------------
// DivergenceSpec

bool DivergenceSpec::has_parameter() const noexcept {
  return family == Family::Renyi || family == Family::Sandwiched || family == Family::Tsallis;
}

void DivergenceSpec::validate() const {
  if (!has_parameter()) return;
  if (!(std::isfinite(parameter) && parameter > 0.0)) {
    const std::string msg = name() + ": parameter must be positive and finite";
    if (family == Family::Tsallis) throw QOutOfRange(msg);
    throw AlphaOutOfRange(msg);
  }
}

DivergenceSpec DivergenceSpec::routed() const {
  if (family == Family::Collision) return sandwiched(2.0);
  if (has_parameter() && std::abs(parameter - 1.0) < kLimitRouting) return von_neumann();
  return *this;
}

std::string DivergenceSpec::name() const {
  switch (family) {
    case Family::VonNeumann: return "vN";
    case Family::Renyi: return "renyi(" + format_parameter(parameter) + ")";
    case Family::Sandwiched: return "sandwiched(" + format_parameter(parameter) + ")";
    case Family::MinRel: return "minRel";
    case Family::MaxRel: return "maxRel";
    case Family::Collision: return "collision";
    case Family::Tsallis: return "tsallis(" + format_parameter(parameter) + ")";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// entropies

double ln_q(double x, double q) {
  if (std::abs(q - 1.0) < kLimitRouting) return std::log(x);
  return (std::pow(x, 1.0 - q) - 1.0) / (1.0 - q);
}

double entropy(const ComplexMatrix& rho, const EntropySpec& spec) {
  const Spectrum s = eig_hermitian(rho);
  const double tr = spectral_sum(s, [](double x) { return x; });
  if (!(tr > 0.0)) throw DomainError("entropy of a zero operator");
  const bool limit = spec.family != EntropyFamily::VonNeumann &&
                     std::abs(spec.parameter - 1.0) < kLimitRouting;
  if (spec.family == EntropyFamily::VonNeumann || limit) {
    return -spectral_sum(s, [tr](double x) {
      const double p = x / tr;
      return p * std::log(p);
    });
  }
  const double a = spec.parameter;
  if (!(a > 0.0 && std::isfinite(a))) {
    if (spec.family == EntropyFamily::Tsallis) throw QOutOfRange("entropy parameter");
    throw AlphaOutOfRange("entropy parameter");
  }
  const double power_sum = spectral_sum(s, [tr, a](double x) { return std::pow(x / tr, a); });
  if (spec.family == EntropyFamily::Renyi) return std::log(power_sum) / (1.0 - a);
  return (1.0 - power_sum) / (a - 1.0);
}

double entropy(const DensityOperator& rho, const EntropySpec& spec) {
  return entropy(rho.matrix(), spec);
}

double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

// ---------------------------------------------------------------------------
// divergences

bool kernel_condition(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  require_square_pair(rho, sigma);
  return kernel_weight(rho, eig_hermitian(sigma)) <= kKernelTolerance;
}

double divergence(const ComplexMatrix& rho, const ComplexMatrix& sigma, const DivergenceSpec& spec_in,
                  KernelPolicy policy) {
  require_square_pair(rho, sigma);
  spec_in.validate();
  const DivergenceSpec spec = spec_in.routed();
  const double tr = normalized_trace(rho);
  const Spectrum rs = eig_hermitian(rho);
  const Spectrum ss = eig_hermitian(sigma);
  bool violated = false;

  switch (spec.family) {
    case Family::VonNeumann: {
      const double inf = check_kernel(rho, ss, policy, spec, violated);
      if (violated) return inf;
      const double rho_log_rho = spectral_sum(rs, [](double x) { return x * std::log(x); });
      const ComplexMatrix log_sigma = matrix_function(ss, [](double x) { return std::log(x); });
      return (rho_log_rho - trace_product(rho, log_sigma)) / tr;
    }
    case Family::Renyi: {
      const double a = spec.parameter;
      if (a > 1.0) {
        const double inf = check_kernel(rho, ss, policy, spec, violated);
        if (violated) return inf;
      }
      const double q = trace_product(spectral_power(rs, a), spectral_power(ss, 1.0 - a));
      if (!(q > 0.0)) return infinite_or_throw(policy, spec.name() + ": orthogonal supports");
      return std::log(q / tr) / (a - 1.0);
    }
    case Family::Sandwiched: {
      const double a = spec.parameter;
      if (a > 1.0) {
        const double inf = check_kernel(rho, ss, policy, spec, violated);
        if (violated) return inf;
      }
      const ComplexMatrix s = spectral_power(ss, (1.0 - a) / (2.0 * a));
      // Eigenvalues of s rho s are the squared singular values of s rho^{1/2}.
      // The SVD resolves them far below the support cutoff, which matters for a < 1.
      const Eigen::JacobiSVD<ComplexMatrix> svd(s * spectral_power(rs, 0.5));
      const RealVector& sv = svd.singularValues();
      const double floor = sv.size() ? 1e-14 * sv[0] : 0.0;
      double q = 0.0;
      for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > floor) q += std::pow(sv[i], 2.0 * a);
      }
      if (!(q > 0.0)) return infinite_or_throw(policy, spec.name() + ": orthogonal supports");
      return std::log(q / tr) / (a - 1.0);
    }
    case Family::MinRel: {
      const double overlap = trace_product(support_projector(rs), sigma) / tr;
      if (!(overlap > 0.0)) return infinite_or_throw(policy, "minRel: orthogonal supports");
      return -std::log(overlap);
    }
    case Family::MaxRel: {
      const double inf = check_kernel(rho, ss, policy, spec, violated);
      if (violated) return inf;
      const ComplexMatrix s = spectral_power(ss, -0.5);
      const ComplexMatrix m = s * rho * s;
      return std::log(eig_hermitian(0.5 * (m + m.adjoint())).values[0]);
    }
    case Family::Tsallis: {
      const double q = spec.parameter;
      if (q > 1.0) {
        const double inf = check_kernel(rho, ss, policy, spec, violated);
        if (violated) return inf;
      }
      const double f = trace_product(spectral_power(rs, q), spectral_power(ss, 1.0 - q));
      return (tr - f) / ((1.0 - q) * tr);
    }
    case Family::Collision:
      break;  // routed to sandwiched
  }
  throw DomainError("unhandled divergence family");
}

double divergence(const DensityOperator& rho, const DensityOperator& sigma,
                  const DivergenceSpec& spec, KernelPolicy policy) {
  if (!(rho.layout() == sigma.layout())) throw LayoutMismatch("divergence: layouts differ");
  return divergence(rho.matrix(), sigma.matrix(), spec, policy);
}

// ---------------------------------------------------------------------------
// conditional information

ComplexMatrix maximally_mixed_on(const DensityOperator& rho, std::size_t slot) {
  require_conditioning(rho, slot);
  const auto& layout = rho.layout();
  const auto rest = all_but(layout.size(), slot);
  const ComplexMatrix rho_rest = partial_trace(rho.matrix(), layout, rest);
  const std::size_t dx = layout.dim(slot);
  return place_on_slot(identity(dx) / static_cast<double>(dx), rho_rest, layout, slot);
}

double conditional_information(const DensityOperator& rho, std::size_t slot,
                               const DivergenceSpec& spec, KernelPolicy policy) {
  const double d = divergence(rho.matrix(), maximally_mixed_on(rho, slot), spec, policy);
  const DivergenceSpec routed = spec.routed();
  if (routed.family == Family::Tsallis) {
    return std::pow(static_cast<double>(rho.layout().dim(slot)), 1.0 - routed.parameter) * d;
  }
  return d;
}

double sibson_closed_form(const DensityOperator& rho, std::size_t slot, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw AlphaOutOfRange("Sibson identity requires alpha in (0, 1), got " + std::to_string(alpha));
  }
  require_conditioning(rho, slot);
  const auto rest = all_but(rho.layout().size(), slot);
  const ComplexMatrix reduced = partial_trace(spectral_power(rho.matrix(), alpha), rho.layout(), rest);
  const double t = spectral_sum(eig_hermitian(reduced), [alpha](double x) {
    return std::pow(x, 1.0 / alpha);
  });
  return alpha / (alpha - 1.0) * std::log(t);
}

SibsonNumeric sibson_numeric(const DensityOperator& rho, std::size_t slot, double alpha,
                             std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw AlphaOutOfRange("Sibson minimization requires alpha in (0, 1)");
  }
  require_conditioning(rho, slot);
  const auto& layout = rho.layout();
  const auto rest = all_but(layout.size(), slot);
  const ComplexMatrix rho_rest = partial_trace(rho.matrix(), layout, rest);
  const auto d_rest = static_cast<std::size_t>(rho_rest.rows());
  const ComplexMatrix id_x = identity(layout.dim(slot));
  const auto spec = DivergenceSpec::renyi(alpha);

  const Objective objective = [&](const RealVector& x) {
    const ComplexMatrix sigma = density_from_cholesky(x, d_rest);
    return divergence(rho.matrix(), place_on_slot(id_x, sigma, layout, slot), spec,
                      KernelPolicy::Extended);
  };
  Rng rng(seed);
  RestartOptions options;
  options.max_restarts = 200;
  options.simplex.ftol = 1e-12;
  options.simplex.xtol = 1e-8;
  const MinimizeResult best =
      minimize_with_restarts(objective, cholesky_from_density(rho_rest, 1e-6), rng, options);
  return SibsonNumeric{best.value, density_from_cholesky(best.x, d_rest), best.restarts,
                       best.evaluations};
}

double sibson_optimized_conditional(const DensityOperator& rho, std::size_t slot, double alpha) {
  return std::log(static_cast<double>(rho.layout().dim(slot))) +
         sibson_closed_form(rho, slot, alpha);
}

double tsallis_optimized_conditional_probe(const DensityOperator& rho, std::size_t slot, double q,
                                           std::uint64_t seed) {
  const auto spec = DivergenceSpec::tsallis(q);
  spec.validate();
  require_conditioning(rho, slot);
  const auto& layout = rho.layout();
  const auto rest = all_but(layout.size(), slot);
  const ComplexMatrix rho_rest = partial_trace(rho.matrix(), layout, rest);
  const auto d_rest = static_cast<std::size_t>(rho_rest.rows());
  const std::size_t dx = layout.dim(slot);
  const ComplexMatrix mixed_x = identity(dx) / static_cast<double>(dx);
  const Objective objective = [&](const RealVector& x) {
    const ComplexMatrix sigma = density_from_cholesky(x, d_rest);
    return divergence(rho.matrix(), place_on_slot(mixed_x, sigma, layout, slot), spec,
                      KernelPolicy::Extended);
  };
  Rng rng(seed);
  RestartOptions options;
  options.max_restarts = 50;
  const MinimizeResult best =
      minimize_with_restarts(objective, cholesky_from_density(rho_rest, 1e-6), rng, options);
  return std::pow(static_cast<double>(dx), 1.0 - spec.routed().parameter) * best.value;
}

double mutual_information(const DensityOperator& rho) {
  require_conditioning(rho, 0);
  const auto& layout = rho.layout();
  const auto rest = all_but(layout.size(), 0);
  const std::vector<std::size_t> first{0};
  const ComplexMatrix rho_a = partial_trace(rho.matrix(), layout, first);
  const ComplexMatrix rho_b = partial_trace(rho.matrix(), layout, rest);
  return divergence(rho.matrix(), kron(rho_a, rho_b), DivergenceSpec::von_neumann());
}

double discord_A(const DensityOperator& rho, const ProjectiveObservable& a) {
  if (a.subsystem() != 0) throw LayoutMismatch("discord_A expects the observable on slot 0");
  return mutual_information(rho) - mutual_information(phi_A(rho, a));
}

// ---------------------------------------------------------------------------
// divergence property table

bool Interval::contains(double x) const noexcept {
  const bool above = lo_closed ? x >= lo : x > lo;
  const bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

bool PropertyRange::valid_at(double parameter) const noexcept {
  if (!holds) return false;
  if (intervals.empty()) return true;
  return std::any_of(intervals.begin(), intervals.end(),
                     [parameter](const Interval& i) { return i.contains(parameter); });
}

const std::vector<PropertyRange>& table_one() {
  using P = Property;
  using F = Family;
  constexpr double inf = kInfinity;
  const Interval open01{0.0, 1.0, false, false};
  const Interval half1{0.5, 1.0, true, false};
  const Interval above1{1.0, inf, false, false};
  const Interval one2{1.0, 2.0, false, true};
  static const std::vector<PropertyRange> table = {
      {P::Continuity, F::VonNeumann, true, {}, "yes"},
      {P::Continuity, F::Renyi, true, {}, "yes"},
      {P::Continuity, F::MinRel, false, {}, "no"},
      {P::Continuity, F::Sandwiched, true, {}, "yes"},
      {P::Continuity, F::MaxRel, false, {}, "no"},
      {P::Continuity, F::Tsallis, true, {}, "yes"},

      {P::PositiveDefiniteness, F::VonNeumann, true, {}, "yes"},
      {P::PositiveDefiniteness, F::Renyi, true, {}, "yes"},
      {P::PositiveDefiniteness, F::MinRel, false, {}, "no"},
      {P::PositiveDefiniteness, F::Sandwiched, true, {}, "yes"},
      {P::PositiveDefiniteness, F::MaxRel, true, {}, "yes"},
      {P::PositiveDefiniteness, F::Tsallis, true, {}, "yes"},

      {P::UnitaryInvariance, F::VonNeumann, true, {}, "yes"},
      {P::UnitaryInvariance, F::Renyi, true, {}, "yes"},
      {P::UnitaryInvariance, F::MinRel, true, {}, "yes"},
      {P::UnitaryInvariance, F::Sandwiched, true, {}, "yes"},
      {P::UnitaryInvariance, F::MaxRel, true, {}, "yes"},
      {P::UnitaryInvariance, F::Tsallis, true, {}, "yes"},

      {P::Additivity, F::VonNeumann, true, {}, "yes"},
      {P::Additivity, F::Renyi, true, {}, "yes"},
      {P::Additivity, F::MinRel, true, {}, "yes"},
      {P::Additivity, F::Sandwiched, true, {}, "yes"},
      {P::Additivity, F::MaxRel, true, {}, "yes"},
      {P::Additivity, F::Tsallis, false, {}, "no (pseudo-additive)"},

      {P::JointConvexity, F::VonNeumann, true, {}, "yes"},
      {P::JointConvexity, F::Renyi, true, {open01}, "alpha in (0,1)"},
      {P::JointConvexity, F::MinRel, true, {}, "yes"},
      {P::JointConvexity, F::Sandwiched, true, {half1}, "alpha in [1/2,1)"},
      {P::JointConvexity, F::MaxRel, false, {}, "no"},
      {P::JointConvexity, F::Tsallis, true, {open01, one2}, "q in (0,1)u(1,2]"},

      {P::DataProcessing, F::VonNeumann, true, {}, "yes"},
      {P::DataProcessing, F::Renyi, true, {open01, one2}, "alpha in (0,1)u(1,2]"},
      {P::DataProcessing, F::MinRel, true, {}, "yes"},
      {P::DataProcessing, F::Sandwiched, true, {half1, above1}, "alpha in [1/2,1)u(1,inf)"},
      {P::DataProcessing, F::MaxRel, true, {}, "yes"},
      {P::DataProcessing, F::Tsallis, true, {open01, one2}, "q in (0,1)u(1,2]"},
  };
  return table;
}

const PropertyRange& table_one(Property property, Family family) {
  if (family == Family::Collision) family = Family::Sandwiched;
  for (const auto& row : table_one()) {
    if (row.property == property && row.family == family) return row;
  }
  throw DomainError("no property table entry");
}

std::string property_name(Property property) {
  switch (property) {
    case Property::Continuity: return "continuity";
    case Property::PositiveDefiniteness: return "positiveDefiniteness";
    case Property::UnitaryInvariance: return "unitaryInvariance";
    case Property::Additivity: return "additivity";
    case Property::JointConvexity: return "jointConvexity";
    case Property::DataProcessing: return "dpi";
  }
  return "unknown";
}

std::string family_name(Family family) {
  switch (family) {
    case Family::VonNeumann: return "vN";
    case Family::Renyi: return "renyi";
    case Family::Sandwiched: return "sandwiched";
    case Family::MinRel: return "minRel";
    case Family::MaxRel: return "maxRel";
    case Family::Collision: return "collision";
    case Family::Tsallis: return "tsallis";
  }
  return "unknown";
}

}  // namespace realitykit
