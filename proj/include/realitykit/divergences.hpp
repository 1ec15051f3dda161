#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "realitykit/qstate.hpp"

namespace realitykit {

enum class Family { VonNeumann, Renyi, Sandwiched, MinRel, MaxRel, Collision, Tsallis };

/// Parameter values with |p - 1| below this are evaluated as von Neumann.
inline constexpr double kLimitRouting = 1e-6;

struct DivergenceSpec {
  Family family = Family::VonNeumann;
  double parameter = 1.0;  // alpha or q; unused for vN/min/max/collision

  static DivergenceSpec von_neumann() { return {Family::VonNeumann, 1.0}; }
  static DivergenceSpec renyi(double alpha) { return {Family::Renyi, alpha}; }
  static DivergenceSpec sandwiched(double alpha) { return {Family::Sandwiched, alpha}; }
  static DivergenceSpec min_rel() { return {Family::MinRel, 0.0}; }
  static DivergenceSpec max_rel() { return {Family::MaxRel, 0.0}; }
  static DivergenceSpec collision() { return {Family::Collision, 2.0}; }
  static DivergenceSpec tsallis(double q) { return {Family::Tsallis, q}; }

  bool has_parameter() const noexcept;
  /// Throws AlphaOutOfRange / QOutOfRange for p <= 0 or non-finite p.
  void validate() const;
  /// Family that is actually evaluated after limit routing.
  DivergenceSpec routed() const;
  std::string name() const;
};

enum class KernelPolicy {
  Strict,    // kernel violations throw KernelViolation
  Extended,  // kernel violations return +infinity
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Weight of rho outside supp(sigma) above which ker sigma ⊆ ker rho is violated.
inline constexpr double kKernelTolerance = 1e-9;

// ---------------------------------------------------------------------------
// entropies

enum class EntropyFamily { VonNeumann, Renyi, Tsallis };

struct EntropySpec {
  EntropyFamily family = EntropyFamily::VonNeumann;
  double parameter = 1.0;

  static EntropySpec von_neumann() { return {EntropyFamily::VonNeumann, 1.0}; }
  static EntropySpec renyi(double alpha) { return {EntropyFamily::Renyi, alpha}; }
  static EntropySpec tsallis(double q) { return {EntropyFamily::Tsallis, q}; }
};

/// q-logarithm (x^{1-q} - 1)/(1 - q); ln x at q = 1.
double ln_q(double x, double q);

double entropy(const ComplexMatrix& rho, const EntropySpec& spec = EntropySpec::von_neumann());
double entropy(const DensityOperator& rho, const EntropySpec& spec = EntropySpec::von_neumann());
/// Shannon entropy of a probability vector, nats.
double shannon(const std::vector<double>& p);

// ---------------------------------------------------------------------------
// divergences

/// Normalized by Tr(rho); inputs need only be positive semidefinite.
double divergence(const ComplexMatrix& rho, const ComplexMatrix& sigma, const DivergenceSpec& spec,
                  KernelPolicy policy = KernelPolicy::Strict);
double divergence(const DensityOperator& rho, const DensityOperator& sigma,
                  const DivergenceSpec& spec, KernelPolicy policy = KernelPolicy::Strict);

/// True iff ker sigma ⊆ ker rho within kKernelTolerance.
bool kernel_condition(const ComplexMatrix& rho, const ComplexMatrix& sigma);

// ---------------------------------------------------------------------------
// conditional information, all with the conditioned system X = `slot`

/// 1_X/d_X ⊗ rho_rest, arranged in rho's layout order.
ComplexMatrix maximally_mixed_on(const DensityOperator& rho, std::size_t slot);

/// D(rho || 1_X/d_X ⊗ rho_rest); Tsallis carries the factor d_X^{1-q}.
double conditional_information(const DensityOperator& rho, std::size_t slot,
                               const DivergenceSpec& spec,
                               KernelPolicy policy = KernelPolicy::Strict);

/// inf over sigma of D_alpha(rho || 1_X ⊗ sigma_rest) in closed form,
/// (alpha/(alpha-1)) ln Tr_rest[(Tr_X rho^alpha)^{1/alpha}]. alpha in (0, 1).
double sibson_closed_form(const DensityOperator& rho, std::size_t slot, double alpha);

struct SibsonNumeric {
  double value = 0.0;
  ComplexMatrix minimizer;
  int restarts = 0;
  long evaluations = 0;
};

/// Direct minimization of D_alpha(rho || 1_X ⊗ sigma) over sigma on the
/// remaining slots (Cholesky parametrization, restarted simplex).
SibsonNumeric sibson_numeric(const DensityOperator& rho, std::size_t slot, double alpha,
                             std::uint64_t seed);

/// ln d_X + the Sibson infimum: the optimized conditional information.
double sibson_optimized_conditional(const DensityOperator& rho, std::size_t slot, double alpha);

/// Experimental: d_X^{1-q} inf over sigma of D_q(rho || 1_X/d_X ⊗ sigma), found
/// numerically. No properties are asserted for it.
double tsallis_optimized_conditional_probe(const DensityOperator& rho, std::size_t slot, double q,
                                           std::uint64_t seed);

/// I_{A:B} = D(rho || rho_A ⊗ rho_B) for the split slot 0 | rest.
double mutual_information(const DensityOperator& rho);

/// I_{A:B}(rho) - I_{A:B}(phi_A(rho)); the observable must act on slot 0.
double discord_A(const DensityOperator& rho, const ProjectiveObservable& a);

// ---------------------------------------------------------------------------
// divergence property table

enum class Property {
  Continuity,
  PositiveDefiniteness,
  UnitaryInvariance,
  Additivity,
  JointConvexity,
  DataProcessing,
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(double x) const noexcept;
};

struct PropertyRange {
  Property property;
  Family family;
  bool holds = false;               // false means the cell is a cross
  std::vector<Interval> intervals;  // empty with holds = true: whole domain
  std::string description;

  bool valid_at(double parameter) const noexcept;
};

const std::vector<PropertyRange>& table_one();
const PropertyRange& table_one(Property property, Family family);
std::string property_name(Property property);
std::string family_name(Family family);

}  // namespace realitykit
