#pragma once

// Randomized property checks over the axioms, lemmas and property tables.
// Every check owns a PRNG stream derived from (master seed, check id), so a
// report depends only on (id, seed, batch).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "realitykit/qstate.hpp"
#include "realitykit/reality.hpp"

namespace realitykit {

enum class Expectation {
  Holds,     // asserted: worst violation must stay within tolerance
  Violated,  // asserted: a concrete counterexample must be exhibited
  Probe,     // measured and logged, never asserted
};

std::string expectation_name(Expectation e);

namespace tol {
inline constexpr double kIdentity = 1e-10;
inline constexpr double kInequality = 1e-9;
inline constexpr double kOptimizer = 1e-6;
inline constexpr double kLimit = 1e-4;
inline constexpr double kComplementarity = 1e-12;
}  // namespace tol

struct Witness {
  std::string description;
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<ComplexMatrix> state;
};

struct PropertyReport {
  std::string id;
  bool pass = false;
  double worst_violation = 0.0;  // positive means the predicate was violated by this much
  std::uint64_t worst_case_seed = 0;
  std::size_t samples = 0;
  double elapsed_ms = 0.0;
  Expectation expectation = Expectation::Holds;
  double tolerance = 0.0;
  std::optional<Witness> witness;
  std::string note;
};

/// One JSON object per line; timing is the only nondeterministic field.
std::string to_json_line(const PropertyReport& report);

struct HarnessConfig {
  std::size_t batch = 500;
  std::uint64_t seed = 20210801;
  /// Empty runs everything; otherwise only ids with one of these prefixes.
  std::vector<std::string> filter;

  bool selected(const std::string& id) const;
};

// ---------------------------------------------------------------------------
// building blocks

struct SampleOutcome {
  double violation = 0.0;
  std::optional<Witness> witness;  // recorded when this sample becomes the worst
};

using Sampler = std::function<SampleOutcome(Rng& rng, std::size_t k)>;

/// Runs `sampler` for k = 0..batch-1 with per-sample seeds mix_seed(seed_from_tag(seed, id), k).
PropertyReport run_check(const std::string& id, Expectation expectation, double tolerance,
                         std::size_t batch, std::uint64_t seed, const Sampler& sampler);

/// d_B alternates 2, 3 with the sample index.
SubsystemLayout default_layout(std::size_t k);
/// Random rank in [1, dim]; every fourth sample is pure, every fourth full rank.
DensityOperator sample_state(const SubsystemLayout& layout, Rng& rng, std::size_t k);

/// rho ⊗ rho' with A acting on both copies as a single observable of dimension d_A^2.
struct DoubledState {
  DensityOperator state;
  ProjectiveObservable observable;
};
DoubledState doubled(const DensityOperator& rho, const DensityOperator& other,
                     const ProjectiveObservable& a);

/// rho_eps = (1 - eps) 1/4 + eps psi_s on two qubits.
DensityOperator werner_state(double eps);
DensityOperator singlet();
/// (1/4) 1 + (mu/4)(XX - YY) + ((2mu - 1)/4) ZZ.
DensityOperator mu_state(double mu);

/// Default quantifier set checked against the axiom table.
std::vector<RealityQuantifierSpec> default_specs();
/// Parameters outside the mixing range that are still inside the Axiom 3a range.
std::vector<RealityQuantifierSpec> extended_specs();

// ---------------------------------------------------------------------------
// suites

/// d_b = 0 alternates 2, 3; otherwise every sample uses {2, d_b}.
PropertyReport check_axiom1_flow(const RealityQuantifierSpec& spec, std::size_t batch,
                                 std::uint64_t seed, std::size_t d_b = 0);
std::vector<PropertyReport> check_axiom_suite(const std::vector<RealityQuantifierSpec>& specs,
                                              const HarnessConfig& config);
std::vector<PropertyReport> check_lemmas_and_theorem(const HarnessConfig& config);
PropertyReport check_sibson_identity(std::size_t batch, std::uint64_t seed,
                                     const std::vector<double>& alphas = {0.2, 0.5, 0.8});
std::vector<PropertyReport> check_reality_identities(const HarnessConfig& config);
std::vector<PropertyReport> check_table_one(const HarnessConfig& config);

/// Every suite above, filtered by config.filter.
std::vector<PropertyReport> run_all(const HarnessConfig& config);

/// True when every asserted report passed.
bool all_passed(const std::vector<PropertyReport>& reports);

}  // namespace realitykit
