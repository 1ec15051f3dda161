#pragma once

#include <cstdint>
#include <string>

#include "realitykit/channels.hpp"
#include "realitykit/divergences.hpp"
#include "realitykit/qstate.hpp"

namespace realitykit {

enum class QuantifierKind {
  VonNeumann,
  RenyiDown,
  RenyiUp,
  RenyiBar,
  Tsallis,
  MinRel,
  MaxRel,
  Sandwiched,
};

enum class Mode {
  Monotone,     // parameters restricted to the ranges where the quantifier is a monotone
  Exploratory,  // any admissible parameter; the result carries no guarantee
};

struct RealityQuantifierSpec {
  QuantifierKind kind = QuantifierKind::VonNeumann;
  double parameter = 1.0;

  static RealityQuantifierSpec von_neumann() { return {QuantifierKind::VonNeumann, 1.0}; }
  static RealityQuantifierSpec renyi_down(double a) { return {QuantifierKind::RenyiDown, a}; }
  static RealityQuantifierSpec renyi_up(double a) { return {QuantifierKind::RenyiUp, a}; }
  static RealityQuantifierSpec renyi_bar(double a) { return {QuantifierKind::RenyiBar, a}; }
  static RealityQuantifierSpec tsallis(double q) { return {QuantifierKind::Tsallis, q}; }
  static RealityQuantifierSpec min_rel() { return {QuantifierKind::MinRel, 0.0}; }
  static RealityQuantifierSpec max_rel() { return {QuantifierKind::MaxRel, 0.0}; }
  static RealityQuantifierSpec sandwiched(double a) { return {QuantifierKind::Sandwiched, a}; }

  bool has_parameter() const noexcept;
  /// True when the quantifier is a reality monotone at this parameter.
  bool is_monotone() const noexcept;
  std::string name() const;
};

struct RealityValue {
  double value = 0.0;
  double max_value = 0.0;  // ln d_A, or ln_q d_A for Tsallis
  RealityQuantifierSpec spec;
  bool guaranteed = false;  // false: exploratory parameter or a non-monotone family
};

/// Inner solver for the optimized Renyi quantifier.
enum class BarSolver {
  QuasiNewton,  // BFGS on sigma's block factors with an analytic gradient
  Simplex,      // derivative-free Nelder-Mead with restarts; independent cross-check
};

struct RealityOptions {
  std::uint64_t seed = 0x7265616c69747931ULL;  // simplex restarts only
  int max_restarts = 50;
  BarSolver bar_solver = BarSolver::QuasiNewton;
};

double max_reality(const RealityQuantifierSpec& spec, std::size_t d_a);

RealityValue reality(const DensityOperator& rho, const ProjectiveObservable& a,
                     const RealityQuantifierSpec& spec, Mode mode = Mode::Monotone,
                     const RealityOptions& options = {});

/// ln d_A - D(rho || phi_A(rho)).
RealityValue reality_vn(const DensityOperator& rho, const ProjectiveObservable& a);
/// S(phi_A(rho)) - S(rho).
double irreality(const DensityOperator& rho, const ProjectiveObservable& a);

RealityValue reality_renyi_down(const DensityOperator& rho, const ProjectiveObservable& a,
                                double alpha, Mode mode = Mode::Monotone);
/// Uses Tr_E(v^alpha) = phi_A(rho^alpha); no environment is built.
RealityValue reality_renyi_up(const DensityOperator& rho, const ProjectiveObservable& a,
                              double alpha, Mode mode = Mode::Monotone);
/// Same quantity through the explicit dilation and a partial trace over E.
RealityValue reality_renyi_up_dilated(const DensityOperator& rho, const ProjectiveObservable& a,
                                      double alpha);
/// Minimizes D_alpha(rho || sigma) over A-reality states sigma.
RealityValue reality_renyi_bar(const DensityOperator& rho, const ProjectiveObservable& a,
                               double alpha, Mode mode = Mode::Monotone,
                               const RealityOptions& options = {});
RealityValue reality_tsallis(const DensityOperator& rho, const ProjectiveObservable& a, double q,
                             Mode mode = Mode::Monotone);
/// minRel, maxRel or sandwiched(alpha) in place of D_alpha.
RealityValue reality_special(const DensityOperator& rho, const ProjectiveObservable& a,
                             const RealityQuantifierSpec& spec, Mode mode = Mode::Monotone);

// ---------------------------------------------------------------------------
// discord and the uncertainty relation

struct OneSidedDiscord {
  double value = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// min over spin observables on a qubit slot 0 of discord_A: a 64×64 grid
/// over (theta, phi) followed by simplex polishing.
OneSidedDiscord one_sided_discord(const DensityOperator& rho);

struct UncertaintyBound {
  double lhs = 0.0;            // R_X + R_Y
  double bound = 0.0;          // 2 ln d_A
  double discord_bound = 0.0;  // 2 (ln d_A - one-sided discord)
  bool holds(double tolerance = 1e-9) const noexcept {
    return lhs <= bound + tolerance && lhs <= discord_bound + tolerance;
  }
};

UncertaintyBound uncertainty_bound(const DensityOperator& rho, const ProjectiveObservable& x,
                                   const ProjectiveObservable& y);

// ---------------------------------------------------------------------------
// axiom table

enum class Axiom { A1, A2, A3a, A3b, A4, A5, A6, A7 };

enum class CellStatus {
  Holds,       // check mark, or parameter inside the printed range
  OutOfRange,  // ranged cell evaluated outside its range; nothing is claimed
  Fails,       // cross
  Open,        // question mark
};

CellStatus table_two(Axiom axiom, const RealityQuantifierSpec& spec);
std::string axiom_name(Axiom axiom);
std::string cell_status_name(CellStatus status);

}  // namespace realitykit
