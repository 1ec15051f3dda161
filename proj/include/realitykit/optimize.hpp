#pragma once

// Derivative-free minimization and the parametrizations that keep density
// operators and probability vectors feasible without explicit constraints.

#include <cstddef>
#include <functional>

#include "realitykit/qstate.hpp"

namespace realitykit {

using Objective = std::function<double(const RealVector&)>;

struct NelderMeadOptions {
  double ftol = 1e-9;          // spread of simplex values at termination
  double xtol = 1e-9;          // simplex diameter at termination
  long max_evaluations = 200000;
  double initial_step = 0.3;
};

struct MinimizeResult {
  RealVector x;
  double value = 0.0;
  long evaluations = 0;
  int restarts = 0;
  bool converged = false;
};

MinimizeResult nelder_mead(const Objective& f, const RealVector& x0,
                           const NelderMeadOptions& options = {});

struct RestartOptions {
  NelderMeadOptions simplex;
  int max_restarts = 50;
  double improvement_tol = 1e-9;  // a restart must gain at least this much
  double random_step = 0.5;       // scale of the random component of restart simplices
};

/// Runs the simplex, then restarts from the incumbent with a fresh simplex
/// until a restart fails to improve by improvement_tol or the cap is reached.
/// Throws OptimizerNonConvergence only when the last simplex did not converge
/// and the restart budget is exhausted.
MinimizeResult minimize_with_restarts(const Objective& f, const RealVector& x0, Rng& rng,
                                      const RestartOptions& options = {});

/// Value and gradient; the gradient is written into `grad` (already sized).
using SmoothObjective = std::function<double(const RealVector& x, RealVector& grad)>;

struct BfgsOptions {
  double gradient_tol = 1e-10;  // stop when |grad|_2 falls below this
  double initial_step = 0.01;
  double line_tol = 0.1;
  long max_iterations = 5000;
};

/// Quasi-Newton minimization (GSL vector_bfgs2). `converged` is true when the
/// gradient test passed; a stalled line search leaves it false.
MinimizeResult bfgs(const SmoothObjective& f, const RealVector& x0, const BfgsOptions& options = {});

// ---------------------------------------------------------------------------
// parametrizations

/// Number of real parameters of a d×d Cholesky factor (d^2).
std::size_t cholesky_parameter_count(std::size_t d);
/// L L† / Tr(L L†) from a lower-triangular L with real diagonal.
ComplexMatrix density_from_cholesky(const RealVector& params, std::size_t d);
/// Inverse of density_from_cholesky for full-rank sigma (regularized by `floor`).
RealVector cholesky_from_density(const ComplexMatrix& sigma, double floor = 1e-12);

RealVector softmax(const RealVector& z);
RealVector softmax_inverse(const RealVector& p, double floor = 1e-300);

}  // namespace realitykit
