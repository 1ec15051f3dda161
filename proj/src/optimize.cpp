#include "realitykit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

namespace realitykit {

namespace {

double evaluate(const Objective& f, const RealVector& x, long& count) {
  ++count;
  const double v = f(x);
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

struct Simplex {
  std::vector<RealVector> points;
  std::vector<double> values;

  void sort() {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<RealVector> p;
    std::vector<double> v;
    for (auto i : order) {
      p.push_back(points[i]);
      v.push_back(values[i]);
    }
    points = std::move(p);
    values = std::move(v);
  }

  double value_spread() const { return values.back() - values.front(); }

  double diameter() const {
    double d = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      d = std::max(d, (points[i] - points[0]).cwiseAbs().maxCoeff());
    }
    return d;
  }
};

MinimizeResult run_simplex(const Objective& f, Simplex simplex, const NelderMeadOptions& opt) {
  const auto n = static_cast<double>(simplex.points.front().size());
  // Dimension-adapted coefficients (Gao and Han); identical to the classic
  // choice at n = 2 and far more robust for n >= 10.
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / n;
  const double contract = 0.75 - 1.0 / (2.0 * n);
  const double shrink = 1.0 - 1.0 / n;

  long evals = 0;
  for (std::size_t i = 0; i < simplex.points.size(); ++i) {
    simplex.values[i] = evaluate(f, simplex.points[i], evals);
  }
  simplex.sort();
  bool converged = false;
  const std::size_t last = simplex.points.size() - 1;

  while (evals < opt.max_evaluations) {
    if (simplex.value_spread() <= opt.ftol && simplex.diameter() <= opt.xtol) {
      converged = true;
      break;
    }
    RealVector centroid = RealVector::Zero(simplex.points.front().size());
    for (std::size_t i = 0; i < last; ++i) centroid += simplex.points[i];
    centroid /= static_cast<double>(last);

    const RealVector xr = centroid + reflect * (centroid - simplex.points[last]);
    const double fr = evaluate(f, xr, evals);
    if (fr < simplex.values.front()) {
      const RealVector xe = centroid + expand * (xr - centroid);
      const double fe = evaluate(f, xe, evals);
      if (fe < fr) {
        simplex.points[last] = xe;
        simplex.values[last] = fe;
      } else {
        simplex.points[last] = xr;
        simplex.values[last] = fr;
      }
    } else if (fr < simplex.values[last - 1]) {
      simplex.points[last] = xr;
      simplex.values[last] = fr;
    } else {
      const bool outside = fr < simplex.values[last];
      const RealVector xc = outside ? RealVector(centroid + contract * (xr - centroid))
                                    : RealVector(centroid + contract * (simplex.points[last] - centroid));
      const double fc = evaluate(f, xc, evals);
      if (fc < std::min(fr, simplex.values[last])) {
        simplex.points[last] = xc;
        simplex.values[last] = fc;
      } else {
        for (std::size_t i = 1; i <= last; ++i) {
          simplex.points[i] = simplex.points[0] + shrink * (simplex.points[i] - simplex.points[0]);
          simplex.values[i] = evaluate(f, simplex.points[i], evals);
        }
      }
    }
    simplex.sort();
  }

  MinimizeResult result;
  result.x = simplex.points.front();
  result.value = simplex.values.front();
  result.evaluations = evals;
  result.converged = converged;
  return result;
}

Simplex axis_simplex(const RealVector& x0, const std::vector<double>& steps) {
  Simplex s;
  s.points.push_back(x0);
  for (Eigen::Index i = 0; i < x0.size(); ++i) {
    RealVector p = x0;
    p[i] += steps[static_cast<std::size_t>(i)];
    s.points.push_back(std::move(p));
  }
  s.values.assign(s.points.size(), 0.0);
  return s;
}

}  // namespace

MinimizeResult nelder_mead(const Objective& f, const RealVector& x0,
                           const NelderMeadOptions& options) {
  if (x0.size() == 0) throw DomainError("nelder_mead: empty parameter vector");
  std::vector<double> steps(static_cast<std::size_t>(x0.size()), options.initial_step);
  return run_simplex(f, axis_simplex(x0, steps), options);
}

MinimizeResult minimize_with_restarts(const Objective& f, const RealVector& x0, Rng& rng,
                                      const RestartOptions& options) {
  MinimizeResult best = nelder_mead(f, x0, options.simplex);
  long total = best.evaluations;
  int restarts = 0;
  bool settled = false;
  while (restarts < options.max_restarts) {
    std::vector<double> steps(static_cast<std::size_t>(x0.size()));
    for (auto& s : steps) {
      const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      s = sign * options.simplex.initial_step * (0.25 + options.random_step * rng.uniform());
    }
    MinimizeResult next = run_simplex(f, axis_simplex(best.x, steps), options.simplex);
    total += next.evaluations;
    ++restarts;
    const double gain = best.value - next.value;
    if (next.value < best.value) {
      const bool converged = next.converged;
      best = std::move(next);
      best.converged = converged;
    }
    if (!(gain > options.improvement_tol)) {
      settled = true;
      break;
    }
  }
  best.evaluations = total;
  best.restarts = restarts;
  if (!settled) {
    throw OptimizerNonConvergence(
        "restart budget of " + std::to_string(options.max_restarts) + " exhausted", best.value);
  }
  best.converged = true;
  return best;
}

// ---------------------------------------------------------------------------
// parametrizations

std::size_t cholesky_parameter_count(std::size_t d) { return d * d; }

ComplexMatrix density_from_cholesky(const RealVector& params, std::size_t d) {
  if (static_cast<std::size_t>(params.size()) != d * d) {
    throw DomainError("Cholesky parameter count mismatch");
  }
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix l = ComplexMatrix::Zero(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    l(i, i) = params[k++];
    for (Eigen::Index j = 0; j < i; ++j) {
      l(i, j) = Complex(params[k], params[k + 1]);
      k += 2;
    }
  }
  ComplexMatrix sigma = l * l.adjoint();
  const double trace = sigma.trace().real();
  if (!(trace > 0.0)) return ComplexMatrix::Identity(n, n) / static_cast<double>(d);
  return sigma / trace;
}

RealVector cholesky_from_density(const ComplexMatrix& sigma, double floor) {
  const auto n = sigma.rows();
  const ComplexMatrix regular = 0.5 * (sigma + sigma.adjoint()) + floor * ComplexMatrix::Identity(n, n);
  Eigen::LLT<ComplexMatrix> llt(regular);
  if (llt.info() != Eigen::Success) throw DomainError("Cholesky factorization failed");
  const ComplexMatrix l = llt.matrixL();
  RealVector params(n * n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    params[k++] = l(i, i).real();
    for (Eigen::Index j = 0; j < i; ++j) {
      params[k++] = l(i, j).real();
      params[k++] = l(i, j).imag();
    }
  }
  return params;
}

RealVector softmax(const RealVector& z) {
  const double m = z.maxCoeff();
  RealVector e = (z.array() - m).exp();
  return e / e.sum();
}

RealVector softmax_inverse(const RealVector& p, double floor) {
  RealVector z = p.array().max(floor).log();
  return z.array() - z.mean();
}

// ---------------------------------------------------------------------------
// BFGS

namespace {

struct GslBridge {
  const SmoothObjective* f;
  long evaluations = 0;
  RealVector x, g;
};

RealVector from_gsl(const gsl_vector* v) {
  RealVector out(static_cast<Eigen::Index>(v->size));
  for (std::size_t i = 0; i < v->size; ++i) out[static_cast<Eigen::Index>(i)] = gsl_vector_get(v, i);
  return out;
}

void to_gsl(const RealVector& in, gsl_vector* v) {
  for (std::size_t i = 0; i < v->size; ++i) gsl_vector_set(v, i, in[static_cast<Eigen::Index>(i)]);
}

double bridge_fdf(const gsl_vector* x, void* params, gsl_vector* g) {
  auto* b = static_cast<GslBridge*>(params);
  b->x = from_gsl(x);
  b->g.setZero(b->x.size());
  const double v = (*b->f)(b->x, b->g);
  ++b->evaluations;
  if (g != nullptr) to_gsl(b->g, g);
  // GSL's line search copes with +inf poorly; a large finite value steers it back.
  return std::isfinite(v) ? v : std::numeric_limits<double>::max() / 4;
}

double bridge_f(const gsl_vector* x, void* params) { return bridge_fdf(x, params, nullptr); }

void bridge_df(const gsl_vector* x, void* params, gsl_vector* g) { bridge_fdf(x, params, g); }

void bridge_both(const gsl_vector* x, void* params, double* f, gsl_vector* g) {
  *f = bridge_fdf(x, params, g);
}

}  // namespace

MinimizeResult bfgs(const SmoothObjective& f, const RealVector& x0, const BfgsOptions& options) {
  const std::size_t n = static_cast<std::size_t>(x0.size());
  if (n == 0) throw DomainError("bfgs: empty parameter vector");
  GslBridge bridge{&f, 0, {}, {}};
  gsl_multimin_function_fdf fn{&bridge_f, &bridge_df, &bridge_both, n, &bridge};

  // GSL reports failures through its handler; here they surface as status codes.
  gsl_error_handler_t* previous = gsl_set_error_handler_off();
  gsl_vector* x = gsl_vector_alloc(n);
  to_gsl(x0, x);
  gsl_multimin_fdfminimizer* s = gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, n);
  gsl_multimin_fdfminimizer_set(s, &fn, x, options.initial_step, options.line_tol);

  MinimizeResult out;
  for (long it = 0; it < options.max_iterations; ++it) {
    if (gsl_multimin_fdfminimizer_iterate(s) != GSL_SUCCESS) break;  // GSL_ENOPROG: stalled
    if (gsl_multimin_test_gradient(s->gradient, options.gradient_tol) == GSL_SUCCESS) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged) {
    out.converged = gsl_multimin_test_gradient(s->gradient, options.gradient_tol) == GSL_SUCCESS;
  }
  out.x = from_gsl(s->x);
  out.value = s->f;
  out.evaluations = bridge.evaluations;

  gsl_multimin_fdfminimizer_free(s);
  gsl_vector_free(x);
  gsl_set_error_handler(previous);
  return out;
}

}  // namespace realitykit
