// Acceptance run: one line per criterion, exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "realitykit/channels.hpp"
#include "realitykit/experiments.hpp"
#include "realitykit/harness.hpp"
#include "realitykit/reality.hpp"
#include "realitykit/werner.hpp"

using namespace realitykit;

namespace {

constexpr std::uint64_t kSeed = 20210801;

// Tolerances and time budgets, one block per criterion.
constexpr double kAc1Tol = 1e-10, kAc1Seconds = 10.0;
constexpr double kAc2Tol = 1e-10, kAc2MonotoneTol = 1e-9, kAc2Step = 1e-4;
constexpr double kAc3Tol = 1e-9, kAc3Seconds = 60.0;
constexpr double kAc4Seconds = 300.0;
constexpr double kAc5Tol = 1e-10;
constexpr double kAc6Tol = 1e-9;
constexpr double kAc7Tol = 1e-6;
constexpr double kAc8Tol = 1e-4, kAc8Offset = 1e-5;
constexpr double kAc9ComplementTol = 1e-12, kAc9DecompositionTol = 1e-10;
constexpr double kAc10Tol = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::vector<double> grid(std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

const ProjectiveObservable& z_obs() {
  static const auto z = spin_observable(0, 0.0, 0.0);
  return z;
}

Outcome ac1() {
  double worst = 0.0, endpoint = 0.0;
  for (double alpha : {0.125, 0.25, 0.5}) {
    for (double eps : grid(201)) {
      const double numeric = reality_renyi_down(werner_state(eps), z_obs(), alpha).value;
      worst = std::max(worst, std::abs(numeric - werner::renyi_down(eps, alpha)));
      if (eps == 0.0) endpoint = std::max(endpoint, std::abs(numeric - std::log(2.0)));
      if (eps == 1.0) endpoint = std::max(endpoint, std::abs(numeric));
    }
  }
  return {worst <= kAc1Tol && endpoint <= kAc1Tol,
          fmt("max|numeric-closed|=%.3g endpoints=%.3g tol=%.0e", worst, endpoint, kAc1Tol)};
}

Outcome ac2() {
  double worst = 0.0, endpoint = 0.0, slope = -kInfinity;
  for (double q : {0.5, 1.5, 2.0}) {
    for (double eps : grid(201)) {
      const auto w = werner_state(eps);
      const double numeric = reality_tsallis(w, z_obs(), q).value;
      worst = std::max(worst, std::abs(numeric - werner::tsallis(eps, q)));
      if (eps == 0.0) endpoint = std::max(endpoint, std::abs(numeric - werner::ln_q(2.0, q)));
      if (eps == 1.0) endpoint = std::max(endpoint, std::abs(numeric));
      // Central difference on the matrix pipeline; q + h stays inside (0, 2] except at q = 2.
      const double hi = q + kAc2Step <= 2.0 ? q + kAc2Step : q;
      const double lo = q - kAc2Step;
      const double d = (reality_tsallis(w, z_obs(), hi, Mode::Exploratory).value -
                        reality_tsallis(w, z_obs(), lo, Mode::Exploratory).value) /
                       (hi - lo);
      slope = std::max(slope, d);
    }
  }
  return {worst <= kAc2Tol && endpoint <= kAc2Tol && slope <= kAc2MonotoneTol,
          fmt("max|numeric-closed|=%.3g endpoints=%.3g max dR/dq=%.3g", worst, endpoint, slope)};
}

Outcome ac3() {
  auto c = default_config("updown-gap");
  c.steps = 99;
  const auto r = run_updown_gap(c);
  double min_gap = kInfinity, max_gap = -kInfinity, arg_a = 0.0, arg_e = 0.0, max_printed = -kInfinity;
  for (const auto& row : r.rows) {
    min_gap = std::min(min_gap, row[5]);
    if (row[5] > max_gap) {
      max_gap = row[5];
      arg_a = row[0];
      arg_e = row[1];
    }
    max_printed = std::max(max_printed, row[6]);
  }
  std::string detail = fmt("min gap=%.3g max=%.6g at (alpha,eps)=(%.2f,%.2f)", min_gap, max_gap, arg_a, arg_e) +
                       fmt(" [reference ~0.0044 at (0.24,0.89)]; printed-chi max=%.4g", max_printed);
  return {min_gap >= -kAc3Tol && r.passed(), detail};
}

Outcome ac4() {
  HarnessConfig c;
  c.batch = 500;
  c.seed = kSeed;
  const auto reports = run_all(c);
  std::size_t holds = 0, violated = 0, bad = 0, missing_witness = 0;
  for (const auto& r : reports) {
    if (r.expectation == Expectation::Holds) {
      ++holds;
      if (!r.pass) ++bad;
    } else if (r.expectation == Expectation::Violated) {
      ++violated;
      if (!r.pass) ++bad;
      if (!r.witness || !r.witness->state) ++missing_witness;
    }
  }
  return {bad == 0 && missing_witness == 0 && !reports.empty(),
          fmt("%g checks: %g asserted-hold, %g asserted-violation, %g failed", static_cast<double>(reports.size()),
              static_cast<double>(holds), static_cast<double>(violated), static_cast<double>(bad)) +
              fmt(", %g witnesses missing", static_cast<double>(missing_witness))};
}

Outcome ac5() {
  double worst = 0.0;
  for (std::size_t d_a : {2u, 3u}) {
    Rng rng(mix_seed(kSeed, d_a));
    for (int i = 0; i < 100; ++i) {
      const SubsystemLayout layout{d_a, 2};
      const auto rho = random_density(layout, 1 + rng.index(layout.total()), rng);
      const auto a = random_observable(0, d_a, rng);
      const auto u = stinespring_unitary(a, layout);
      const auto phi = phi_A(rho, a);
      const ComplexMatrix fixed = kron(phi.matrix(), identity(u.env_dim) / static_cast<double>(u.env_dim));
      worst = std::max(worst, max_abs_diff(u.matrix * fixed * u.matrix.adjoint(), fixed));
      worst = std::max(worst, max_abs_diff(partial_trace(dilate(rho, u), {0, 1}).matrix(), phi.matrix()));
    }
  }
  return {worst <= kAc5Tol, fmt("max entry deviation=%.3g over 200 states", worst)};
}

Outcome ac6() {
  using S = RealityQuantifierSpec;
  double worst = 0.0;
  bool pass = true;
  for (const auto& spec : {S::von_neumann(), S::renyi_down(0.3), S::renyi_down(0.7), S::renyi_up(0.3),
                           S::renyi_up(0.7), S::tsallis(0.5), S::tsallis(1.5)}) {
    const auto r = check_axiom1_flow(spec, 200, kSeed, 2);
    worst = std::max(worst, r.worst_violation);
    pass = pass && r.pass && r.worst_violation <= kAc6Tol;
  }
  return {pass, fmt("max|dI - dR|=%.3g over 7 paths x 200 states", worst)};
}

Outcome ac7() {
  const auto r = check_sibson_identity(50, kSeed, {0.2, 0.5, 0.8});
  return {r.pass && r.worst_violation <= kAc7Tol, fmt("max|closed-numeric|=%.3g", r.worst_violation)};
}

Outcome ac8() {
  Rng rng(mix_seed(kSeed, 8));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const SubsystemLayout layout{2, 2 + rng.index(2)};
    const auto rho = random_density(layout, 1 + rng.index(layout.total()), rng);
    const auto a = random_observable(0, 2, rng);
    const double vn = reality_vn(rho, a).value;
    for (double s : {-1.0, 1.0}) {
      const double p = 1.0 + s * kAc8Offset;
      worst = std::max(worst, std::abs(reality_renyi_down(rho, a, p, Mode::Exploratory).value - vn));
      worst = std::max(worst, std::abs(reality_tsallis(rho, a, p, Mode::Exploratory).value - vn));
    }
  }
  return {worst <= kAc8Tol, fmt("max deviation from vN=%.3g", worst)};
}

Outcome ac9() {
  Rng rng(mix_seed(kSeed, 9));
  double comp = 0.0, dec = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t d_a = 2 + rng.index(2);
    const SubsystemLayout layout{d_a, 2 + rng.index(2)};
    const auto rho = random_density(layout, 1 + rng.index(layout.total()), rng);
    const auto a = random_observable(0, d_a, rng);
    const double irr = irreality(rho, a);
    comp = std::max(comp, std::abs(reality_vn(rho, a).value + irr - std::log(static_cast<double>(d_a))));
    const double local = irreality(partial_trace(rho, {0}), a);
    dec = std::max(dec, std::abs(irr - local - discord_A(rho, a)));
  }
  return {comp <= kAc9ComplementTol && dec <= kAc9DecompositionTol,
          fmt("complementarity=%.3g decomposition=%.3g", comp, dec)};
}

Outcome ac10() {
  const auto x = spin_observable(0, std::acos(-1.0) / 2.0, 0.0);
  const auto& z = z_obs();
  Rng rng(mix_seed(kSeed, 10));
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const SubsystemLayout layout{2, 2};
    const auto rho = random_density(layout, 1 + rng.index(4), rng);
    const double eps = rng.uniform();
    // Reality of Z after monitoring X, and the swapped pair.
    worst = std::max(worst, reality_vn(rho, z).value - reality_vn(monitoring(rho, x, eps), z).value);
    worst = std::max(worst, reality_vn(rho, x).value - reality_vn(monitoring(rho, z, eps), x).value);
  }
  return {worst <= kAc10Tol, fmt("max loss=%.3g over 500 (rho, eps)", worst)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria = {
      {"AC1 werner closed form", ac1, kAc1Seconds},
      {"AC2 tsallis closed form", ac2, 0.0},
      {"AC3 up-down gap surface", ac3, kAc3Seconds},
      {"AC4 axiom suite", ac4, kAc4Seconds},
      {"AC5 dilation identities", ac5, 0.0},
      {"AC6 axiom 1 flow", ac6, 0.0},
      {"AC7 sibson identity", ac7, 0.0},
      {"AC8 parameter-one limits", ac8, 0.0},
      {"AC9 complementarity", ac9, 0.0},
      {"AC10 MUB monitoring", ac10, 0.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_seconds <= 0.0 || secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s %-26s %s; %.2fs%s\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs,
                in_time ? "" : fmt(" (budget %.0fs exceeded)", c.budget_seconds).c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
