#include <cmath>

#include "doctest.h"
#include "realitykit/channels.hpp"
#include "realitykit/harness.hpp"

using namespace realitykit;

TEST_CASE("phi_A dephases the observable's slot only") {
  const auto bell = werner_state(1.0);
  const auto z = spin_observable(0, 0.0, 0.0);
  const auto dephased = phi_A(bell, z);
  // Singlet: phi keeps |01><01| and |10><10| with weight 1/2 each.
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(1, 1) = expected(2, 2) = 0.5;
  CHECK(max_abs_diff(dephased.matrix(), expected) < 1e-15);
}

TEST_CASE("phi_A is idempotent and trace preserving") {
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto rho = random_density(SubsystemLayout{3, 2}, 1 + rng.index(6), rng);
    const auto a = random_observable(0, 3, rng);
    const auto once = phi_A(rho, a);
    CHECK(max_abs_diff(phi_A(once, a).matrix(), once.matrix()) < 1e-13);
    CHECK(std::abs(once.matrix().trace().real() - 1.0) < 1e-13);
  }
}

TEST_CASE("monitoring interpolates and composes") {
  Rng rng(5);
  const auto rho = random_density(SubsystemLayout{2, 2}, 4, rng);
  const auto a = random_observable(0, 2, rng);
  CHECK(max_abs_diff(monitoring(rho, a, 0.0).matrix(), rho.matrix()) < 1e-15);
  CHECK(max_abs_diff(monitoring(rho, a, 1.0).matrix(), phi_A(rho, a).matrix()) < 1e-15);
  // M^e2 ∘ M^e1 = M^{e1 + e2 - e1 e2}.
  const double e1 = 0.3, e2 = 0.6;
  const auto twice = monitoring(monitoring(rho, a, e1), a, e2);
  CHECK(max_abs_diff(twice.matrix(), monitoring(rho, a, e1 + e2 - e1 * e2).matrix()) < 1e-14);
  CHECK_THROWS_AS(monitoring(rho, a, 1.5), EpsilonOutOfRange);
}

TEST_CASE("shift operator cycles the basis") {
  const ComplexMatrix t = shift_operator(3, 1);
  CHECK(max_abs_diff(t * t * t, identity(3)) < 1e-15);
  CHECK(std::abs(t(1, 0) - Complex(1.0)) < 1e-15);
}

TEST_CASE("Stinespring dilation reproduces phi_A and fixes A-real states") {
  Rng rng(19);
  for (std::size_t da : {2u, 3u}) {
    const auto rho = random_density(SubsystemLayout{da, 2}, 2 * da, rng);
    const auto a = random_observable(0, da, rng);
    const auto u = stinespring_unitary(a, rho.layout());
    CHECK(max_abs_diff(u.matrix * u.matrix.adjoint(), identity(u.matrix.rows())) < 1e-13);
    const auto upsilon = dilate(rho, u);
    CHECK(upsilon.layout() == SubsystemLayout{da, 2, da});
    CHECK(max_abs_diff(partial_trace(upsilon, {0, 1}).matrix(), phi_A(rho, a).matrix()) < 1e-13);
    // U (phi(rho) ⊗ 1/d) U† = phi(rho) ⊗ 1/d.
    const auto fixed = attach(phi_A(rho, a), DensityOperator::maximally_mixed(SubsystemLayout{da}));
    const ComplexMatrix image = u.matrix * fixed.matrix() * u.matrix.adjoint();
    CHECK(max_abs_diff(image, fixed.matrix()) < 1e-13);
  }
}

TEST_CASE("flagging builds an orthogonally labelled mixture") {
  const auto s = singlet();
  const Ensemble e({0.5, 0.5}, {werner_state(0.0), s});
  const auto flagged = flag(e);
  CHECK(flagged.layout().size() == 3);
  CHECK(max_abs_diff(partial_trace(flagged, {0, 1}).matrix(), e.average().matrix()) < 1e-15);
}

TEST_CASE("discarding the observable's subsystem is refused") {
  const auto rho = werner_state(0.5);
  const auto z = spin_observable(0, 0.0, 0.0);
  CHECK_THROWS_AS(discard(rho, 0, z), CannotDiscardObservableSubsystem);
  CHECK(discard(rho, 1, z).layout() == SubsystemLayout{2});
}
