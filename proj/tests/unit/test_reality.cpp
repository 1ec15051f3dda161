#include <cmath>

#include "doctest.h"
#include "realitykit/harness.hpp"
#include "realitykit/reality.hpp"
#include "realitykit/werner.hpp"

using namespace realitykit;

namespace {

const ProjectiveObservable& z_on_a() {
  static const auto z = spin_observable(0, 0.0, 0.0);
  return z;
}

}  // namespace

TEST_CASE("Werner family through the matrix pipeline") {
  const auto& z = z_on_a();
  const auto w = werner_state(0.3);
  CHECK(reality_renyi_down(w, z, 0.25).value == doctest::Approx(0.67400418361051631986).epsilon(1e-12));
  CHECK(reality_tsallis(werner_state(0.4), z, 1.5).value ==
        doctest::Approx(0.461817129851478605).epsilon(1e-12));
  CHECK(reality_renyi_up(werner_state(0.89), z, 0.24).value ==
        doctest::Approx(0.48035156371649097043).epsilon(1e-12));
  CHECK(reality_renyi_up_dilated(werner_state(0.89), z, 0.24).value ==
        doctest::Approx(0.48035156371649097043).epsilon(1e-11));
  CHECK(reality_special(werner_state(0.5), z, RealityQuantifierSpec::max_rel()).value ==
        doctest::Approx(0.18232155679395462621).epsilon(1e-12));
}

TEST_CASE("states already real for A carry ln d_A, the singlet carries none") {
  Rng rng(2);
  const auto a = random_observable(0, 3, rng);
  const auto cq = phi_A(random_density(SubsystemLayout{3, 2}, 6, rng), a);
  CHECK(reality_vn(cq, a).value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(reality_renyi_down(cq, a, 0.5).value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(reality_renyi_up(cq, a, 0.5).value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(std::abs(reality_vn(singlet(), z_on_a()).value) < 1e-12);
  CHECK(std::abs(irreality(singlet(), z_on_a()) - std::log(2.0)) < 1e-12);
}

TEST_CASE("parameter validation by mode") {
  const auto w = werner_state(0.5);
  const auto& z = z_on_a();
  CHECK_THROWS_AS(reality_renyi_down(w, z, 3.0), AlphaOutOfRange);
  CHECK_NOTHROW(reality_renyi_down(w, z, 3.0, Mode::Exploratory));
  CHECK_FALSE(reality_renyi_down(w, z, 3.0, Mode::Exploratory).guaranteed);
  CHECK_THROWS_AS(reality_renyi_up(w, z, 1.5, Mode::Exploratory), AlphaOutOfRange);
  CHECK_THROWS_AS(reality_tsallis(w, z, 2.5), QOutOfRange);
  CHECK_THROWS_AS(reality_tsallis(w, z, -1.0, Mode::Exploratory), QOutOfRange);
  CHECK_THROWS_AS(reality_vn(w, spin_observable(2, 0.0, 0.0)), LayoutMismatch);
}

TEST_CASE("optimized quantifier: both solvers agree with the closed form") {
  Rng rng(17);
  for (int i = 0; i < 4; ++i) {
    const auto rho = random_density(SubsystemLayout{2, 2}, 1 + rng.index(4), rng);
    const auto a = random_observable(0, 2, rng);
    for (double alpha : {0.3, 0.7}) {
      const double up = reality_renyi_up(rho, a, alpha).value;
      RealityOptions qn;
      RealityOptions nm;
      nm.bar_solver = BarSolver::Simplex;
      const double bar_qn = reality_renyi_bar(rho, a, alpha, Mode::Monotone, qn).value;
      const double bar_nm = reality_renyi_bar(rho, a, alpha, Mode::Monotone, nm).value;
      CHECK(std::abs(bar_qn - up) < 1e-6);
      CHECK(std::abs(bar_nm - up) < 1e-6);
    }
  }
}

TEST_CASE("complementarity: reality plus irreality is ln d_A") {
  Rng rng(23);
  for (int i = 0; i < 20; ++i) {
    const auto rho = random_density(SubsystemLayout{3, 2}, 1 + rng.index(6), rng);
    const auto a = random_observable(0, 3, rng);
    CHECK(std::abs(reality_vn(rho, a).value + irreality(rho, a) - std::log(3.0)) < 1e-12);
  }
}

TEST_CASE("uncertainty bound on a Bell state") {
  const auto x = spin_observable(0, M_PI / 2.0, 0.0);
  const auto z = z_on_a();
  const auto b = uncertainty_bound(werner_state(1.0), x, z);
  CHECK(b.holds());
  CHECK(std::abs(b.lhs) < 1e-12);
}

TEST_CASE("second property table") {
  CHECK(table_two(Axiom::A2, RealityQuantifierSpec::min_rel()) == CellStatus::Fails);
  CHECK(table_two(Axiom::A6, RealityQuantifierSpec::tsallis(1.5)) == CellStatus::Fails);
  CHECK(table_two(Axiom::A5, RealityQuantifierSpec::renyi_down(0.5)) == CellStatus::Holds);
  CHECK(table_two(Axiom::A5, RealityQuantifierSpec::renyi_down(1.5)) == CellStatus::OutOfRange);
  CHECK(table_two(Axiom::A7, RealityQuantifierSpec::renyi_down(0.5)) == CellStatus::Open);
  CHECK(table_two(Axiom::A7, RealityQuantifierSpec::von_neumann()) == CellStatus::Holds);
}
