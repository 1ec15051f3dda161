#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "realitykit/werner.hpp"

using namespace realitykit;

// Frozen oracles: the Werner matrix pushed through 30-digit matrix functions
// in tests/oracles/generate.py, with no use of the closed forms.
TEST_CASE("down quantifier closed form against matrix oracles") {
  CHECK(werner::renyi_down(0.3, 0.25) == doctest::Approx(0.67400418361051631986).epsilon(1e-13));
  CHECK(werner::renyi_down(0.7, 0.5) == doctest::Approx(0.4878581545044970986).epsilon(1e-13));
  CHECK(werner::renyi_down(0.5, 0.125) == doctest::Approx(0.66609587839008212121).epsilon(1e-13));
}

TEST_CASE("Tsallis closed form against matrix oracles") {
  CHECK(werner::tsallis(0.4, 1.5) == doctest::Approx(0.461817129851478605).epsilon(1e-13));
  CHECK(werner::tsallis(0.9, 0.5) == doctest::Approx(0.32447538231102574394).epsilon(1e-13));
  CHECK(werner::tsallis(0.6, 2.0) == doctest::Approx(0.275).epsilon(1e-13));
}

TEST_CASE("up quantifier: the derived chi matches the matrix oracle, the printed one does not") {
  CHECK(werner::renyi_up_derived(0.89, 0.24) == doctest::Approx(0.48035156371649097043).epsilon(1e-13));
  CHECK(werner::renyi_up_derived(0.5, 0.5) == doctest::Approx(0.59278360071670832538).epsilon(1e-13));
  CHECK(std::abs(werner::renyi_up_printed(0.5, 0.5) - 0.59278360071670832538) > 1e-3);
}

TEST_CASE("endpoints") {
  for (double a : {0.1, 0.5, 0.9}) {
    CHECK(werner::renyi_down(0.0, a) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(std::abs(werner::renyi_down(1.0, a)) < 1e-14);
    CHECK(werner::renyi_up_derived(0.0, a) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(std::abs(werner::renyi_up_derived(1.0, a)) < 1e-14);
  }
  for (double q : {0.5, 1.5, 2.0}) {
    CHECK(werner::tsallis(0.0, q) == doctest::Approx(werner::ln_q(2.0, q)).epsilon(1e-14));
    CHECK(std::abs(werner::tsallis(1.0, q)) < 1e-14);
  }
  CHECK(werner::renyi_down_alpha0(0.5) == doctest::Approx(std::log(2.0)));
  CHECK(werner::renyi_down_alpha0(1.0) == 0.0);
  CHECK(werner::renyi_down_alpha_inf(0.5) == doctest::Approx(0.18232155679395462621).epsilon(1e-14));
}

TEST_CASE("parameter one limits") {
  const double vn = werner::renyi_down(0.6, 1.0 - 1e-7);
  CHECK(std::abs(werner::renyi_down(0.6, 1.0 + 1e-7) - vn) < 1e-6);
  CHECK(std::abs(werner::tsallis(0.6, 1.0 - 1e-7) - vn) < 1e-6);
  CHECK(werner::ln_q(3.0, 1.0) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
  CHECK(werner::ln_q(4.0, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
}
