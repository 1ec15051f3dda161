#include <cmath>
#include <vector>

#include "doctest.h"
#include "realitykit/channels.hpp"
#include "realitykit/divergences.hpp"
#include "realitykit/harness.hpp"

using namespace realitykit;

namespace {

// Frozen 30-digit values from tests/oracles/generate.py.
ComplexMatrix oracle_rho() {
  ComplexMatrix m(2, 2);
  m << 0.7, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.3;
  return m;
}

ComplexMatrix oracle_sigma() {
  ComplexMatrix m(2, 2);
  m << 0.4, -0.1, -0.1, 0.6;
  return m;
}

ComplexMatrix diag(const std::vector<double>& p) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
  return m;
}

// Classical Renyi divergence by a scalar loop.
double classical_renyi(const std::vector<double>& p, const std::vector<double>& q, double a) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) s += std::pow(p[i], a) * std::pow(q[i], 1.0 - a);
  }
  return std::log(s) / (a - 1.0);
}

}  // namespace

TEST_CASE("non-commuting qubit pair against frozen oracles") {
  const ComplexMatrix r = oracle_rho();
  const ComplexMatrix s = oracle_sigma();
  CHECK(divergence(r, s, DivergenceSpec::von_neumann()) == doctest::Approx(0.39891951032250838385).epsilon(1e-13));
  CHECK(divergence(r, s, DivergenceSpec::renyi(0.5)) == doctest::Approx(0.21885318311775066637).epsilon(1e-13));
  CHECK(divergence(r, s, DivergenceSpec::renyi(2.0)) == doctest::Approx(0.60217540235421850282).epsilon(1e-13));
  CHECK(divergence(r, s, DivergenceSpec::sandwiched(0.5)) == doctest::Approx(0.21857086964534553703).epsilon(1e-13));
  CHECK(divergence(r, s, DivergenceSpec::sandwiched(2.0)) == doctest::Approx(0.60120269858989434387).epsilon(1e-13));
  CHECK(divergence(r, s, DivergenceSpec::collision()) == doctest::Approx(0.60120269858989434387).epsilon(1e-13));
  CHECK(divergence(r, s, DivergenceSpec::tsallis(1.5)) == doctest::Approx(0.59813314224204636098).epsilon(1e-13));
  CHECK(std::abs(divergence(r, s, DivergenceSpec::min_rel())) < 1e-14);
  CHECK(divergence(r, s, DivergenceSpec::max_rel()) == doctest::Approx(0.79138908968913077604).epsilon(1e-13));
}

TEST_CASE("commuting pairs reduce to the classical formula") {
  const std::vector<double> p{0.5, 0.3, 0.2, 0.0};
  const std::vector<double> q{0.1, 0.2, 0.3, 0.4};
  for (double a : {0.2, 0.5, 0.9, 1.5, 3.0}) {
    const double classical = classical_renyi(p, q, a);
    CHECK(std::abs(divergence(diag(p), diag(q), DivergenceSpec::renyi(a)) - classical) < 1e-13);
    CHECK(std::abs(divergence(diag(p), diag(q), DivergenceSpec::sandwiched(a)) - classical) < 1e-13);
  }
}

TEST_CASE("parameter one routes to von Neumann") {
  const ComplexMatrix r = oracle_rho();
  const ComplexMatrix s = oracle_sigma();
  const double vn = divergence(r, s, DivergenceSpec::von_neumann());
  CHECK(divergence(r, s, DivergenceSpec::renyi(1.0)) == doctest::Approx(vn).epsilon(1e-14));
  CHECK(std::abs(divergence(r, s, DivergenceSpec::renyi(1.0 + 1e-5)) - vn) < 1e-4);
  CHECK(std::abs(divergence(r, s, DivergenceSpec::tsallis(1.0 - 1e-5)) - vn) < 1e-4);
}

TEST_CASE("kernel condition and policies") {
  const ComplexMatrix r = identity(2) / 2.0;
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(0, 0) = 1.0;
  CHECK_FALSE(kernel_condition(r, s));
  CHECK_THROWS_AS(divergence(r, s, DivergenceSpec::von_neumann()), KernelViolation);
  CHECK(std::isinf(divergence(r, s, DivergenceSpec::von_neumann(), KernelPolicy::Extended)));
  // Petz with alpha < 1 stays finite without the kernel condition.
  CHECK(std::isfinite(divergence(r, s, DivergenceSpec::renyi(0.5))));
}

TEST_CASE("parameter validation") {
  const ComplexMatrix r = identity(2) / 2.0;
  CHECK_THROWS_AS(divergence(r, r, DivergenceSpec::renyi(-1.0)), AlphaOutOfRange);
  CHECK_THROWS_AS(divergence(r, r, DivergenceSpec::tsallis(0.0)), QOutOfRange);
}

TEST_CASE("entropies") {
  const ComplexMatrix m = identity(4) / 4.0;
  CHECK(entropy(m) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(entropy(m, EntropySpec::renyi(2.0)) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(entropy(m, EntropySpec::tsallis(2.0)) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(ln_q(2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(shannon({0.5, 0.5, 0.0}) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("conditional information of a product with a maximally mixed factor") {
  Rng rng(4);
  const auto rho = random_density(SubsystemLayout{2}, 2, rng);
  const auto omega = attach(rho, DensityOperator::maximally_mixed(SubsystemLayout{3}));
  // D(rho ⊗ 1/3 || rho ⊗ 1/3) = 0.
  CHECK(std::abs(conditional_information(omega, 1, DivergenceSpec::von_neumann())) < 1e-12);
}

TEST_CASE("Sibson closed form agrees with direct minimization") {
  Rng rng(8);
  for (double a : {0.2, 0.5, 0.8}) {
    const auto rho = random_density(SubsystemLayout{2, 2}, 3, rng);
    const double closed = sibson_closed_form(rho, 1, a);
    const auto numeric = sibson_numeric(rho, 1, a, 99);
    CHECK(std::abs(closed - numeric.value) < 1e-6);
  }
}

TEST_CASE("discord vanishes on classical-quantum states and is ln 2 on a Bell state") {
  const auto z = spin_observable(0, 0.0, 0.0);
  CHECK(std::abs(discord_A(werner_state(1.0), z) - std::log(2.0)) < 1e-12);
  const auto cq = phi_A(werner_state(0.7), z);
  CHECK(std::abs(discord_A(cq, z)) < 1e-12);
}

TEST_CASE("property table lookups") {
  CHECK(table_one(Property::Additivity, Family::VonNeumann).holds);
  CHECK_FALSE(table_one(Property::Additivity, Family::Tsallis).holds);
  CHECK(table_one(Property::DataProcessing, Family::Renyi).valid_at(1.5));
  CHECK_FALSE(table_one(Property::DataProcessing, Family::Renyi).valid_at(2.5));
  CHECK(table_one(Property::DataProcessing, Family::Sandwiched).valid_at(0.5));
  CHECK_FALSE(table_one(Property::DataProcessing, Family::Sandwiched).valid_at(0.4));
}
