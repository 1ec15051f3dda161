#include <cmath>

#include "doctest.h"
#include "realitykit/qstate.hpp"

using namespace realitykit;

namespace {

ComplexMatrix ket_bra(std::size_t d, std::size_t i, std::size_t j) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("layout arithmetic") {
  const SubsystemLayout l{2, 3, 4};
  CHECK(l.total() == 24);
  CHECK(l.without(1) == SubsystemLayout{2, 4});
  CHECK(l.append(5).dims().back() == 5);
  CHECK_THROWS_AS(l.dim(3), LayoutMismatch);
}

TEST_CASE("kron and partial trace are inverse on products") {
  Rng rng(1);
  const auto a = random_density(SubsystemLayout{2}, 2, rng);
  const auto b = random_density(SubsystemLayout{3}, 3, rng);
  const auto ab = kron(a, b);
  CHECK(ab.layout() == SubsystemLayout{2, 3});
  CHECK(max_abs_diff(partial_trace(ab, {0}).matrix(), a.matrix()) < 1e-14);
  CHECK(max_abs_diff(partial_trace(ab, {1}).matrix(), b.matrix()) < 1e-14);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  ComplexVector psi = ComplexVector::Zero(4);
  psi[0] = psi[3] = 1.0 / std::sqrt(2.0);
  const auto rho = DensityOperator::from_pure(psi, SubsystemLayout{2, 2});
  CHECK(max_abs_diff(partial_trace(rho, {1}).matrix(), identity(2) / 2.0) < 1e-15);
}

TEST_CASE("permutation swaps tensor factors") {
  const ComplexMatrix a = ket_bra(2, 0, 1);
  const ComplexMatrix b = ket_bra(3, 2, 0);
  const std::size_t order[] = {1, 0};
  const ComplexMatrix swapped = permute_subsystems(kron(a, b), SubsystemLayout{2, 3}, order);
  CHECK(max_abs_diff(swapped, kron(b, a)) < 1e-15);
}

TEST_CASE("embed_local places an operator on one slot") {
  const ComplexMatrix z = pauli_z();
  const ComplexMatrix e = embed_local(z, SubsystemLayout{3, 2}, 1);
  CHECK(max_abs_diff(e, kron(identity(3), z)) < 1e-15);
}

TEST_CASE("density validation") {
  ComplexMatrix m = identity(2) / 2.0;
  m(0, 1) = 0.3;  // not Hermitian
  CHECK_THROWS_AS(DensityOperator::from_matrix(m, SubsystemLayout{2}), NotHermitian);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator::from_matrix(neg, SubsystemLayout{2}), InvalidState);
  CHECK_THROWS_AS(DensityOperator::from_matrix(identity(4) / 4.0, SubsystemLayout{2}), LayoutMismatch);
}

TEST_CASE("spectral calculus suppresses the kernel") {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  // 0^p = 0 on the kernel even for negative p.
  CHECK(max_abs_diff(spectral_power(p, -0.5), p) < 1e-15);
  CHECK(max_abs_diff(support_projector(0.5 * p), p) < 1e-15);
}

TEST_CASE("random states have the requested rank and unit trace") {
  Rng rng(7);
  for (std::size_t r = 1; r <= 4; ++r) {
    const auto rho = random_density(SubsystemLayout{4}, r, rng);
    const auto s = eig_hermitian(rho.matrix());
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < s.values.size(); ++i) rank += s.values[i] > 1e-10 ? 1 : 0;
    CHECK(rank == r);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
  }
}

TEST_CASE("haar unitaries are unitary") {
  Rng rng(3);
  const ComplexMatrix u = haar_unitary(5, rng);
  CHECK(max_abs_diff(u * u.adjoint(), identity(5)) < 1e-13);
}

TEST_CASE("seeding is deterministic and tag sensitive") {
  CHECK(seed_from_tag(1, "abc") == seed_from_tag(1, "abc"));
  CHECK(seed_from_tag(1, "abc") != seed_from_tag(1, "abd"));
  CHECK(mix_seed(5, 0) != mix_seed(5, 1));
  Rng a(42), b(42);
  CHECK(a.uniform() == b.uniform());
}

TEST_CASE("observables") {
  const auto z = spin_observable(0, 0.0, 0.0);
  CHECK(z.dim() == 2);
  CHECK(max_abs_diff(z.projectors()[0] + z.projectors()[1], identity(2)) < 1e-15);
  const auto x = spin_observable(0, 0.0, M_PI / 2.0);
  // sigma_x eigenprojectors are (1 ± sigma_x) / 2.
  const ComplexMatrix px = x.projectors()[0] - x.projectors()[1];
  CHECK(max_abs_diff(px, pauli_x()) < 1e-14);
  std::vector<ComplexMatrix> bad{identity(2), identity(2)};
  CHECK_THROWS_AS(ProjectiveObservable::from_projectors(0, bad), InvalidObservable);
}

TEST_CASE("ensembles average and validate") {
  const auto a = DensityOperator::maximally_mixed(SubsystemLayout{2});
  const Ensemble e({0.25, 0.75}, {a, a});
  CHECK(max_abs_diff(e.average().matrix(), a.matrix()) < 1e-15);
  CHECK_THROWS_AS(Ensemble({0.5, 0.6}, {a, a}), InvalidEnsemble);
}
