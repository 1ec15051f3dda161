#pragma once

#include <cstddef>

#include "realitykit/qstate.hpp"

namespace realitykit {

/// Endpoint unitary U = sum_k P_k ⊗ T^k on S ⊗ E, with P_k = A_k on the
/// observable's slot and T the cyclic shift |e_i> -> |e_{i+1 mod d_E}>.
struct DilationUnitary {
  ComplexMatrix matrix;
  ProjectiveObservable observable;
  SubsystemLayout system_layout;
  std::size_t env_dim = 0;  // always equals the observable's dimension

  SubsystemLayout joint_layout() const { return system_layout.append(env_dim); }
};

/// Unrevealed measurement sum_i (A_i ⊗ 1) M (A_i ⊗ 1) on an arbitrary operator.
/// Linear, so it also applies to non-normalized inputs such as rho^alpha.
ComplexMatrix phi_matrix(const ComplexMatrix& m, const SubsystemLayout& layout,
                         const ProjectiveObservable& a);
DensityOperator phi_A(const DensityOperator& rho, const ProjectiveObservable& a);

/// (1 - eps) rho + eps phi_A(rho), eps in [0, 1].
DensityOperator monitoring(const DensityOperator& rho, const ProjectiveObservable& a, double eps);

/// k-th power of the d×d cyclic shift.
ComplexMatrix shift_operator(std::size_t d, std::size_t k);

DilationUnitary stinespring_unitary(const ProjectiveObservable& a, const SubsystemLayout& layout);

/// U (rho ⊗ |e0><e0|) U†, environment appended as the last slot.
DensityOperator dilate(const DensityOperator& rho, const DilationUnitary& u);

/// sum_i p_i rho_i ⊗ |i><i| with the flag register appended as the last slot.
DensityOperator flag(const Ensemble& ensemble);

DensityOperator attach(const DensityOperator& rho, const DensityOperator& omega);

/// Traces out `slot`; refuses the slot the observable acts on.
DensityOperator discard(const DensityOperator& rho, std::size_t slot, const ProjectiveObservable& a);
DensityOperator discard(const DensityOperator& rho, std::size_t slot);

}  // namespace realitykit
