#include "realitykit/channels.hpp"

#include <string>
#include <vector>

namespace realitykit {

namespace {

void require_observable_fits(const SubsystemLayout& layout, const ProjectiveObservable& a) {
  if (a.subsystem() >= layout.size()) {
    throw LayoutMismatch("observable slot " + std::to_string(a.subsystem()) +
                         " outside layout of size " + std::to_string(layout.size()));
  }
  if (layout.dim(a.subsystem()) != a.dim()) {
    throw LayoutMismatch("observable dimension " + std::to_string(a.dim()) +
                         " does not match slot dimension " +
                         std::to_string(layout.dim(a.subsystem())));
  }
}

}  // namespace

ComplexMatrix phi_matrix(const ComplexMatrix& m, const SubsystemLayout& layout,
                         const ProjectiveObservable& a) {
  require_observable_fits(layout, a);
  if (static_cast<std::size_t>(m.rows()) != layout.total() || m.rows() != m.cols()) {
    throw LayoutMismatch("phi_A: operator does not match layout");
  }
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (const auto& projector : a.projectors()) {
    const ComplexMatrix p = embed_local(projector, layout, a.subsystem());
    out.noalias() += p * m * p;
  }
  return out;
}

DensityOperator phi_A(const DensityOperator& rho, const ProjectiveObservable& a) {
  return DensityOperator::trusted(phi_matrix(rho.matrix(), rho.layout(), a), rho.layout());
}

DensityOperator monitoring(const DensityOperator& rho, const ProjectiveObservable& a, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw EpsilonOutOfRange("eps = " + std::to_string(eps) + " outside [0, 1]");
  }
  if (eps == 0.0) {
    require_observable_fits(rho.layout(), a);
    return rho;
  }
  const ComplexMatrix measured = phi_matrix(rho.matrix(), rho.layout(), a);
  if (eps == 1.0) return DensityOperator::trusted(measured, rho.layout());
  return DensityOperator::trusted((1.0 - eps) * rho.matrix() + eps * measured, rho.layout());
}

ComplexMatrix shift_operator(std::size_t d, std::size_t k) {
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix t = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < d; ++i) {
    t(static_cast<Eigen::Index>((i + k) % d), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return t;
}

DilationUnitary stinespring_unitary(const ProjectiveObservable& a, const SubsystemLayout& layout) {
  require_observable_fits(layout, a);
  const std::size_t d_e = a.dim();
  const auto n = static_cast<Eigen::Index>(layout.total() * d_e);
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < d_e; ++k) {
    const ComplexMatrix p = embed_local(a.projectors()[k], layout, a.subsystem());
    u += kron(p, shift_operator(d_e, k));
  }
  return DilationUnitary{std::move(u), a, layout, d_e};
}

DensityOperator dilate(const DensityOperator& rho, const DilationUnitary& u) {
  if (!(rho.layout() == u.system_layout)) {
    throw LayoutMismatch("dilate: state layout differs from the unitary's system layout");
  }
  const auto d_e = static_cast<Eigen::Index>(u.env_dim);
  ComplexMatrix e0 = ComplexMatrix::Zero(d_e, d_e);
  e0(0, 0) = 1.0;
  const ComplexMatrix joint = kron(rho.matrix(), e0);
  return DensityOperator::trusted(u.matrix * joint * u.matrix.adjoint(), u.joint_layout());
}

DensityOperator flag(const Ensemble& ensemble) {
  const std::size_t n = ensemble.size();
  const auto& first = ensemble.states().front();
  const auto dim = static_cast<Eigen::Index>(first.dim() * n);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix label = ComplexMatrix::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    label(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    out += ensemble.weights()[i] * kron(ensemble.states()[i].matrix(), label);
  }
  return DensityOperator::trusted(out, first.layout().append(n));
}

DensityOperator attach(const DensityOperator& rho, const DensityOperator& omega) {
  return kron(rho, omega);
}

DensityOperator discard(const DensityOperator& rho, std::size_t slot) {
  const auto& layout = rho.layout();
  layout.dim(slot);
  if (layout.size() < 2) throw LayoutMismatch("cannot discard the only subsystem");
  std::vector<std::size_t> keep;
  for (std::size_t s = 0; s < layout.size(); ++s) {
    if (s != slot) keep.push_back(s);
  }
  return partial_trace(rho, keep);
}

DensityOperator discard(const DensityOperator& rho, std::size_t slot, const ProjectiveObservable& a) {
  if (slot == a.subsystem()) {
    throw CannotDiscardObservableSubsystem("slot " + std::to_string(slot) +
                                           " carries the observable");
  }
  return discard(rho, slot);
}

}  // namespace realitykit
