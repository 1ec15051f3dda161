#pragma once

// Dense Hermitian linear algebra and state/observable construction for
// small composite Hilbert spaces (total dimension up to ~64).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "realitykit/errors.hpp"

namespace realitykit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double kHermitian = 1e-12;  // entrywise, relative to max(1, max|M|)
inline constexpr double kPsdClip = 1e-10;    // eigenvalues in [-kPsdClip, 0) become 0
inline constexpr double kSupport = 1e-10;    // relative to the largest eigenvalue
inline constexpr double kTrace = 1e-12;
inline constexpr double kTraceInput = 1e-8;  // accepted trace error before renormalizing
}  // namespace tol

/// Ordered subsystem dimensions of a composite space, first slot most
/// significant in the Kronecker ordering.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<std::size_t> dims);
  SubsystemLayout(std::initializer_list<std::size_t> dims);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t slot) const;
  std::size_t total() const noexcept;

  SubsystemLayout append(std::size_t d) const;
  SubsystemLayout concat(const SubsystemLayout& other) const;
  SubsystemLayout without(std::size_t slot) const;
  SubsystemLayout select(std::span<const std::size_t> slots) const;

  friend bool operator==(const SubsystemLayout&, const SubsystemLayout&) = default;

 private:
  std::vector<std::size_t> dims_;
};

// ---------------------------------------------------------------------------
// spectral calculus

/// Eigen-decomposition with eigenvalues sorted in descending order.
struct Spectrum {
  RealVector values;
  ComplexMatrix vectors;  // columns are eigenvectors
};

Spectrum eig_hermitian(const ComplexMatrix& m);

/// Absolute threshold below which an eigenvalue of this spectrum counts as 0.
double support_threshold(const RealVector& values);

enum class ZeroHandling {
  Suppress,  // eigenvalues in the kernel contribute 0 (0 ln 0 = 0, 0^p = 0)
  Evaluate,  // f is evaluated at every eigenvalue; non-finite results throw
};

ComplexMatrix matrix_function(const Spectrum& spectrum, const std::function<double(double)>& f,
                              ZeroHandling zeros = ZeroHandling::Suppress);
ComplexMatrix matrix_function(const ComplexMatrix& m, const std::function<double(double)>& f,
                              ZeroHandling zeros = ZeroHandling::Suppress);

/// m^p on the support of m. For p < 0 this is the pseudo-inverse power.
ComplexMatrix spectral_power(const ComplexMatrix& m, double p);
ComplexMatrix spectral_power(const Spectrum& spectrum, double p);

ComplexMatrix support_projector(const ComplexMatrix& m);
ComplexMatrix support_projector(const Spectrum& spectrum);

/// Largest eigenvalue magnitude of a Hermitian matrix.
double operator_norm(const ComplexMatrix& m);

// ---------------------------------------------------------------------------
// tensor structure

ComplexMatrix identity(std::size_t n);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemLayout& layout,
                            std::span<const std::size_t> keep);
/// Reorders subsystems so that slot `order[k]` of the input becomes slot k.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SubsystemLayout& layout,
                                 std::span<const std::size_t> order);
/// 1 ⊗ ... ⊗ op ⊗ ... ⊗ 1 with op acting on `slot`.
ComplexMatrix embed_local(const ComplexMatrix& op, const SubsystemLayout& layout, std::size_t slot);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::kHermitian);

// ---------------------------------------------------------------------------
// states

class DensityOperator {
 public:
  /// Validates Hermiticity, trace and positivity; clips eigenvalues in
  /// [-1e-10, 0) and renormalizes the trace.
  static DensityOperator from_matrix(const ComplexMatrix& m, SubsystemLayout layout);
  static DensityOperator from_pure(const ComplexVector& psi, SubsystemLayout layout);
  static DensityOperator maximally_mixed(SubsystemLayout layout);
  /// For outputs of trace-preserving positive maps applied to valid states:
  /// only removes rounding asymmetry and trace drift.
  static DensityOperator trusted(const ComplexMatrix& m, SubsystemLayout layout);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const SubsystemLayout& layout() const noexcept { return layout_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  double purity() const;

 private:
  DensityOperator(ComplexMatrix m, SubsystemLayout layout)
      : matrix_(std::move(m)), layout_(std::move(layout)) {}

  ComplexMatrix matrix_;
  SubsystemLayout layout_;
};

DensityOperator kron(const DensityOperator& a, const DensityOperator& b);
DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> keep);
DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<std::size_t> keep);
DensityOperator reorder(const DensityOperator& rho, std::span<const std::size_t> order);

// ---------------------------------------------------------------------------
// observables

/// Nondegenerate observable given by d rank-1 orthogonal projectors on one slot.
class ProjectiveObservable {
 public:
  /// Columns of `basis` are the eigenvectors |a_i>; must be unitary.
  static ProjectiveObservable from_basis(std::size_t slot, const ComplexMatrix& basis,
                                         std::vector<double> eigenvalues = {});
  static ProjectiveObservable from_projectors(std::size_t slot,
                                              const std::vector<ComplexMatrix>& projectors,
                                              std::vector<double> eigenvalues = {});
  static ProjectiveObservable computational(std::size_t slot, std::size_t dim);

  std::size_t subsystem() const noexcept { return slot_; }
  std::size_t dim() const noexcept { return projectors_.size(); }
  const std::vector<ComplexMatrix>& projectors() const noexcept { return projectors_; }
  const ComplexMatrix& basis() const noexcept { return basis_; }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

  ProjectiveObservable on_subsystem(std::size_t slot) const;

 private:
  ProjectiveObservable() = default;

  std::size_t slot_ = 0;
  ComplexMatrix basis_;
  std::vector<ComplexMatrix> projectors_;
  std::vector<double> eigenvalues_;
};

/// Rank-1 projectors (1 ± u.sigma)/2 with u = (cos t sin p, sin t sin p, cos p).
std::pair<ComplexMatrix, ComplexMatrix> spin_projectors(double theta, double phi);
ProjectiveObservable spin_observable(std::size_t slot, double theta, double phi);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// ---------------------------------------------------------------------------
// ensembles

class Ensemble {
 public:
  Ensemble(std::vector<double> weights, std::vector<DensityOperator> states);

  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<DensityOperator>& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return weights_.size(); }
  DensityOperator average() const;

 private:
  std::vector<double> weights_;
  std::vector<DensityOperator> states_;
};

// ---------------------------------------------------------------------------
// random generation

/// Deterministic 64-bit stream; one owner per stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double normal();
  Complex complex_normal();
  std::size_t index(std::size_t n);  // uniform in [0, n)
  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; stable across platforms.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);
std::uint64_t seed_from_tag(std::uint64_t base, std::string_view tag);

/// Ginibre construction G G† / Tr(G G†) with `rank` columns.
DensityOperator random_density(const SubsystemLayout& layout, std::size_t rank, Rng& rng);
DensityOperator random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);
DensityOperator haar_pure(const SubsystemLayout& layout, Rng& rng);
DensityOperator haar_pure(std::size_t dim, std::uint64_t seed);
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);
ProjectiveObservable random_observable(std::size_t slot, std::size_t dim, Rng& rng);

}  // namespace realitykit
