#include "realitykit/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace realitykit {

namespace {

double hermitian_scale(const ComplexMatrix& m) {
  return std::max(1.0, m.cwiseAbs().maxCoeff());
}

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
  return strides;
}

void require_square(const ComplexMatrix& m, const char* where) {
  if (m.rows() != m.cols()) throw LayoutMismatch(std::string(where) + ": matrix is not square");
}

void require_layout(const ComplexMatrix& m, const SubsystemLayout& layout, const char* where) {
  require_square(m, where);
  if (static_cast<std::size_t>(m.rows()) != layout.total()) {
    throw LayoutMismatch(std::string(where) + ": matrix dimension " + std::to_string(m.rows()) +
                         " != layout total " + std::to_string(layout.total()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SubsystemLayout

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  for (auto d : dims_) {
    if (d == 0) throw LayoutMismatch("subsystem dimension must be positive");
  }
}

SubsystemLayout::SubsystemLayout(std::initializer_list<std::size_t> dims)
    : SubsystemLayout(std::vector<std::size_t>(dims)) {}

std::size_t SubsystemLayout::dim(std::size_t slot) const {
  if (slot >= dims_.size()) {
    throw LayoutMismatch("slot " + std::to_string(slot) + " outside layout of size " +
                         std::to_string(dims_.size()));
  }
  return dims_[slot];
}

std::size_t SubsystemLayout::total() const noexcept {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

SubsystemLayout SubsystemLayout::append(std::size_t d) const {
  auto dims = dims_;
  dims.push_back(d);
  return SubsystemLayout(std::move(dims));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  auto dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return SubsystemLayout(std::move(dims));
}

SubsystemLayout SubsystemLayout::without(std::size_t slot) const {
  dim(slot);
  auto dims = dims_;
  dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(slot));
  return SubsystemLayout(std::move(dims));
}

SubsystemLayout SubsystemLayout::select(std::span<const std::size_t> slots) const {
  std::vector<std::size_t> dims;
  dims.reserve(slots.size());
  for (auto s : slots) dims.push_back(dim(s));
  return SubsystemLayout(std::move(dims));
}

// ---------------------------------------------------------------------------
// spectral calculus

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance * hermitian_scale(m);
}

Spectrum eig_hermitian(const ComplexMatrix& m) {
  require_square(m, "eig_hermitian");
  if (!is_hermitian(m)) {
    throw NotHermitian("max |M - M^dagger| = " +
                       std::to_string((m - m.adjoint()).cwiseAbs().maxCoeff()));
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw DomainError("eigen-solver did not converge");
  // Eigen sorts ascending.
  Spectrum out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

double support_threshold(const RealVector& values) {
  if (values.size() == 0) return 0.0;
  return tol::kSupport * values.cwiseAbs().maxCoeff();
}

ComplexMatrix matrix_function(const Spectrum& spectrum, const std::function<double(double)>& f,
                              ZeroHandling zeros) {
  const auto n = spectrum.values.size();
  const double cutoff = support_threshold(spectrum.values);
  RealVector mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double x = spectrum.values[i];
    if (x < 0.0 && x >= -std::max(cutoff, tol::kPsdClip)) x = 0.0;
    if (zeros == ZeroHandling::Suppress && std::abs(x) <= cutoff) {
      mapped[i] = 0.0;
      continue;
    }
    const double y = f(x);
    if (!std::isfinite(y)) {
      throw DomainError("matrix function undefined at eigenvalue " + std::to_string(x));
    }
    mapped[i] = y;
  }
  return spectrum.vectors * mapped.asDiagonal() * spectrum.vectors.adjoint();
}

ComplexMatrix matrix_function(const ComplexMatrix& m, const std::function<double(double)>& f,
                              ZeroHandling zeros) {
  return matrix_function(eig_hermitian(m), f, zeros);
}

ComplexMatrix spectral_power(const Spectrum& spectrum, double p) {
  return matrix_function(spectrum, [p](double x) { return std::pow(x, p); });
}

ComplexMatrix spectral_power(const ComplexMatrix& m, double p) {
  return spectral_power(eig_hermitian(m), p);
}

ComplexMatrix support_projector(const Spectrum& spectrum) {
  return matrix_function(spectrum, [](double x) { return x > 0.0 ? 1.0 : 0.0; });
}

ComplexMatrix support_projector(const ComplexMatrix& m) {
  return support_projector(eig_hermitian(m));
}

double operator_norm(const ComplexMatrix& m) {
  return eig_hermitian(m).values.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// tensor structure

ComplexMatrix identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return ComplexMatrix::Identity(k, k);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemLayout& layout,
                            std::span<const std::size_t> keep) {
  require_layout(m, layout, "partial_trace");
  std::vector<bool> kept(layout.size(), false);
  for (auto s : keep) {
    layout.dim(s);
    if (kept[s]) throw LayoutMismatch("partial_trace: repeated slot");
    kept[s] = true;
  }
  const auto& dims = layout.dims();
  const auto strides = strides_of(dims);

  // Kept slots stay in layout order.
  std::size_t kept_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (kept[s]) kept_dim *= dims[s];
  }
  const std::size_t n = layout.total();
  std::vector<std::size_t> kept_index(n), traced_index(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = 0, t = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      const std::size_t digit = (i / strides[s]) % dims[s];
      if (kept[s]) {
        k = k * dims[s] + digit;
      } else {
        t = t * dims[s] + digit;
      }
    }
    kept_index[i] = k;
    traced_index[i] = t;
  }

  const auto kd = static_cast<Eigen::Index>(kept_dim);
  ComplexMatrix out = ComplexMatrix::Zero(kd, kd);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (traced_index[i] == traced_index[j]) {
        out(static_cast<Eigen::Index>(kept_index[i]), static_cast<Eigen::Index>(kept_index[j])) +=
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SubsystemLayout& layout,
                                 std::span<const std::size_t> order) {
  require_layout(m, layout, "permute_subsystems");
  if (order.size() != layout.size()) throw LayoutMismatch("permutation size mismatch");
  std::vector<bool> seen(layout.size(), false);
  for (auto s : order) {
    layout.dim(s);
    if (seen[s]) throw LayoutMismatch("permutation repeats a slot");
    seen[s] = true;
  }
  const auto& dims = layout.dims();
  const auto strides = strides_of(dims);
  const auto new_layout = layout.select(order);
  const auto new_strides = strides_of(new_layout.dims());

  const std::size_t n = layout.total();
  std::vector<Eigen::Index> target(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t t = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const std::size_t digit = (i / strides[order[k]]) % dims[order[k]];
      t += digit * new_strides[k];
    }
    target[i] = static_cast<Eigen::Index>(t);
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      out(target[i], target[j]) = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

ComplexMatrix embed_local(const ComplexMatrix& op, const SubsystemLayout& layout,
                          std::size_t slot) {
  if (static_cast<std::size_t>(op.rows()) != layout.dim(slot) || op.rows() != op.cols()) {
    throw LayoutMismatch("embed_local: operator does not match slot dimension");
  }
  std::size_t before = 1, after = 1;
  for (std::size_t s = 0; s < slot; ++s) before *= layout.dim(s);
  for (std::size_t s = slot + 1; s < layout.size(); ++s) after *= layout.dim(s);
  return kron(kron(identity(before), op), identity(after));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw LayoutMismatch("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator DensityOperator::from_matrix(const ComplexMatrix& m, SubsystemLayout layout) {
  require_layout(m, layout, "DensityOperator");
  const auto spectrum = eig_hermitian(m);
  const double trace = spectrum.values.sum();
  if (std::abs(trace - 1.0) > tol::kTraceInput) {
    throw InvalidState("trace " + std::to_string(trace) + " differs from 1");
  }
  const double smallest = spectrum.values.minCoeff();
  if (smallest < -tol::kPsdClip) {
    throw InvalidState("negative eigenvalue " + std::to_string(smallest));
  }
  if (smallest < 0.0) {
    RealVector clipped = spectrum.values.cwiseMax(0.0);
    clipped /= clipped.sum();
    ComplexMatrix rebuilt = spectrum.vectors * clipped.asDiagonal() * spectrum.vectors.adjoint();
    return trusted(rebuilt, std::move(layout));
  }
  return trusted(m, std::move(layout));
}

DensityOperator DensityOperator::from_pure(const ComplexVector& psi, SubsystemLayout layout) {
  if (static_cast<std::size_t>(psi.size()) != layout.total()) {
    throw LayoutMismatch("state vector does not match layout");
  }
  const double norm = psi.norm();
  if (norm == 0.0) throw InvalidState("zero state vector");
  const ComplexVector unit = psi / norm;
  return DensityOperator(unit * unit.adjoint(), std::move(layout));
}

DensityOperator DensityOperator::maximally_mixed(SubsystemLayout layout) {
  const auto n = layout.total();
  return DensityOperator(identity(n) / static_cast<double>(n), std::move(layout));
}

DensityOperator DensityOperator::trusted(const ComplexMatrix& m, SubsystemLayout layout) {
  require_layout(m, layout, "DensityOperator");
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  const double trace = h.trace().real();
  if (!(trace > 0.0)) throw InvalidState("nonpositive trace");
  h /= trace;
  return DensityOperator(std::move(h), std::move(layout));
}

double DensityOperator::purity() const {
  return (matrix_ * matrix_).trace().real();
}

DensityOperator kron(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator::trusted(kron(a.matrix(), b.matrix()), a.layout().concat(b.layout()));
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> keep) {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  return DensityOperator::trusted(partial_trace(rho.matrix(), rho.layout(), sorted),
                                  rho.layout().select(sorted));
}

DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

DensityOperator reorder(const DensityOperator& rho, std::span<const std::size_t> order) {
  return DensityOperator::trusted(permute_subsystems(rho.matrix(), rho.layout(), order),
                                  rho.layout().select(order));
}

// ---------------------------------------------------------------------------
// observables

ProjectiveObservable ProjectiveObservable::from_basis(std::size_t slot, const ComplexMatrix& basis,
                                                      std::vector<double> eigenvalues) {
  if (basis.rows() != basis.cols() || basis.rows() < 2) {
    throw InvalidObservable("basis must be a square matrix of dimension >= 2");
  }
  const auto d = basis.rows();
  if (max_abs_diff(basis.adjoint() * basis, ComplexMatrix::Identity(d, d)) > tol::kHermitian * 10) {
    throw InvalidObservable("basis columns are not orthonormal");
  }
  ProjectiveObservable obs;
  obs.slot_ = slot;
  obs.basis_ = basis;
  for (Eigen::Index i = 0; i < d; ++i) {
    obs.projectors_.push_back(basis.col(i) * basis.col(i).adjoint());
  }
  if (!eigenvalues.empty()) {
    if (static_cast<Eigen::Index>(eigenvalues.size()) != d) {
      throw InvalidObservable("eigenvalue count does not match dimension");
    }
    auto sorted = eigenvalues;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidObservable("degenerate observables are not supported");
    }
  }
  obs.eigenvalues_ = std::move(eigenvalues);
  return obs;
}

ProjectiveObservable ProjectiveObservable::from_projectors(
    std::size_t slot, const std::vector<ComplexMatrix>& projectors, std::vector<double> eigenvalues) {
  if (projectors.size() < 2) throw InvalidObservable("need at least two projectors");
  const auto d = static_cast<Eigen::Index>(projectors.size());
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  ComplexMatrix basis(d, d);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const auto& p = projectors[i];
    if (p.rows() != d || p.cols() != d) {
      throw InvalidObservable("projector dimension must equal the number of projectors");
    }
    if (max_abs_diff(p * p, p) > tol::kHermitian || !is_hermitian(p)) {
      throw InvalidObservable("operator is not an orthogonal projector");
    }
    if (std::abs(p.trace().real() - 1.0) > tol::kHermitian) {
      throw InvalidObservable("projector is not rank one");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((p * projectors[j]).cwiseAbs().maxCoeff() > tol::kHermitian) {
        throw InvalidObservable("projectors are not mutually orthogonal");
      }
    }
    sum += p;
    // The dominant eigenvector spans the range.
    basis.col(static_cast<Eigen::Index>(i)) = eig_hermitian(p).vectors.col(0);
  }
  if (max_abs_diff(sum, ComplexMatrix::Identity(d, d)) > tol::kHermitian) {
    throw InvalidObservable("projectors do not resolve the identity");
  }
  auto obs = from_basis(slot, basis, std::move(eigenvalues));
  obs.projectors_ = projectors;
  return obs;
}

ProjectiveObservable ProjectiveObservable::computational(std::size_t slot, std::size_t dim) {
  return from_basis(slot, identity(dim));
}

ProjectiveObservable ProjectiveObservable::on_subsystem(std::size_t slot) const {
  auto copy = *this;
  copy.slot_ = slot;
  return copy;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

std::pair<ComplexMatrix, ComplexMatrix> spin_projectors(double theta, double phi) {
  const double ux = std::cos(theta) * std::sin(phi);
  const double uy = std::sin(theta) * std::sin(phi);
  const double uz = std::cos(phi);
  const ComplexMatrix u_sigma = ux * pauli_x() + uy * pauli_y() + uz * pauli_z();
  const ComplexMatrix id = identity(2);
  return {0.5 * (id + u_sigma), 0.5 * (id - u_sigma)};
}

ProjectiveObservable spin_observable(std::size_t slot, double theta, double phi) {
  // Eigenvectors written out directly so the basis is continuous in the angles.
  const Complex phase = std::polar(1.0, theta);
  ComplexMatrix basis(2, 2);
  basis(0, 0) = std::cos(phi / 2);
  basis(1, 0) = phase * std::sin(phi / 2);
  basis(0, 1) = -std::sin(phi / 2);
  basis(1, 1) = phase * std::cos(phi / 2);
  return ProjectiveObservable::from_basis(slot, basis, {1.0, -1.0});
}

// ---------------------------------------------------------------------------
// Ensemble

Ensemble::Ensemble(std::vector<double> weights, std::vector<DensityOperator> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (weights_.empty() || weights_.size() != states_.size()) {
    throw InvalidEnsemble("weights and states must be non-empty and of equal length");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw InvalidEnsemble("negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > tol::kTrace) throw InvalidEnsemble("weights do not sum to 1");
  for (const auto& s : states_) {
    if (!(s.layout() == states_.front().layout())) {
      throw InvalidEnsemble("member layouts differ");
    }
  }
}

DensityOperator Ensemble::average() const {
  ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(states_.front().dim()),
                                          static_cast<Eigen::Index>(states_.front().dim()));
  for (std::size_t i = 0; i < size(); ++i) sum += weights_[i] * states_[i].matrix();
  return DensityOperator::trusted(sum, states_.front().layout());
}

// ---------------------------------------------------------------------------
// random generation

double Rng::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

std::size_t Rng::index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t seed_from_tag(std::uint64_t base, std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix_seed(base, h);
}

DensityOperator random_density(const SubsystemLayout& layout, std::size_t rank, Rng& rng) {
  const std::size_t n = layout.total();
  if (rank < 1 || rank > n) {
    throw BadRank("rank " + std::to_string(rank) + " outside [1, " + std::to_string(n) + "]");
  }
  ComplexMatrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(rank));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = rng.complex_normal();
  }
  const ComplexMatrix gg = g * g.adjoint();
  return DensityOperator::trusted(gg, layout);
}

DensityOperator random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(SubsystemLayout{dim}, rank, rng);
}

DensityOperator haar_pure(const SubsystemLayout& layout, Rng& rng) {
  ComplexVector psi(static_cast<Eigen::Index>(layout.total()));
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = rng.complex_normal();
  return DensityOperator::from_pure(psi, layout);
}

DensityOperator haar_pure(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return haar_pure(SubsystemLayout{dim}, rng);
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  const auto k = static_cast<Eigen::Index>(n);
  ComplexMatrix g(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) g(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Phase fix makes the distribution Haar (Mezzadri).
  for (Eigen::Index j = 0; j < k; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0 ? d / mag : Complex(1.0));
  }
  return q;
}

ProjectiveObservable random_observable(std::size_t slot, std::size_t dim, Rng& rng) {
  return ProjectiveObservable::from_basis(slot, haar_unitary(dim, rng));
}

}  // namespace realitykit
