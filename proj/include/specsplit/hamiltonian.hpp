#pragma once

#include <memory>
#include <span>

#include <Eigen/Dense>

#include "specsplit/grid.hpp"
#include "specsplit/kernels.hpp"
#include "specsplit/potential.hpp"
#include "specsplit/spectral_diff.hpp"

namespace specsplit {

/// -D2 + diag(v) with D2 the periodic Fourier second derivative.
/// Throws InvalidInput on non-finite samples, ConfigError on odd n.
Eigen::MatrixXd assemble_hamiltonian(const Grid1D& grid, std::span<const double> v_values);

struct SpectralDecomposition {
  RVector eigenvalues;           // ascending
  Eigen::MatrixXd eigenvectors;  // columns; weight * Phi^T Phi = I
};

/// Dense symmetric eigensolve. Eigenvectors are scaled to be orthonormal under
/// weight * (dot product), and signed so that their largest entry is positive.
SpectralDecomposition eigendecompose(const Eigen::MatrixXd& matrix, double weight = 1.0);

/// H = -Laplacian + V on a grid, fully diagonalized. V is stored after the
/// gauge shift that makes it >= 1; gauge_shift() records the constant added.
/// Immutable once built and shared between states through shared_ptr.
class DiscretizedHamiltonian {
 public:
  DiscretizedHamiltonian(const Grid1D& grid, std::span<const double> v_raw);

  static std::shared_ptr<const DiscretizedHamiltonian> build(const Grid1D& grid, const ConfiningPotential& v);

  const Grid1D& grid() const { return grid_; }
  std::size_t size() const { return grid_.size(); }
  const RVector& v_values() const { return v_; }
  double gauge_shift() const { return gauge_shift_; }
  const RVector& eigenvalues() const { return eig_.eigenvalues; }
  const Eigen::MatrixXd& eigenvectors() const { return eig_.eigenvectors; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  kernels::BasisView basis() const;
  const SpectralDifferentiator& differentiator() const { return *diff_; }

  /// ||H Phi_j - mu_j Phi_j||_2 in the discrete L2 norm.
  double residual(std::size_t j) const;
  /// max_{j,k} |<Phi_j, Phi_k> - delta_jk|.
  double orthonormality_defect() const;

 private:
  Grid1D grid_;
  RVector v_;
  double gauge_shift_;
  Eigen::MatrixXd matrix_;
  SpectralDecomposition eig_;
  Eigen::MatrixXd rowmajor_;  // transpose of the eigenvectors, column-major storage
  std::unique_ptr<SpectralDifferentiator> diff_;
};

using HamiltonianPtr = std::shared_ptr<const DiscretizedHamiltonian>;

}  // namespace specsplit
