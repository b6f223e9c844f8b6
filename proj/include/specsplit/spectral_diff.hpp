#pragma once

#include <memory>
#include <span>

#include <Eigen/Dense>

#include "specsplit/grid.hpp"

namespace specsplit {

/// Periodic Fourier second-derivative matrix on the grid (even n only).
/// Symmetric; the Nyquist mode is differentiated to -k_max^2.
Eigen::MatrixXd second_derivative_matrix(const Grid1D& grid);

/// FFT-based differentiation on the periodic box. Holds FFTW plans, so it is
/// cheap to reuse; execution is thread-safe, construction is serialized
/// internally.
class SpectralDifferentiator {
 public:
  explicit SpectralDifferentiator(const Grid1D& grid);
  ~SpectralDifferentiator();
  SpectralDifferentiator(const SpectralDifferentiator&) = delete;
  SpectralDifferentiator& operator=(const SpectralDifferentiator&) = delete;

  const Grid1D& grid() const { return grid_; }
  /// Angular wavenumbers in FFT order; the Nyquist entry is +pi/h.
  const RVector& wavenumbers() const { return k_; }

  /// du/dx with the Nyquist coefficient dropped.
  CVector gradient(std::span<const cplx> u) const;
  /// d2u/dx2, consistent with second_derivative_matrix.
  CVector laplacian(std::span<const cplx> u) const;
  /// exp(i t d2/dx2) u, i.e. each Fourier mode times exp(-i t k^2).
  CVector free_flight(std::span<const cplx> u, double t) const;

 private:
  template <class Multiplier>
  CVector apply(std::span<const cplx> u, Multiplier&& m) const;

  Grid1D grid_;
  RVector k_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

}  // namespace specsplit
