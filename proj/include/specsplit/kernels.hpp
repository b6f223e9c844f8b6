#pragma once

// Data-parallel inner loops of the steppers. Each kernel has an OpenMP
// version used by the library and a plain serial version kept as the
// reference for tests and the benchmark. Parallel kernels never split a
// reduction across threads, so results do not depend on the thread count.

#include <cstddef>
#include <span>

#include "specsplit/grid.hpp"

namespace specsplit::kernels {

/// Dense real rows x cols matrix held in both storage orders so that both
/// the analysis (column dots) and the synthesis (row dots) read contiguous
/// memory.
struct BasisView {
  std::span<const double> colmajor;
  std::span<const double> rowmajor;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

/// c_j = weight * sum_i B(i, j) u_i for every column j.
void analyze(const BasisView& basis, double weight, std::span<const cplx> u, std::span<cplx> c);
void analyze_serial(const BasisView& basis, double weight, std::span<const cplx> u, std::span<cplx> c);

/// u_i = sum_{j < c.size()} B(i, j) c_j. Shorter c means a truncated expansion.
void synthesize(const BasisView& basis, std::span<const cplx> c, std::span<cplx> u);
void synthesize_serial(const BasisView& basis, std::span<const cplx> c, std::span<cplx> u);

/// u_i <- u_i * exp(-i tau (w_i + eps |u_i|^(2 sigma))), with 0^(2 sigma) = 0.
void nonlinear_phase(std::span<cplx> u, std::span<const double> w, double tau, double eps, double sigma);
void nonlinear_phase_serial(std::span<cplx> u, std::span<const double> w, double tau, double eps, double sigma);

/// c_j <- d_j c_j.
void multiply(std::span<cplx> c, std::span<const cplx> d);
void multiply(std::span<cplx> c, std::span<const double> d);

/// |z|^(2 sigma) with the 0 -> 0 convention; integer fast paths for sigma = 1, 2.
double modulus_power(double abs2, double sigma);

}  // namespace specsplit::kernels
