#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace specsplit {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;
using RVector = std::vector<double>;

/// Equispaced periodic grid on [-L, L) with nodes x_i = -L + i*h, h = 2L/n.
class Grid1D {
 public:
  Grid1D(std::size_t n_points, double half_width);

  std::size_t size() const { return n_; }
  double half_width() const { return half_width_; }
  double spacing() const { return spacing_; }
  double node(std::size_t i) const { return -half_width_ + static_cast<double>(i) * spacing_; }
  RVector nodes() const;

  bool operator==(const Grid1D&) const = default;

 private:
  std::size_t n_;
  double half_width_;
  double spacing_;
};

/// Discrete L2 inner product h * sum f_i conj(g_i).
cplx inner(const Grid1D& grid, std::span<const cplx> f, std::span<const cplx> g);

}  // namespace specsplit
