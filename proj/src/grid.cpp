#include "specsplit/grid.hpp"

#include <cmath>

#include "specsplit/errors.hpp"

namespace specsplit {

Grid1D::Grid1D(std::size_t n_points, double half_width)
    : n_(n_points), half_width_(half_width), spacing_(2.0 * half_width / static_cast<double>(n_points)) {
  if (n_points < 8) throw InvalidInput("grid needs at least 8 points");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw InvalidInput("grid half-width must be positive");
}

RVector Grid1D::nodes() const {
  RVector x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = node(i);
  return x;
}

cplx inner(const Grid1D& grid, std::span<const cplx> f, std::span<const cplx> g) {
  if (f.size() != grid.size()) throw ShapeError("inner product operand", grid.size(), f.size());
  if (g.size() != grid.size()) throw ShapeError("inner product operand", grid.size(), g.size());
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * std::conj(g[i]);
  return grid.spacing() * acc;
}

}  // namespace specsplit
