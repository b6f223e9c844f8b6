#include "specsplit/spectral_diff.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "specsplit/errors.hpp"

namespace specsplit {

namespace {
std::mutex planner_mutex;

void require_even(const Grid1D& grid) {
  if (grid.size() % 2 != 0)
    throw ConfigError("spectral differentiation needs an even number of grid points, got " +
                      std::to_string(grid.size()));
}
}  // namespace

Eigen::MatrixXd second_derivative_matrix(const Grid1D& grid) {
  require_even(grid);
  const auto n = static_cast<Eigen::Index>(grid.size());
  const double pi = std::numbers::pi;
  // Trefethen's formula on [0, 2pi), rescaled to the box length 2L.
  const double step = 2.0 * pi / static_cast<double>(n);
  const double scale = (pi / grid.half_width()) * (pi / grid.half_width());
  const double diag = -pi * pi / (3.0 * step * step) - 1.0 / 6.0;
  Eigen::MatrixXd d2(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) {
        d2(i, j) = scale * diag;
      } else {
        const auto m = i - j;
        const double s = std::sin(static_cast<double>(m) * step / 2.0);
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        d2(i, j) = -scale * sign / (2.0 * s * s);
      }
    }
  }
  return d2;
}

struct SpectralDifferentiator::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

SpectralDifferentiator::SpectralDifferentiator(const Grid1D& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  require_even(grid);
  const std::size_t n = grid.size();
  k_.resize(n);
  const double dk = std::numbers::pi / grid.half_width();
  for (std::size_t m = 0; m < n; ++m) {
    const auto signed_m = m <= n / 2 ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(n);
    k_[m] = dk * signed_m;
  }
  std::lock_guard lock(planner_mutex);
  CVector scratch(n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const int ni = static_cast<int>(n);
  plans_->forward = fftw_plan_dft_1d(ni, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->backward = fftw_plan_dft_1d(ni, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

SpectralDifferentiator::~SpectralDifferentiator() {
  std::lock_guard lock(planner_mutex);
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
  if (plans_->backward) fftw_destroy_plan(plans_->backward);
}

template <class Multiplier>
CVector SpectralDifferentiator::apply(std::span<const cplx> u, Multiplier&& m) const {
  const std::size_t n = grid_.size();
  if (u.size() != n) throw ShapeError("differentiation input", n, u.size());
  CVector work(u.begin(), u.end());
  auto* buf = reinterpret_cast<fftw_complex*>(work.data());
  fftw_execute_dft(plans_->forward, buf, buf);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) work[j] *= m(j) * inv_n;
  fftw_execute_dft(plans_->backward, buf, buf);
  return work;
}

CVector SpectralDifferentiator::gradient(std::span<const cplx> u) const {
  const std::size_t nyquist = grid_.size() / 2;
  return apply(u, [&](std::size_t j) { return j == nyquist ? cplx{0.0, 0.0} : cplx{0.0, k_[j]}; });
}

CVector SpectralDifferentiator::laplacian(std::span<const cplx> u) const {
  return apply(u, [&](std::size_t j) { return cplx{-k_[j] * k_[j], 0.0}; });
}

CVector SpectralDifferentiator::free_flight(std::span<const cplx> u, double t) const {
  return apply(u, [&](std::size_t j) { return std::polar(1.0, -t * k_[j] * k_[j]); });
}

}  // namespace specsplit
