#include "specsplit/kernels.hpp"

#include <cmath>
#include <vector>

#include "specsplit/errors.hpp"

namespace specsplit::kernels {

namespace {

void check_analyze(const BasisView& b, std::span<const cplx> u, std::span<cplx> c) {
  if (u.size() != b.rows) throw ShapeError("analysis input", b.rows, u.size());
  if (c.size() != b.cols) throw ShapeError("analysis output", b.cols, c.size());
}

void check_synthesize(const BasisView& b, std::span<const cplx> c, std::span<cplx> u) {
  if (c.size() > b.cols) throw ShapeError("synthesis coefficients (at most)", b.cols, c.size());
  if (u.size() != b.rows) throw ShapeError("synthesis output", b.rows, u.size());
}

void split(std::span<const cplx> z, std::vector<double>& re, std::vector<double>& im) {
  re.resize(z.size());
  im.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    re[i] = z[i].real();
    im[i] = z[i].imag();
  }
}

}  // namespace

double modulus_power(double abs2, double sigma) {
  if (abs2 == 0.0) return 0.0;
  if (sigma == 1.0) return abs2;
  if (sigma == 2.0) return abs2 * abs2;
  return std::exp(sigma * std::log(abs2));
}

void analyze(const BasisView& b, double weight, std::span<const cplx> u, std::span<cplx> c) {
  check_analyze(b, u, c);
  std::vector<double> re, im;
  split(u, re, im);
  const double* ur = re.data();
  const double* ui = im.data();
  const double* base = b.colmajor.data();
  const auto rows = static_cast<std::ptrdiff_t>(b.rows);
  const auto cols = static_cast<std::ptrdiff_t>(b.cols);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < cols; ++j) {
    const double* col = base + j * rows;
    double sr = 0.0, si = 0.0;
#pragma omp simd reduction(+ : sr, si)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
      sr += col[i] * ur[i];
      si += col[i] * ui[i];
    }
    c[j] = cplx(weight * sr, weight * si);
  }
}

void analyze_serial(const BasisView& b, double weight, std::span<const cplx> u, std::span<cplx> c) {
  check_analyze(b, u, c);
  for (std::size_t j = 0; j < b.cols; ++j) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < b.rows; ++i) acc += b.colmajor[j * b.rows + i] * u[i];
    c[j] = weight * acc;
  }
}

void synthesize(const BasisView& b, std::span<const cplx> c, std::span<cplx> u) {
  check_synthesize(b, c, u);
  std::vector<double> re, im;
  split(c, re, im);
  const double* cr = re.data();
  const double* ci = im.data();
  const double* base = b.rowmajor.data();
  const auto rows = static_cast<std::ptrdiff_t>(b.rows);
  const auto stride = static_cast<std::ptrdiff_t>(b.cols);
  const auto modes = static_cast<std::ptrdiff_t>(c.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const double* row = base + i * stride;
    double sr = 0.0, si = 0.0;
#pragma omp simd reduction(+ : sr, si)
    for (std::ptrdiff_t j = 0; j < modes; ++j) {
      sr += row[j] * cr[j];
      si += row[j] * ci[j];
    }
    u[i] = cplx(sr, si);
  }
}

void synthesize_serial(const BasisView& b, std::span<const cplx> c, std::span<cplx> u) {
  check_synthesize(b, c, u);
  for (std::size_t i = 0; i < b.rows; ++i) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < c.size(); ++j) acc += b.colmajor[j * b.rows + i] * c[j];
    u[i] = acc;
  }
}

void nonlinear_phase(std::span<cplx> u, std::span<const double> w, double tau, double eps, double sigma) {
  if (w.size() != u.size()) throw ShapeError("perturbation samples", u.size(), w.size());
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double nl = eps == 0.0 ? 0.0 : eps * modulus_power(std::norm(u[i]), sigma);
    u[i] *= std::polar(1.0, -tau * (w[i] + nl));
  }
}

void nonlinear_phase_serial(std::span<cplx> u, std::span<const double> w, double tau, double eps, double sigma) {
  if (w.size() != u.size()) throw ShapeError("perturbation samples", u.size(), w.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double nl = eps == 0.0 ? 0.0 : eps * modulus_power(std::norm(u[i]), sigma);
    u[i] *= std::polar(1.0, -tau * (w[i] + nl));
  }
}

void multiply(std::span<cplx> c, std::span<const cplx> d) {
  if (d.size() != c.size()) throw ShapeError("diagonal multiplier", c.size(), d.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] *= d[j];
}

void multiply(std::span<cplx> c, std::span<const double> d) {
  if (d.size() != c.size()) throw ShapeError("diagonal multiplier", c.size(), d.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] *= d[j];
}

}  // namespace specsplit::kernels
