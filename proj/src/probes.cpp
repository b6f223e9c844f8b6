#include "specsplit/probes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include "specsplit/diagnostics.hpp"
#include "specsplit/errors.hpp"
#include "specsplit/kernels.hpp"

namespace specsplit {

std::string format_exponent(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

CVector probe_state(const Grid1D& grid, std::size_t trial, std::uint64_t seed) {
  const std::size_t n = grid.size();
  CVector phi(n, cplx{0.0, 0.0});
  if (trial == 0) {
    phi[n / 2] = 1.0;
    return phi;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double two_pi = 2.0 * std::numbers::pi;
  if (trial % 2 == 1) {
    const std::size_t lo = n / 4, span = n / 2;
    const std::size_t at = lo + static_cast<std::size_t>(unit(rng) * static_cast<double>(span)) % span;
    phi[at] = std::polar(1.0, two_pi * unit(rng));
    return phi;
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  const double centre = (unit(rng) - 0.5) * grid.half_width();
  const double width = grid.spacing() + unit(rng) * (1.0 - grid.spacing());
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (grid.node(i) - centre) / width;
    const double env = std::exp(-0.5 * x * x);
    const double re = normal(rng);
    const double im = normal(rng);
    phi[i] = env * cplx{re, im};
  }
  return phi;
}

ProbeReport dispersive_probe(const DiscretizedHamiltonian& h, double lambda, const CutoffProfile& profile,
                             const RVector& times, std::size_t trials, std::uint64_t seed) {
  if (!(lambda > 0.0)) throw InvalidInput("dispersive probe needs lambda > 0");
  for (double t : times)
    if (!(t > 0.0 && t <= 1.0)) throw InvalidInput("dispersive probe times must lie in (0, 1]");
  const Grid1D& grid = h.grid();
  const auto basis = h.basis();
  const std::size_t rows = times.size() * trials;
  ProbeReport out;
  out.rows.resize(rows);
  const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t tr = 0; tr < count; ++tr) {
    const auto trial = static_cast<std::size_t>(tr);
    const CVector phi = probe_state(grid, trial, seed);
    const double l1 = lp_norm(grid, phi, 1.0);
    CVector c(h.size()), work(h.size()), g(h.size());
    kernels::analyze_serial(basis, grid.spacing(), phi, c);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const CVector d = cutoff_propagator_diagonal(h, times[k], lambda, profile);
      for (std::size_t j = 0; j < c.size(); ++j) work[j] = d[j] * c[j];
      kernels::synthesize_serial(basis, work, g);
      const double ratio = lp_norm(grid, g, INFINITY) * (1.0 / std::sqrt(lambda) + std::sqrt(times[k])) / l1;
      out.rows[k * trials + trial] = {lambda, format_exponent(times[k]), trial, ratio};
    }
  }
  for (const auto& r : out.rows) out.max_ratio = std::max(out.max_ratio, r.ratio);
  return out;
}

ProbeReport bernstein_probe(const DiscretizedHamiltonian& h, double lambda, const CutoffProfile& profile, double p,
                            double q, std::size_t trials, std::uint64_t seed) {
  if (!(lambda > 0.0)) throw InvalidInput("Bernstein probe needs lambda > 0");
  if (!(p >= 1.0) || !(q >= 1.0)) throw InvalidInput("Bernstein probe needs p, q >= 1");
  if (p > q) throw InvalidInput("Bernstein probe needs p <= q");
  const Grid1D& grid = h.grid();
  const auto basis = h.basis();
  const RVector w = projector_weights(h, lambda, profile);
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double scale = std::pow(lambda, 0.5 * (inv_p - inv_q));
  const std::string label = format_exponent(p) + ":" + format_exponent(q);
  ProbeReport out;
  out.rows.resize(trials);
  const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t tr = 0; tr < count; ++tr) {
    const auto trial = static_cast<std::size_t>(tr);
    const CVector phi = probe_state(grid, trial, seed);
    CVector c(h.size()), g(h.size());
    kernels::analyze_serial(basis, grid.spacing(), phi, c);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] *= w[j];
    kernels::synthesize_serial(basis, c, g);
    out.rows[trial] = {lambda, label, trial, lp_norm(grid, g, q) / (scale * lp_norm(grid, phi, p))};
  }
  for (const auto& r : out.rows) out.max_ratio = std::max(out.max_ratio, r.ratio);
  return out;
}

}  // namespace specsplit
