#include "specsplit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specsplit/errors.hpp"
#include "specsplit/kernels.hpp"
#include "specsplit/probes.hpp"

namespace specsplit {

double lp_norm(const Grid1D& grid, std::span<const cplx> u, double p) {
  if (!(p >= 1.0)) throw InvalidInput("L^p norm needs p >= 1");
  if (u.size() != grid.size()) throw ShapeError("L^p norm input", grid.size(), u.size());
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : u) m = std::max(m, std::abs(z));
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (const auto& z : u) acc += std::norm(z);
    return std::sqrt(grid.spacing() * acc);
  }
  for (const auto& z : u) acc += std::pow(std::abs(z), p);
  return std::pow(grid.spacing() * acc, 1.0 / p);
}

double lp_norm(const State& u, double p) {
  const State g = from_eigenbasis(u);
  return lp_norm(g.hamiltonian()->grid(), g.values(), p);
}

double mass(const State& u) { return squared_l2(u); }

double energy(const State& u, const Problem& problem) {
  const State g = from_eigenbasis(u);
  const auto& h = *problem.hamiltonian;
  const CVector grad = h.differentiator().gradient(g.values());
  const auto& nl = problem.nonlinearity;
  double acc = 0.0;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    const double a2 = std::norm(g.values()[i]);
    acc += std::norm(grad[i]) + (h.v_values()[i] + problem.w_values[i]) * a2;
    if (nl.epsilon != 0.0) acc += nl.epsilon / (nl.sigma + 1.0) * kernels::modulus_power(a2, nl.sigma) * a2;
  }
  return h.grid().spacing() * acc;
}

bool AdmissiblePair::is_admissible(double q, double r) {
  if (!(r >= 2.0) || std::isinf(r) || !(q >= 4.0)) return false;
  const double lhs = std::isinf(q) ? 0.0 : 2.0 / q;
  return std::abs(lhs - (0.5 - 1.0 / r)) <= 1e-12;
}

AdmissiblePair AdmissiblePair::make(double q, double r) {
  if (!is_admissible(q, r)) throw InvalidInput("(q, r) is not an admissible pair in dimension 1");
  return {q, r};
}

CanonicalExponents canonical_pairs(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidInput("canonical pair needs sigma > 0");
  const double q0 = (4.0 * sigma + 4.0) / sigma;
  const double r0 = 2.0 * sigma + 2.0;
  const double theta = 2.0 * sigma * (2.0 * sigma + 2.0) / (2.0 + sigma);
  return {AdmissiblePair::make(q0, r0), theta};
}

double discrete_strichartz_norm(const Trajectory& traj, double q, double r, double t_begin, double t_end) {
  if (!(q >= 1.0) || !(r >= 1.0)) throw InvalidInput("space-time exponents must be >= 1");
  const double slack = 1e-9 * std::max(1.0, std::abs(t_end));
  const double weight = traj.tau * static_cast<double>(traj.stride);
  double acc = 0.0;
  bool any = false;
  for (const auto& s : traj.snapshots) {
    if (s.time < t_begin - slack || s.time > t_end + slack) continue;
    any = true;
    const double nr = lp_norm(s.state, r);
    acc = std::isinf(q) ? std::max(acc, nr) : acc + std::pow(nr, q);
  }
  if (!any) throw InvalidInput("time interval contains no snapshot");
  return std::isinf(q) ? acc : std::pow(weight * acc, 1.0 / q);
}

StrichartzProbeResult strichartz_constant_probe(const DiscretizedHamiltonian& h, double lambda, double tau,
                                                const AdmissiblePair& pair, std::size_t trials, double final_time,
                                                const CutoffProfile& profile, std::uint64_t seed) {
  if (!(lambda * tau >= 1.0 - 1e-12)) throw InvalidInput("Strichartz probe requires lambda * tau >= 1");
  if (!(final_time > 0.0 && final_time <= 1.0)) throw InvalidInput("Strichartz probe requires 0 < T <= 1");
  AdmissiblePair::make(pair.q, pair.r);
  const auto steps = static_cast<std::size_t>(std::floor(final_time / tau + 1e-9));
  const RVector w = projector_weights(h, lambda, profile);
  const auto& mu = h.eigenvalues();
  const auto basis = h.basis();
  const Grid1D& grid = h.grid();

  StrichartzProbeResult out;
  out.ratios.assign(trials, 0.0);
  const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    const CVector phi = probe_state(grid, static_cast<std::size_t>(t), seed);
    CVector c(h.size()), g(h.size()), work(h.size());
    kernels::analyze_serial(basis, grid.spacing(), phi, c);
    double acc = 0.0;
    for (std::size_t n = 0; n <= steps; ++n) {
      const double time = static_cast<double>(n) * tau;
      for (std::size_t j = 0; j < c.size(); ++j) work[j] = w[j] * std::polar(1.0, -time * mu[j]) * c[j];
      kernels::synthesize_serial(basis, work, g);
      const double nr = lp_norm(grid, g, pair.r);
      acc = std::isinf(pair.q) ? std::max(acc, nr) : acc + std::pow(nr, pair.q);
    }
    const double norm = std::isinf(pair.q) ? acc : std::pow(tau * acc, 1.0 / pair.q);
    const double scale = std::isinf(pair.q) ? 1.0 : std::pow(lambda * tau, 1.0 / pair.q);
    out.ratios[static_cast<std::size_t>(t)] = norm / (scale * lp_norm(grid, phi, 2.0));
  }
  for (double r : out.ratios) out.max_ratio = std::max(out.max_ratio, r);
  return out;
}

}  // namespace specsplit
