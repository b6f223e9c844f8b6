#include "specsplit/state.hpp"

#include <cmath>

#include "specsplit/errors.hpp"

namespace specsplit {

State::State(HamiltonianPtr h, Representation rep, CVector data) : h_(std::move(h)), rep_(rep), data_(std::move(data)) {
  if (!h_) throw InvalidInput("state needs a Hamiltonian");
}

State State::on_grid(HamiltonianPtr h, CVector values) {
  if (!h) throw InvalidInput("state needs a Hamiltonian");
  if (values.size() != h->size()) throw ShapeError("grid state length", h->size(), values.size());
  return State(std::move(h), Representation::grid, std::move(values));
}

State State::from_coefficients(HamiltonianPtr h, CVector coeffs) {
  if (!h) throw InvalidInput("state needs a Hamiltonian");
  if (coeffs.size() > h->size()) throw ShapeError("coefficient count (at most)", h->size(), coeffs.size());
  return State(std::move(h), Representation::eigen, std::move(coeffs));
}

State to_eigenbasis(const State& u) {
  if (!u.on_grid()) return u;
  const auto& h = *u.hamiltonian();
  CVector c(h.size());
  kernels::analyze(h.basis(), h.grid().spacing(), u.values(), c);
  return State::from_coefficients(u.hamiltonian(), std::move(c));
}

State from_eigenbasis(const State& u) {
  if (u.on_grid()) return u;
  const auto& h = *u.hamiltonian();
  CVector values(h.size());
  kernels::synthesize(h.basis(), u.values(), values);
  return State::on_grid(u.hamiltonian(), std::move(values));
}

State to_eigenbasis_serial(const State& u) {
  if (!u.on_grid()) return u;
  const auto& h = *u.hamiltonian();
  CVector c(h.size());
  kernels::analyze_serial(h.basis(), h.grid().spacing(), u.values(), c);
  return State::from_coefficients(u.hamiltonian(), std::move(c));
}

State from_eigenbasis_serial(const State& u) {
  if (u.on_grid()) return u;
  const auto& h = *u.hamiltonian();
  CVector values(h.size());
  kernels::synthesize_serial(h.basis(), u.values(), values);
  return State::on_grid(u.hamiltonian(), std::move(values));
}

State apply_spectral_multiplier(const State& u, const std::function<cplx(double)>& f) {
  State c = to_eigenbasis(u);
  const auto& mu = u.hamiltonian()->eigenvalues();
  auto& data = c.data();
  for (std::size_t j = 0; j < data.size(); ++j) {
    const cplx w = f(mu[j]);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
      throw NumericalFailure("spectral function is not finite on the spectrum", j);
    data[j] *= w;
  }
  return c;
}

State apply_spectral_weight(const State& u, const std::function<double(double)>& f) {
  return apply_spectral_multiplier(u, [&](double mu) { return cplx{f(mu), 0.0}; });
}

double squared_l2(const State& u) {
  double acc = 0.0;
  for (const auto& z : u.values()) acc += std::norm(z);
  return u.on_grid() ? u.hamiltonian()->grid().spacing() * acc : acc;
}

namespace {

double grid_l2(const Grid1D& grid, std::span<const cplx> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return std::sqrt(grid.spacing() * acc);
}

double potential_weighted(const State& g, double power) {
  const auto& v = g.hamiltonian()->v_values();
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += std::pow(v[i], 2.0 * power) * std::norm(g.values()[i]);
  return std::sqrt(g.hamiltonian()->grid().spacing() * acc);
}

}  // namespace

double norm_sobolev(const State& u, SobolevNorm which) {
  const auto& h = *u.hamiltonian();
  switch (which) {
    case SobolevNorm::L2:
      return std::sqrt(squared_l2(u));
    case SobolevNorm::calH1: {
      const State c = to_eigenbasis(u);
      const auto& mu = h.eigenvalues();
      double acc = 0.0;
      for (std::size_t j = 0; j < c.size(); ++j) acc += mu[j] * std::norm(c.values()[j]);
      return std::sqrt(acc);
    }
    case SobolevNorm::gradL2: {
      const State g = from_eigenbasis(u);
      return grid_l2(h.grid(), h.differentiator().gradient(g.values()));
    }
    case SobolevNorm::DeltaL2: {
      const State g = from_eigenbasis(u);
      return grid_l2(h.grid(), h.differentiator().laplacian(g.values()));
    }
    case SobolevNorm::VL2:
      return potential_weighted(from_eigenbasis(u), 1.0);
    case SobolevNorm::sqrtVL2:
      return potential_weighted(from_eigenbasis(u), 0.5);
    case SobolevNorm::calH2: {
      const double lap = norm_sobolev(u, SobolevNorm::DeltaL2);
      const double pot = norm_sobolev(u, SobolevNorm::VL2);
      return std::sqrt(lap * lap + pot * pot);
    }
  }
  return 0.0;
}

}  // namespace specsplit
