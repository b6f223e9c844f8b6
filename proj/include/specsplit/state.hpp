#pragma once

#include <functional>
#include <span>

#include "specsplit/hamiltonian.hpp"

namespace specsplit {

enum class Representation { grid, eigen };

/// A wavefunction under a fixed Hamiltonian, held either as grid samples or
/// as eigenbasis coefficients. Conversions are explicit and produce new
/// states; the Hamiltonian is shared, never copied.
class State {
 public:
  static State on_grid(HamiltonianPtr h, CVector values);
  /// Coefficients c_0..c_{m-1}, m <= n; missing modes are zero.
  static State from_coefficients(HamiltonianPtr h, CVector coeffs);

  Representation representation() const { return rep_; }
  bool on_grid() const { return rep_ == Representation::grid; }
  const HamiltonianPtr& hamiltonian() const { return h_; }
  std::span<const cplx> values() const { return data_; }
  CVector& data() { return data_; }
  std::size_t size() const { return data_.size(); }

 private:
  State(HamiltonianPtr h, Representation rep, CVector data);

  HamiltonianPtr h_;
  Representation rep_;
  CVector data_;
};

/// c_j = <u, Phi_j> in the discrete inner product. Identity on eigen states.
State to_eigenbasis(const State& u);
/// u(x_i) = sum_j c_j Phi_j(x_i). Identity on grid states.
State from_eigenbasis(const State& u);

/// Serial reference path for the two transforms; tests and benchmarks only.
State to_eigenbasis_serial(const State& u);
State from_eigenbasis_serial(const State& u);

/// f(H) u with f evaluated on the spectrum. Returns an eigen-space state.
/// Throws NumericalFailure (carrying the mode index) if f is not finite.
State apply_spectral_weight(const State& u, const std::function<double(double)>& f);
State apply_spectral_multiplier(const State& u, const std::function<cplx(double)>& f);

enum class SobolevNorm { L2, calH1, calH2, gradL2, VL2, sqrtVL2, DeltaL2 };

/// L2: discrete L2; calH1: ||H^{1/2} u||; calH2: sqrt(||Lap u||^2 + ||V u||^2);
/// gradL2, VL2 (= ||V u||), sqrtVL2 (= ||V^{1/2} u||), DeltaL2 are the pieces.
double norm_sobolev(const State& u, SobolevNorm which);

/// h-weighted sum of |u|^2 on the grid, or sum |c_j|^2 in eigen space.
double squared_l2(const State& u);

}  // namespace specsplit
